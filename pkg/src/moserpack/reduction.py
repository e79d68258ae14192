"""End-to-end reduction driver: pack any total-area-1 instance into area F.

The driver picks exactly one of three routes:

* case "a": the largest edge is at most the small-edge threshold (1/10);
  the whole instance goes straight into the sqrt(F) x sqrt(F) square.
* case "b": the area past index N1 is still at least c^2; the instance is
  split at N0 and the two parts are packed and glued edge to edge.
* case "c": otherwise some index n in (N1, N] has edge below c / sqrt(n);
  the first n squares form a base packing of an area-F rectangle and the
  rest is whitespace-packed into it.

Prefix packings are produced by a pluggable strategy; the default tries
the meir-moser criterion on the squarest admissible rectangle and falls
back to raw shelf attempts over narrower aspects.  Every route
re-validates its own preconditions before any placement work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .constants import build_report, compute_c, factor_float, find_small_index
from .errors import MoserpackError, PackFailure, PreconditionViolated
from .geometry import Instance, Packing, Placement, Rectangle, packing_to_dict
from .shelf import PackPrecondition, meir_moser_pack, small_s1_pack
from .whitespace import WhitespaceJob, whitespace_pack

_TOL = 1e-12

PrefixPacker = Callable[[Instance, float], Packing]


@dataclass(frozen=True)
class PackParams:
    """Constants driving the case split.

    ``toy`` marks desk-scale parameters that were not produced by the
    constants pipeline; everything else about the driver treats toy and
    certified parameters identically.
    """

    F: float
    c: float
    N0: int
    N1: int
    N: int
    s1_threshold: float = 0.1
    toy: bool = False

    def __post_init__(self) -> None:
        if self.F <= 1:
            raise ValueError(f"area factor must exceed 1, got {self.F}")
        if not (0 < self.c < 1):
            raise ValueError(f"c must lie in (0, 1), got {self.c}")
        if not (1 <= self.N0 <= self.N1 <= self.N):
            raise ValueError(f"need 1 <= N0 <= N1 <= N, got {self.N0}, {self.N1}, {self.N}")
        if self.s1_threshold <= 0:
            raise ValueError(f"s1 threshold must be positive, got {self.s1_threshold}")

    @classmethod
    def certified(cls, F: object = "novotny", *, use_integral_n0: bool = False,
                  check_harmonic: bool = True) -> "PackParams":
        """Parameters recomputed from the constants pipeline (not toy)."""
        report = build_report(F, use_integral_n0=use_integral_n0,
                              check_harmonic=check_harmonic)
        n0 = report.N0_integral if use_integral_n0 else report.N0_simple
        return cls(F=factor_float(F), c=float(compute_c(F)), N0=n0,
                   N1=report.N1, N=report.N)

    @classmethod
    def toy_params(cls, F: float, c: float, N0: int, N1: int, N: int,
                   s1_threshold: float = 0.1) -> "PackParams":
        return cls(F=F, c=c, N0=N0, N1=N1, N=N,
                   s1_threshold=s1_threshold, toy=True)


@dataclass(frozen=True)
class ReduceResult:
    case: str
    packing: Packing
    params: PackParams
    split_index: Optional[int] = None


def default_prefix_packer(inst: Instance, F: float, *, aspect_steps: int = 96) -> Packing:
    """Pack ``inst`` into some rectangle of area F * total_area.

    Strategy: if the meir-moser inequality holds on the squarest rectangle
    it holds nowhere better, so pack there.  Otherwise scan aspect ratios
    from square toward the minimum admissible smaller edge
    max(s1, 1/10) and take the first raw shelf attempt that succeeds.
    """
    A = inst.total_area
    if A <= 0:
        raise PreconditionViolated("prefix instance has zero area")
    T = F * A
    x = inst.max_side
    hi = math.sqrt(T)
    lo = max(x, 0.1)
    if lo > hi:
        lo = x
    square = Rectangle(hi, hi)
    if PackPrecondition("meir-moser", A, x, hi, hi).holds():
        return meir_moser_pack(inst, square)
    for k in range(aspect_steps):
        a1 = hi + (lo - hi) * k / (aspect_steps - 1)
        try:
            return meir_moser_pack(inst, Rectangle(a1, T / a1),
                                   require_precondition=False)
        except PackFailure:
            continue
    raise PackFailure(
        f"no aspect in [{lo}, {hi}] shelf-packs {len(inst)} squares at factor {F}"
    )


def _transpose_to_height(p: Packing) -> tuple[Packing, float, float]:
    """Reorient a packing so its rectangle's smaller edge is the height.

    Returns the reoriented packing (origin normalized to (0, 0)) along
    with (W, H) = (smaller, larger) edge.
    """
    r = p.rect
    shifted = [Placement(q.side, q.x - r.x, q.y - r.y) for q in p.placements]
    if r.width <= r.height:
        flipped = tuple(Placement(q.side, q.y, q.x) for q in shifted)
        return Packing(Rectangle(r.height, r.width), flipped), r.width, r.height
    return Packing(Rectangle(r.width, r.height), tuple(shifted)), r.height, r.width


def glue_pack(inst: Instance, split: int, prefix_packer: PrefixPacker,
              params: PackParams) -> Packing:
    """Pack a prefix and a small-edge tail into two glued rectangles.

    The prefix goes into R' of area F * prefix_area with smaller edge W'
    in [max(s1, 1/10), sqrt(F * prefix_area)]; the tail goes into
    R'' = W' x (F V / W') whose larger edge stays at most 10 F.  The two
    stand side by side sharing the W' edge, for total area F * total.
    """
    sides = inst.sides
    if not 1 <= split < len(sides):
        raise PreconditionViolated(f"split {split} outside [1, {len(sides)})")
    prefix = Instance(sides[:split])
    tail = Instance(sides[split:])
    P = prefix.total_area
    V = tail.total_area
    F, c = params.F, params.c
    if P <= 0:
        raise PreconditionViolated("prefix area must be positive")
    if V < c * c - _TOL or V > 1 + _TOL:
        raise PreconditionViolated(f"tail area {V} outside [c^2, 1] = [{c * c}, 1]")
    edge_cap = (F - 1) / (10 * F / V + 0.1)
    if tail.max_side > edge_cap + _TOL:
        raise PreconditionViolated(
            f"tail max side {tail.max_side} exceeds edge bound {edge_cap} for V={V}"
        )

    rp = prefix_packer(prefix, F)
    rp, W, Hp = _transpose_to_height(rp)
    lo_w = max(prefix.max_side, 0.1)
    if W < lo_w - _TOL or W > math.sqrt(F * P) + _TOL:
        raise PackFailure(
            f"prefix packer smaller edge {W} outside [{lo_w}, {math.sqrt(F * P)}]"
        )
    H2 = F * V / W
    if max(W, H2) > 10 * F + 1e-9:
        raise PreconditionViolated(f"glued tail edge {max(W, H2)} exceeds 10F")

    tail_rect = Rectangle(H2, W, x=Hp, y=0.0)
    tp = meir_moser_pack(tail, tail_rect)
    merged = Rectangle(Hp + H2, W)
    return Packing(merged, rp.placements + tp.placements)


def reduce_and_pack(inst: Instance, params: PackParams,
                    prefix_packer: PrefixPacker = default_prefix_packer,
                    max_prefix: int = 1_000_000) -> ReduceResult:
    """Dispatch a total-area-1 instance to exactly one packing route."""
    if abs(inst.total_area - 1.0) > _TOL:
        raise PreconditionViolated(f"total area {inst.total_area} != 1")
    if not inst.sides:
        raise PreconditionViolated("empty instance")
    sides = inst.sides

    if sides[0] <= params.s1_threshold + 1e-15:
        return ReduceResult("a", small_s1_pack(inst, params.F), params)

    late_area = math.fsum(s * s for s in sides[params.N1:])
    if late_area >= params.c * params.c:
        packing = glue_pack(inst, params.N0, prefix_packer, params)
        return ReduceResult("b", packing, params, split_index=params.N0)

    n = find_small_index(inst, params.c, params.N1, params.N)
    if n is None:
        raise MoserpackError(
            "no small-edge index in (N1, N] although the late area is below c^2; "
            "the supplied parameters are inconsistent"
        )
    if n > max_prefix:
        raise MoserpackError(
            f"case c prefix needs {n} squares, beyond the desk-scale cap "
            f"{max_prefix}; supply toy parameters for small demonstrations"
        )
    prefix_sides = sides[:n] + (0.0,) * (n - len(sides[:n]))
    prefix = Instance(prefix_sides)
    tail = Instance(sides[n:])
    base = prefix_packer(prefix, params.F / prefix.total_area)
    if base.rect.min_edge < max(sides[0], 0.1) - _TOL:
        raise PackFailure(
            f"prefix packing smaller edge {base.rect.min_edge} below "
            f"max(s1, 1/10) = {max(sides[0], 0.1)}"
        )
    job = WhitespaceJob(base, tail, params.c, params.F)
    return ReduceResult("c", whitespace_pack(job), params, split_index=n)


# --- wire format -------------------------------------------------------------


def params_to_dict(params: PackParams) -> dict:
    return {
        "F": params.F,
        "c": params.c,
        "N0": params.N0,
        "N1": params.N1,
        "N": params.N,
        "s1_threshold": params.s1_threshold,
        "toy": params.toy,
    }


def result_to_dict(result: ReduceResult) -> dict:
    out = {
        "case": result.case,
        "packing": packing_to_dict(result.packing),
        "params": params_to_dict(result.params),
    }
    if result.split_index is not None:
        out["split_index"] = result.split_index
    return out
