"""Axis-parallel rectangles, packings, and rectilinear region algebra.

Everything downstream (shelf packers, whitespace packing, the reduction
driver) is built on the primitives in this module.  All geometry is
axis-parallel and uses one global absolute tolerance ``EPS_GEOM``:
touching edges count as disjoint, and verification accepts overlap or
boundary excess up to the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionViolated

#: Global absolute geometric tolerance.
EPS_GEOM = 1e-12

# A region part is a plain (x0, y0, x1, y1) tuple; keeping the hot loops on
# tuples instead of dataclass instances is a large constant-factor win.
_Part = tuple[float, float, float, float]


@dataclass(frozen=True)
class Rectangle:
    """Axis-parallel rectangle with positive extent.

    The origin is the lower-left corner and defaults to (0, 0).
    """

    width: float
    height: float
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise ValueError(f"rectangle sides must be positive, got {self.width} x {self.height}")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def x2(self) -> float:
        return self.x + self.width

    @property
    def y2(self) -> float:
        return self.y + self.height

    @property
    def min_edge(self) -> float:
        return min(self.width, self.height)

    @property
    def max_edge(self) -> float:
        return max(self.width, self.height)


@dataclass(frozen=True)
class Placement:
    """A square of edge ``side`` whose lower-left corner sits at (x, y)."""

    side: float
    x: float
    y: float

    def __post_init__(self) -> None:
        if self.side < 0:
            raise ValueError(f"placement side must be >= 0, got {self.side}")

    @property
    def x2(self) -> float:
        return self.x + self.side

    @property
    def y2(self) -> float:
        return self.y + self.side

    @property
    def area(self) -> float:
        return self.side * self.side


@dataclass(frozen=True)
class Instance:
    """A multiset of square edge lengths, stored sorted non-increasingly.

    Construction sorts the sides, so zero sides can only appear as a
    trailing run.  Negative sides are rejected.  When
    ``declared_total_area`` is given it must match the actual total within
    ``AREA_DECL_TOL``.
    """

    sides: tuple[float, ...]
    declared_total_area: Optional[float] = None

    AREA_DECL_TOL = 1e-9

    def __post_init__(self) -> None:
        sides = tuple(sorted((float(s) for s in self.sides), reverse=True))
        if sides and sides[-1] < 0:
            bad = next(s for s in sides if s < 0)
            raise ValueError(f"instance sides must be >= 0, got {bad}")
        object.__setattr__(self, "sides", sides)
        if self.declared_total_area is not None:
            actual = self.total_area
            if abs(actual - self.declared_total_area) > self.AREA_DECL_TOL:
                raise ValueError(
                    f"declared total area {self.declared_total_area} differs from "
                    f"actual {actual} by more than {self.AREA_DECL_TOL}"
                )

    @property
    def total_area(self) -> float:
        return math.fsum(s * s for s in self.sides)

    @property
    def max_side(self) -> float:
        return self.sides[0] if self.sides else 0.0

    def __len__(self) -> int:
        return len(self.sides)


@dataclass(frozen=True)
class Packing:
    """A target rectangle together with one placement per input square."""

    rect: Rectangle
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placements", tuple(self.placements))

    @property
    def total_placed_area(self) -> float:
        return math.fsum(p.area for p in self.placements)


@dataclass(frozen=True)
class Violation:
    """One verification defect: a placement out of bounds or an overlapping pair."""

    kind: str  # "outside" | "overlap"
    index: int
    partner: Optional[int] = None
    measure: float = 0.0


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...] = ()
    truncated: bool = False


@dataclass(frozen=True)
class RectilinearRegion:
    """A finite union of pairwise interior-disjoint axis-parallel rectangles.

    Parts are (x0, y0, x1, y1) tuples.  Normalization drops zero-area
    parts; disjointness is maintained by construction through
    :func:`region_subtract` / :func:`region_union` and is only checked
    explicitly in :meth:`from_rectangles`.
    """

    parts: tuple[_Part, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        kept = tuple(p for p in self.parts if p[2] > p[0] and p[3] > p[1])
        object.__setattr__(self, "parts", kept)

    @classmethod
    def from_rectangles(cls, rects: Iterable[Rectangle]) -> "RectilinearRegion":
        """Build a region as the union of possibly-overlapping rectangles."""
        region = cls()
        for r in rects:
            region = region_union(region, r)
        return region

    @property
    def rectangles(self) -> tuple[Rectangle, ...]:
        return tuple(
            Rectangle(x1 - x0, y1 - y0, x0, y0) for (x0, y0, x1, y1) in self.parts
        )

    @property
    def is_empty(self) -> bool:
        return not self.parts


def _subtract_part(part: _Part, cut: _Part, out: list) -> None:
    """Append ``part`` minus the interior of ``cut`` onto ``out``."""
    x0, y0, x1, y1 = part
    cx0, cy0, cx1, cy1 = cut
    # Touching edges do not count as overlap.
    if x1 <= cx0 or cx1 <= x0 or y1 <= cy0 or cy1 <= y0:
        out.append(part)
        return
    # Vertical slabs left and right of the cut, then the middle strips.
    if cx0 > x0:
        out.append((x0, y0, cx0, y1))
    if cx1 < x1:
        out.append((cx1, y0, x1, y1))
    mx0 = x0 if cx0 < x0 else cx0
    mx1 = x1 if cx1 > x1 else cx1
    if cy0 > y0:
        out.append((mx0, y0, mx1, cy0))
    if cy1 < y1:
        out.append((mx0, cy1, mx1, y1))


def region_subtract(region: RectilinearRegion, cut: Rectangle) -> RectilinearRegion:
    """Closure of ``region`` minus the interior of ``cut``.

    Zero-area residue (boundary segments of a fully covered part) is
    dropped by normalization, so the returned area always equals
    ``area(region) - area(region ∩ cut)``.
    """
    c = (cut.x, cut.y, cut.x2, cut.y2)
    out: list[_Part] = []
    for part in region.parts:
        _subtract_part(part, c, out)
    return RectilinearRegion(tuple(out))


def region_union(region: RectilinearRegion, rect: Rectangle) -> RectilinearRegion:
    """Union of ``region`` with one more rectangle, kept interior-disjoint."""
    pieces: list[_Part] = [(rect.x, rect.y, rect.x2, rect.y2)]
    for part in region.parts:
        nxt: list[_Part] = []
        for piece in pieces:
            _subtract_part(piece, part, nxt)
        pieces = nxt
        if not pieces:
            break
    return RectilinearRegion(region.parts + tuple(pieces))


def region_area(region: RectilinearRegion) -> float:
    return math.fsum((x1 - x0) * (y1 - y0) for (x0, y0, x1, y1) in region.parts)


def region_lexicomin(region: RectilinearRegion) -> Optional[tuple[float, float]]:
    """Lexicographically smallest point of the region (min x, then min y).

    Returns ``None`` on an empty region.  Parts whose left edges agree
    within ``EPS_GEOM`` are treated as tied in x and the smallest bottom
    edge among them wins; the returned point is always an exact part
    corner, hence exactly inside the region.
    """
    if not region.parts:
        return None
    min_x = min(p[0] for p in region.parts)
    best = min(
        (p for p in region.parts if p[0] <= min_x + EPS_GEOM),
        key=lambda p: (p[1], p[0]),
    )
    return (best[0], best[1])


def feasible_midpoint_region(
    rect: Rectangle, obstacles: Sequence[Placement], s: float
) -> RectilinearRegion:
    """Region of valid midpoints for a new square of side ``s``.

    A point p is in the result exactly when the square of side ``s``
    centered at p lies inside ``rect`` and is interior-disjoint from every
    obstacle.  Geometrically this is the centered (W-s) x (H-s) rectangle
    minus each obstacle inflated by s/2 on all four sides (clipped to the
    enclosing rectangle).  Obstacles with side 0 have empty interiors and
    impose no constraint, so they are skipped rather than inflated.
    """
    if s < 0:
        raise ValueError(f"square side must be >= 0, got {s}")
    if s > rect.min_edge:
        raise PreconditionViolated(
            f"side {s} exceeds the smaller enclosing edge {rect.min_edge}"
        )
    half = s / 2.0
    inner = (rect.x + half, rect.y + half, rect.x2 - half, rect.y2 - half)
    parts: list[_Part] = []
    if inner[2] > inner[0] and inner[3] > inner[1]:
        parts.append(inner)
    region = RectilinearRegion(tuple(parts))
    for ob in obstacles:
        if ob.side <= 0:
            continue
        cut = (
            max(ob.x - half, rect.x),
            max(ob.y - half, rect.y),
            min(ob.x2 + half, rect.x2),
            min(ob.y2 + half, rect.y2),
        )
        if cut[2] <= cut[0] or cut[3] <= cut[1]:
            continue
        out: list[_Part] = []
        for part in region.parts:
            _subtract_part(part, cut, out)
        region = RectilinearRegion(tuple(out))
    return region


_MAX_REPORTED = 10_000


def verify_packing(packing: Packing, tol: float = EPS_GEOM) -> VerificationReport:
    """Check containment and pairwise interior-disjointness of a packing.

    A placement may stick out of the rectangle by at most ``tol`` per
    side, and a pair of placements may share at most ``tol`` of overlap
    area.  Every offending placement/pair is listed, up to a cap of
    10000 entries (``truncated`` is set if the cap is hit).
    """
    pls = packing.placements
    n = len(pls)
    violations: list[Violation] = []
    r = packing.rect
    for i, p in enumerate(pls):
        excess = max(r.x - p.x, r.y - p.y, p.x2 - r.x2, p.y2 - r.y2)
        if excess > tol:
            violations.append(Violation("outside", i, None, excess))

    if n >= 2:
        if n <= 64:
            for i in range(n):
                a = pls[i]
                if a.side <= 0:
                    continue
                for j in range(i + 1, n):
                    b = pls[j]
                    ox = min(a.x2, b.x2) - max(a.x, b.x)
                    if ox <= 0:
                        continue
                    oy = min(a.y2, b.y2) - max(a.y, b.y)
                    if oy <= 0:
                        continue
                    if ox * oy > tol:
                        violations.append(Violation("overlap", i, j, ox * oy))
        else:
            xs = np.array([p.x for p in pls])
            ys = np.array([p.y for p in pls])
            ss = np.array([p.side for p in pls])
            x2 = xs + ss
            y2 = ys + ss
            chunk = max(1, int(4e6 // n))
            for lo in range(0, n, chunk):
                hi = min(lo + chunk, n)
                ox = np.minimum(x2[lo:hi, None], x2[None, :]) - np.maximum(
                    xs[lo:hi, None], xs[None, :]
                )
                oy = np.minimum(y2[lo:hi, None], y2[None, :]) - np.maximum(
                    ys[lo:hi, None], ys[None, :]
                )
                np.clip(ox, 0.0, None, out=ox)
                np.clip(oy, 0.0, None, out=oy)
                ox *= oy
                ii, jj = np.nonzero(ox > tol)
                for a_i, b_j in zip(ii, jj):
                    gi = lo + int(a_i)
                    gj = int(b_j)
                    if gj <= gi:  # report each unordered pair once
                        continue
                    violations.append(Violation("overlap", gi, gj, float(ox[a_i, b_j])))
                    if len(violations) > _MAX_REPORTED:
                        break
                if len(violations) > _MAX_REPORTED:
                    break

    truncated = len(violations) > _MAX_REPORTED
    if truncated:
        violations = violations[:_MAX_REPORTED]
    return VerificationReport(not violations, tuple(violations), truncated)


# --- wire formats -----------------------------------------------------------


def packing_to_dict(packing: Packing) -> dict:
    """Serialize a packing; the rectangle is normalized to origin (0, 0)."""
    r = packing.rect
    return {
        "rect": {"w": r.width, "h": r.height},
        "placements": [
            {"side": p.side, "x": p.x - r.x, "y": p.y - r.y} for p in packing.placements
        ],
    }


def packing_from_dict(data: dict) -> Packing:
    rect = Rectangle(float(data["rect"]["w"]), float(data["rect"]["h"]))
    placements = tuple(
        Placement(float(p["side"]), float(p["x"]), float(p["y"]))
        for p in data["placements"]
    )
    return Packing(rect, placements)


def instance_to_dict(inst: Instance) -> dict:
    out: dict = {"sides": list(inst.sides)}
    if inst.declared_total_area is not None:
        out["total_area"] = inst.declared_total_area
    return out


def instance_from_dict(data: dict) -> Instance:
    """Read an instance; sides are sorted non-increasingly, negatives rejected."""
    return Instance(tuple(float(s) for s in data["sides"]), data.get("total_area"))
