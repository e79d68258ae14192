"""Constructive shelf packers for the classical area criteria.

Three entry points:

* :func:`moon_moser_pack`  -- packs when twice the total area is at most
  the rectangle area and the largest square fits the smaller edge.
* :func:`meir_moser_pack`  -- packs when total area is at most
  x^2 + (a1 - x)(a2 - x) with x the largest square edge.
* :func:`small_s1_pack`    -- packs a total-area-1 instance whose largest
  edge is at most 1/10 into the square of area F.

All three share one first-fit decreasing shelf engine: the rectangle is
normalized so a1 <= a2, shelves span the shorter edge a1 and stack along
a2, each shelf is as tall as its first square, and every square goes into
the first shelf with room (a new shelf opens only when none has).
Coordinates are mapped back to the caller's orientation afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import PackFailure, PreconditionViolated
from .geometry import EPS_GEOM, Instance, Packing, Placement, Rectangle

#: Slack used when evaluating precondition inequalities and shelf fits.
FIT_TOL = EPS_GEOM


@dataclass(frozen=True)
class PackPrecondition:
    """One of the packability inequalities, evaluated on concrete numbers.

    ``kind`` selects the inequality:

    * ``"moon-moser"``:     min(a1, a2) >= x and 2 V <= a1 a2
    * ``"meir-moser"``:     min(a1, a2) >= x and V <= x^2 + (a1-x)(a2-x)
    * ``"circumference"``:  x <= (F - 1) V / C
    * ``"small-s1"``:       x <= 1/10 and V = 1
    """

    kind: str
    V: float
    x: float
    a1: float = 0.0
    a2: float = 0.0
    C: Optional[float] = None
    F: Optional[float] = None

    def holds(self, tol: float = FIT_TOL) -> bool:
        if self.kind == "moon-moser":
            return min(self.a1, self.a2) >= self.x - tol and 2 * self.V <= self.a1 * self.a2 + tol
        if self.kind == "meir-moser":
            bound = self.x * self.x + (self.a1 - self.x) * (self.a2 - self.x)
            return min(self.a1, self.a2) >= self.x - tol and self.V <= bound + tol
        if self.kind == "circumference":
            if self.F is None or self.C is None:
                raise ValueError("circumference precondition needs F and C")
            return self.x <= (self.F - 1) * self.V / self.C + tol
        if self.kind == "small-s1":
            return self.x <= 0.1 + tol and abs(self.V - 1.0) <= 1e-9
        raise ValueError(f"unknown precondition kind {self.kind!r}")


def circumference_admits(F: float, V: float, C: float, x: float) -> bool:
    """True when x <= (F - 1) V / C.

    Any instance of total area V and maximal edge x passing this test
    satisfies the meir-moser inequality on every rectangle of area F V
    whose half-circumference a1 + a2 is at most C (with both edges >= x).
    """
    if F <= 1:
        raise ValueError(f"area factor must exceed 1, got F={F}")
    if V <= 0 or C <= 0:
        raise ValueError(f"V and C must be positive, got V={V}, C={C}")
    if x < 0:
        raise ValueError(f"max edge must be >= 0, got x={x}")
    return x <= (F - 1) * V / C


def _shelf_positions(sides: tuple[float, ...], a1: float, a2: float) -> Optional[list[tuple[float, float]]]:
    """First-fit decreasing shelf placement inside a1 (width) x a2 (height).

    ``sides`` must be sorted non-increasingly.  Returns lower-left corners
    in input order, or None when some square does not fit.  Zero-side
    squares are placed nominally at the origin.
    """
    coords: list[tuple[float, float]] = []
    shelf_y: list[float] = []
    shelf_used: list[float] = []
    top = 0.0
    for s in sides:
        if s <= 0.0:
            coords.append((0.0, 0.0))
            continue
        if s > a1 + FIT_TOL:
            return None
        for k in range(len(shelf_y)):
            if shelf_used[k] + s <= a1 + FIT_TOL:
                coords.append((shelf_used[k], shelf_y[k]))
                shelf_used[k] += s
                break
        else:
            if top + s > a2 + FIT_TOL:
                return None
            coords.append((0.0, top))
            shelf_y.append(top)
            shelf_used.append(s)
            top += s
    return coords


def _run_shelves(inst: Instance, rect: Rectangle) -> Packing:
    """Run the shelf engine in normalized orientation, map back, offset."""
    swap = rect.width > rect.height
    a1, a2 = (rect.height, rect.width) if swap else (rect.width, rect.height)
    coords = _shelf_positions(inst.sides, a1, a2)
    if coords is None:
        raise PackFailure(
            f"shelf placement failed for {len(inst)} squares in "
            f"{rect.width} x {rect.height}"
        )
    placements = []
    for s, (u, v) in zip(inst.sides, coords):
        x, y = (v, u) if swap else (u, v)
        placements.append(Placement(s, rect.x + x, rect.y + y))
    return Packing(rect, tuple(placements))


def _checked_pack(inst: Instance, rect: Rectangle, pre: PackPrecondition,
                  require_precondition: bool) -> Packing:
    if require_precondition and not pre.holds():
        raise PreconditionViolated(
            f"{pre.kind} inequality fails for V={pre.V}, x={pre.x}, "
            f"rect {rect.width} x {rect.height}"
        )
    return _run_shelves(inst, rect)


def moon_moser_pack(inst: Instance, rect: Rectangle, *,
                    require_precondition: bool = True) -> Packing:
    """Pack squares whose doubled total area fits the rectangle.

    Precondition: min edge >= max square and 2 V <= a1 a2.  With
    ``require_precondition=False`` the attempt runs regardless and an
    unplaceable square raises :class:`PackFailure` instead.
    """
    pre = PackPrecondition("moon-moser", inst.total_area, inst.max_side,
                           rect.width, rect.height)
    return _checked_pack(inst, rect, pre, require_precondition)


def meir_moser_pack(inst: Instance, rect: Rectangle, *,
                    require_precondition: bool = True) -> Packing:
    """Pack squares under the V <= x^2 + (a1 - x)(a2 - x) criterion."""
    pre = PackPrecondition("meir-moser", inst.total_area, inst.max_side,
                           rect.width, rect.height)
    return _checked_pack(inst, rect, pre, require_precondition)


def small_s1_pack(inst: Instance, F: float) -> Packing:
    """Pack a total-area-1 instance with max edge <= 1/10 into sqrt(F) x sqrt(F).

    Works for any F >= (2 + sqrt(3))/3 because then sqrt(F) > 11/10, which
    makes the meir-moser inequality hold on the square:
    s1^2 + (sqrt(F) - s1)^2 > 1 whenever s1 <= 1/10.
    """
    if F < (2 + math.sqrt(3)) / 3 - 1e-12:
        raise PreconditionViolated(f"area factor {F} below (2 + sqrt(3))/3")
    V = inst.total_area
    s1 = inst.max_side
    pre = PackPrecondition("small-s1", V, s1)
    if not pre.holds():
        raise PreconditionViolated(
            f"small-s1 needs total area 1 and max edge <= 1/10, got V={V}, s1={s1}"
        )
    a = math.sqrt(F)
    assert a > 1.1  # sqrt(F) > 11/10 underpins the inequality below
    assert s1 * s1 + (a - s1) * (a - s1) > V - 1e-9
    return meir_moser_pack(inst, Rectangle(a, a))
