"""Build the hand-checkable reference packing and render it to SVG.

One square of side 1/sqrt(2) sits next to three squares of side 1/sqrt(6).
The four squares have total area exactly 1 and the enclosing rectangle has
area (2+sqrt(3))/3, the smallest factor the reduction machinery supports.
Run it from the repository root:

    python3 demos/reference_packing.py
"""

import math

from moserpack import Packing, Placement, Rectangle, render_svg, verify_packing

big = 1 / math.sqrt(2)
small = math.sqrt(1 / 6)

rect = Rectangle(big + 2 * small, 2 * small)
packing = Packing(
    rect,
    [
        Placement(big, 0.0, 0.0),
        Placement(small, big, 0.0),
        Placement(small, big, small),
        Placement(small, big + small, 0.0),
    ],
)

print(f"rectangle: {rect.width:.6f} x {rect.height:.6f}")
print(f"square area total: {sum(p.side**2 for p in packing.placements):.17f}")
print(f"rectangle area:    {rect.area:.17f}")
print(f"target (2+sqrt3)/3: {(2 + math.sqrt(3)) / 3:.17f}")

report = verify_packing(packing, tol=1e-12)
print(f"verification: valid={report.valid}, violations={len(report.violations)}")

doc = render_svg(packing, scale=400.0)
out = "reference_packing.svg"
with open(out, "w") as fh:
    fh.write(doc.to_string())
print(f"wrote {out} ({len(doc.rects)} rects, {doc.width:.0f}x{doc.height:.0f} px)")
