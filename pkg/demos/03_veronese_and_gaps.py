"""
Higher rank: the Veronese lift
==============================

The irreducible representation on quadratic forms turns a 2 x 2 matrix into a
3 x 3 one.  Translation lengths and every term double.
"""

from nabasmajian import anosov_gap_report, cartan_valuations, preset, verify, veronese_lift

base = preset("ex51").representation()
lifted = veronese_lift(base, 3)
print(lifted.images["b"])

r2 = verify(base, cutoff=8)
r3 = verify(lifted, cutoff=8)
print("d=2:", r2.multiset(), r2.summary_line())
print("d=3:", r3.multiset(), r3.summary_line())

# Cartan valuations of the boundary image and the gap diagnostic
print(cartan_valuations(lifted.boundary_image(1)).vals)
for length, gap in anosov_gap_report(lifted, 5):
    print(f"len={length} min_gap={gap}")
