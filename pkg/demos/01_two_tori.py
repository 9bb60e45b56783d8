"""
Two one-holed tori over Q_p
===========================

Both representations send the generator a to a diagonal matrix and b to a
hyperbolic element with its own pair of fixed points.  The boundary word is
the commutator abAB.
"""

from nabasmajian import lhs, preset, verify

# z -> 3z and z -> (z - 4) / (2z - 5) over Q_3
rep = preset("ex51").representation()
print("boundary translation length:", lhs(rep))

report = verify(rep)
print(report.to_text())

# z -> 2z and a map fixing 1 and 3, over Q_2.  Here the sum has negative terms.
rep = preset("ex52").representation()
report = verify(rep)
for t in report.terms:
    print(t.line())
print("terms:", report.multiset())
print(report.summary_line())
