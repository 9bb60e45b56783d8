"""
Other surfaces and fields
=========================

A pair of pants over Q_3 has three boundary words a, b and BA, so the sum runs
over nine ordered pairs of boundaries.  The same torus construction also works
over F_5((T)).
"""

from nabasmajian import (FieldModel, ProjMatrix, Representation, geometric_verify, lhs,
                         verify)
from nabasmajian._fpoly import RatFunc
from nabasmajian.surface_group import format_word

Q3 = FieldModel.qp(3)
pants = Representation(Q3, (0, 3), {"a": [[9, 1], [0, 1]], "b": [[1, 0], [3, 9]]})
print([format_word(w) for w in pants.boundary.words], "lengths sum to", lhs(pants))
print(verify(pants, cutoff=8).to_text())

# reversing one boundary changes the orientation of its terms and the sum breaks
flipped = Representation(Q3, (0, 3), {"a": [[9, 1], [0, 1]], "b": [[1, 0], [3, 9]]},
                         inverted=(3,))
print(verify(flipped, cutoff=8).summary_line())

# over Laurent series: b is T-scaling conjugated to fix 1 and 2
L5 = FieldModel.laurent(5)
T = RatFunc.monomial(1, 5)
h = ProjMatrix(L5, [[1, 2], [1, 1]])
b = h @ ProjMatrix(L5, [[T, 0], [0, 1]]) @ h.inverse()
torus = Representation(L5, (1, 1), {"a": [[T, 0], [0, 1]], "b": b})
print(b)
print(verify(torus, cutoff=8).summary_line())
print(geometric_verify(torus, cutoff=8).summary_line())
