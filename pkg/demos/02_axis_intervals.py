"""
Terms as intervals on an axis of the Berkovich line
===================================================

Conjugate so that the boundary element fixes 0 and infinity.  Each double
coset representative w moves the other boundary's fixed points to a pair of
classical points; projecting them to the axis [0, infinity] gives an oriented
interval whose signed length is the same integer as the cross-ratio term.
"""

from nabasmajian import (AxisInterval, ProjMatrix, ProjPoint, algebraic_terms, dist, gauss_point,
                         geometric_terms, mobius_act, normalize_axis, preset,
                         translation_length)
from nabasmajian.berkovich import axis_point
from nabasmajian.surface_group import format_word

rep = preset("ex52").representation()
M = rep.boundary_image(1)
h, h_adj = normalize_axis(M)

# in these coordinates the boundary element slides the axis by its translation length
x = ProjPoint(rep.model, [1, 1])
print("displacement:", dist(axis_point(h_adj, M.apply(x)), axis_point(h_adj, x)),
      "translation length:", translation_length(M))

e = rep.eigen(1)
for word in ("a", "B", "aB", "BA", "ba"):
    W = rep.image(word)
    plus = axis_point(h_adj, W.apply(e.attracting_point))
    minus = axis_point(h_adj, W.apply(e.repelling_point))
    iv = AxisInterval(plus, minus)
    print(f"{word:3s} interval exponents ({plus.s}, {minus.s})  signed length {iv.signed_measure}")

# the two pipelines agree coset by coset, zeros included
alg = algebraic_terms(rep, 6)
geo = geometric_terms(rep, 6)
print(len(alg), "cosets up to length 6, all equal:", alg == geo)
print("nonzero:", {format_word(w): v for (_, _, w), v in alg.items() if v})

# the Gauss point is fixed by the identity and moved by a
g = gauss_point(rep.model)
print(dist(mobius_act(ProjMatrix.identity(rep.model, 2), g), g), dist(mobius_act(rep.image("a"), g), g))
