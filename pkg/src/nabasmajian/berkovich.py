"""The Berkovich projective line as an R-tree.

Points of the tree are closed balls ``Ball(c, s) = {x : v(x - c) >= s}``
(diameter ``q^-s``); an integral ``s`` gives a type II point, a rational
non-integral one a type III point, and the classical points of P^1 are type I
(``TypeI(z)``, with ``z = None`` for infinity).  ``Ball(0, 0)`` is the Gauss
point.

The distance between nested balls is the difference of their exponents, and
in general it is computed through the join (smallest ball containing both).
Moebius maps act by sending a ball to the median of the images of three
classical points whose median it is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, NotDistinct, OnAxisEndpoint, OrderError
from .proj_linear import (DualPoint, ProjMatrix, ProjPoint, cross_ratio_valuation)
from .valued_field import INFINITY, FieldElement, _element


@dataclass(frozen=True)
class TypeI:
    """A classical point of P^1; ``value is None`` is infinity."""

    value: FieldElement | None

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, TypeI):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        diff = self.value - other.value
        if diff.is_exact:
            return diff.is_zero()
        return diff.at_least(64)

    def __hash__(self):
        if self.value is None:
            return hash(None)
        return hash(self.value.model.truncate(self.value.approx(64), 64))

    def __repr__(self):
        return "TypeI(inf)" if self.value is None else f"TypeI({self.value})"


class Ball:
    """Closed ball of center ``center`` and diameter exponent ``s``.

    Any point of the ball is an equally good center, so equality is a
    predicate rather than a comparison of stored centers.
    """

    __slots__ = ("center", "s")

    def __init__(self, center, s):
        self.center = center
        self.s = Fraction(s)

    @property
    def model(self):
        return self.center.model

    @property
    def point_type(self):
        return 2 if self.s.denominator == 1 else 3

    def contains_point(self, z):
        return (z - self.center).at_least(math.ceil(self.s))

    def contains(self, other):
        """Ball containment (``other`` lies below ``self`` in the tree)."""
        if isinstance(other, TypeI):
            return other.value is not None and self.contains_point(other.value)
        return self.s <= other.s and self.contains_point(other.center)

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self.s == other.s and self.contains_point(other.center)

    def __hash__(self):
        k = math.ceil(self.s)
        return hash((self.s, self.model.truncate(self.center.approx(k), k)))

    def __repr__(self):
        s = self.s if self.s.denominator != 1 else int(self.s)
        c = self.center if self.center.is_exact else "~"
        return f"Ball({c}, {s})"


def gauss_point(model):
    return Ball(model.zero, 0)


def _as_point(model, x):
    if isinstance(x, (TypeI, Ball)):
        return x
    if x is None:
        return TypeI(None)
    return TypeI(_element(model, x))


def median(u, w, z):
    """Median of three distinct classical points (the unique tree point on
    all three connecting geodesics)."""
    pts = [p if isinstance(p, TypeI) else TypeI(p) for p in (u, w, z)]
    for i in range(3):
        for k in range(i + 1, 3):
            if pts[i] == pts[k]:
                raise NotDistinct("median needs three distinct points")
    finite = [p.value for p in pts if p.value is not None]
    if len(finite) == 2:
        a, b = finite
        return Ball(a, (a - b).valuation())
    a, b, c = finite
    pairs = [((a - b).valuation(), a), ((a - c).valuation(), a), ((b - c).valuation(), b)]
    # the branch point sits where the closest pair separates
    s, center = max(pairs, key=lambda t: t[0])
    return Ball(center, s)


def join(x, y):
    """Smallest ball containing both points (``None`` if infinity is involved)."""
    if isinstance(x, TypeI) and x.value is None or isinstance(y, TypeI) and y.value is None:
        return None
    cx, sx = (x.value, INFINITY) if isinstance(x, TypeI) else (x.center, x.s)
    cy, sy = (y.value, INFINITY) if isinstance(y, TypeI) else (y.center, y.s)
    bound = min(sx, sy)
    diff = cx - cy
    if bound != INFINITY:
        ceil = math.ceil(bound)
        if diff.at_least(ceil):
            return Ball(cx, bound)
    v = diff.valuation()
    s = min(bound, v)
    return Ball(cx, s)


def dist(x, y):
    """Hyperbolic distance; infinite whenever a classical point is involved
    (unless both points coincide)."""
    if isinstance(x, TypeI) or isinstance(y, TypeI):
        if isinstance(x, TypeI) and isinstance(y, TypeI) and x == y:
            return 0
        return INFINITY
    j = join(x, y)
    d = (x.s - j.s) + (y.s - j.s)
    return int(d) if d.denominator == 1 else d


def _mobius_point(g, z):
    (a, b), (c, d) = g.rows
    if z is None:
        if c.is_exact and c.is_zero():
            return None
        return a / c
    den = c * z + d
    if den.is_exact and den.is_zero():
        return None
    return (a * z + b) / den


def mobius_act(g, x):
    """Image of a tree point under z -> (a z + b) / (c z + d)."""
    if g.d != 2:
        raise DimensionError("mobius_act needs a 2 x 2 matrix")
    model = g.model
    x = _as_point(model, x)
    if isinstance(x, TypeI):
        return TypeI(_mobius_point(g, x.value))
    if x.s.denominator != 1:
        lo = mobius_act(g, Ball(x.center, math.floor(x.s)))
        hi = mobius_act(g, Ball(x.center, math.ceil(x.s)))
        return _along(lo, hi, x.s - math.floor(x.s))
    c = x.center
    pts = [c, c + model.pi_power(int(x.s)), None]
    images = [_mobius_point(g, z) for z in pts]
    return median(*[TypeI(z) for z in images])


def _along(x, y, t):
    """The point at distance t from x on the geodesic from x to y."""
    j = join(x, y)
    down = x.s - j.s
    if t <= down:
        return Ball(x.center, x.s - t)
    return Ball(y.center, j.s + (t - down))


def project_to_axis(alpha):
    """Nearest point of the axis [0, infinity] to a classical point alpha:
    the ball B(0, |alpha|)."""
    if isinstance(alpha, TypeI):
        alpha = alpha.value
    if alpha is None or (alpha.is_exact and alpha.is_zero()):
        raise OnAxisEndpoint("alpha is an endpoint of the axis")
    return Ball(alpha.model.zero, alpha.valuation())


def axis_distance_vs_crossratio(a, b):
    """(distance between the axis projections of a and b, log |[inf, 0; a, b]|).

    Requires |a| < |b|; both numbers agree.
    """
    if isinstance(a, TypeI):
        a = a.value
    if isinstance(b, TypeI):
        b = b.value
    if not a.valuation() > b.valuation():
        raise OrderError("need |a| < |b|, that is v(a) > v(b)")
    model = a.model
    d = dist(project_to_axis(a), project_to_axis(b))
    inf_dual = DualPoint.dual_of(ProjPoint.affine_point(model, None))
    zero_dual = DualPoint.dual_of(ProjPoint.affine_point(model, 0))
    cr = cross_ratio_valuation(inf_dual, zero_dual, ProjPoint.affine_point(model, a),
                               ProjPoint.affine_point(model, b))
    return d, cr


@dataclass(frozen=True)
class AxisInterval:
    """Oriented piece of the axis [0, infinity] from the projection of
    beta+ to the projection of beta-."""

    plus: Ball
    minus: Ball

    @property
    def measure(self):
        """Unsigned length (the hyperbolic measure of the interval)."""
        return dist(self.plus, self.minus)

    @property
    def sign(self):
        diff = self.plus.s - self.minus.s
        return (diff > 0) - (diff < 0)

    @property
    def signed_measure(self):
        return self.sign * self.measure


def normalize_axis(M):
    """Matrices ``(h, h_adj)`` with ``h`` sending infinity and 0 to the
    attracting and repelling fixed points of M; ``h_adj`` is h^-1 up to
    scale, so ``h_adj M h`` is diagonal with the attracting point at
    infinity."""
    from .proj_linear import eigen_data
    if M.d != 2:
        raise DimensionError("normalize_axis needs d = 2")
    e = eigen_data(M)
    (a0, a1), (r0, r1) = e.attracting_point.coords, e.repelling_point.coords
    h = ProjMatrix(M.model, [[a0, r0], [a1, r1]])
    h_adj = ProjMatrix(M.model, [[r1, -r0], [-a1, a0]])
    return h, h_adj


def axis_point(h_adj, point):
    """Projection to the normalised axis of a point of P^1 (a ProjPoint)."""
    u0, u1 = (h_adj.apply(point)).coords
    model = h_adj.model
    return Ball(model.zero, u0.valuation() - u1.valuation())


def geometric_verify(rep, cutoff=None, window=None):
    """Run the identity through axis intervals in the Berkovich tree; the
    report has the same shape as :func:`nabasmajian.identity.verify`."""
    from .identity import _scan_report
    return _scan_report(rep, cutoff, window, geometric=True)


def geometric_terms(rep, max_len):
    """Signed measure of the axis interval of every double coset up to
    max_len, zeros included: ``{(j, q, word): measure}``."""
    from .identity import _all_terms
    return _all_terms(rep, max_len, geometric=True)
