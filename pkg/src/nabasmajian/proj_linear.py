"""Projective linear algebra over a valued field.

Matrices, points and hyperplanes are all projective: every quantity exported
here is invariant under rescaling of its inputs.  Points are column vectors,
hyperplanes (points of the dual space) are row vectors, and the pairing of a
hyperplane with a point is their dot product.

Conventions worth knowing:

* For d = 2 a point ``[x : y]`` is the affine coordinate ``z = x / y``, so
  ``[1 : 0]`` is infinity and ``[0 : 1]`` is zero, and ``dual_of`` returns
  the row vector whose kernel is the point.
* For a biproximal matrix the *attracting hyperplane* is the invariant
  hyperplane containing the attracting eigenline (the span of all
  non-bottom eigenspaces).  It annihilates the attracting point and pairs
  nontrivially with the repelling one; with this convention the period of an
  element equals its translation length.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import DegeneratePairing, DimensionError, NotBiproximal
from .valued_field import (INFINITY, FieldElement, _element, argmin_valuation,
                           hensel_root, newton_polygon)


def _as_int(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class ProjMatrix:
    """A d x d invertible matrix up to scalars."""

    __slots__ = ("model", "rows")

    def __init__(self, model, rows):
        rows = tuple(tuple(_element(model, x) for x in row) for row in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        self.model = model
        self.rows = rows

    @classmethod
    def identity(cls, model, d):
        return cls(model, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, model, entries):
        d = len(entries)
        return cls(model, [[entries[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def d(self):
        return len(self.rows)

    @property
    def is_exact(self):
        return all(x.is_exact for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def raw(self):
        return [[x.value for x in row] for row in self.rows]

    def transpose(self):
        return ProjMatrix(self.model, list(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, ProjMatrix):
            cols = list(zip(*other.rows))
            return ProjMatrix(self.model, [[_dot(row, col) for col in cols] for row in self.rows])
        if isinstance(other, ProjPoint):
            return self.apply(other)
        return NotImplemented

    def apply(self, point):
        return ProjPoint(self.model, [_dot(row, point.coords) for row in self.rows])

    def act_dual(self, phi):
        """Push a hyperplane forward: ``phi -> phi o M^{-1}``."""
        inv = self.inverse()
        cols = list(zip(*inv.rows))
        return DualPoint(self.model, [_dot(phi.coords, col) for col in cols])

    def scale(self, c):
        c = _element(self.model, c)
        return ProjMatrix(self.model, [[c * x for x in row] for row in self.rows])

    def det(self):
        if not self.is_exact:
            raise TypeError("det needs exact entries")
        a = self.raw()
        n = len(a)
        det = self.model.raw(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return self.model.zero
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det = det * a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f:
                    a[i] = [a[i][j] - f * a[k][j] for j in range(n)]
        return self.model(det)

    def inverse(self):
        """Exact inverse (as a matrix, not merely projectively)."""
        if not self.is_exact:
            raise TypeError("inverse needs exact entries")
        n = self.d
        one, zero = self.model.raw(1), self.model.raw(0)
        a = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.raw())]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[k], a[piv] = a[piv], a[k]
            inv = 1 / a[k][k]
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return ProjMatrix(self.model, [row[n:] for row in a])

    def char_poly(self):
        """Coefficients of det(lambda I - M), lowest degree first (Berkowitz)."""
        if not self.is_exact:
            raise TypeError("char_poly needs exact entries")
        a = self.raw()
        n = len(a)
        one = self.model.raw(1)
        vect = [one, -a[0][0]]
        for r in range(1, n):
            row = a[r][:r]
            col = [a[i][r] for i in range(r)]
            t = [one, -a[r][r]]
            x = col
            for _ in range(r):
                t.append(-sum((u * w for u, w in zip(row, x)), self.model.raw(0)))
                x = [sum((a[i][j] * x[j] for j in range(r)), self.model.raw(0)) for i in range(r)]
            vect = [sum((t[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(t)),
                        self.model.raw(0)) for i in range(r + 2)]
        return [self.model(c) for c in reversed(vect)]

    def is_scalar(self):
        if not self.is_exact:
            return False
        d = self.d
        return all(self.rows[i][j].is_zero() for i in range(d) for j in range(d) if i != j) and \
            all(self.rows[i][i] == self.rows[0][0] for i in range(d))

    def min_valuation(self):
        entries = [x for row in self.rows for x in row]
        return entries[argmin_valuation(entries)].valuation()

    def normalized(self):
        """Rescaled so that the minimal entry valuation is 0."""
        v = self.min_valuation()
        if v == 0:
            return self
        return self.scale(self.model(self.model.pi_power(-v)))

    def residue_digits(self, n):
        """Entries of the normalised matrix modulo pi^n, in machine form."""
        v = self.min_valuation()
        return [[self.model.residue_digits(x.shifted_approx(n, v), n) for x in row]
                for row in self.rows]

    def projectively_equal(self, other):
        a = [x for row in self.rows for x in row]
        b = [x for row in other.rows for x in row]
        i = argmin_valuation(a)
        return all(x * b[i] == y * a[i] for x, y in zip(a, b))

    def __eq__(self, other):
        # equality is projective: M == cM
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.model == other.model and self.d == other.d and self.projectively_equal(other)

    def __hash__(self):
        if not self.is_exact:
            return hash((self.model, self.d))
        entries = [x for row in self.rows for x in row]
        lead = next(x for x in entries if not x.is_zero())
        return hash((self.model, tuple((x / lead).value for x in entries)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"ProjMatrix([{body}], {self.model})"


def _dot(xs, ys):
    terms = [x * y for x, y in zip(xs, ys)]
    acc = terms[0]
    for t in terms[1:]:
        acc = acc + t
    return acc


class _Homogeneous:
    __slots__ = ("model", "coords")

    def __init__(self, model, coords):
        coords = tuple(_element(model, x) for x in coords)
        if all(x.is_exact and x.is_zero() for x in coords):
            raise ValueError("homogeneous coordinates are all zero")
        self.model = model
        self.coords = coords

    @property
    def d(self):
        return len(self.coords)

    def pivot(self):
        """Index of the first coordinate of minimal valuation."""
        return argmin_valuation(list(self.coords))

    def residues(self, n):
        """Primitive representative modulo pi^n (raw values)."""
        v = self.coords[self.pivot()].valuation()
        return tuple(x.shifted_approx(n, v) for x in self.coords)

    def residue_digits(self, n):
        return [self.model.residue_digits(r, n) for r in self.residues(n)]

    def key(self, n):
        """Canonical form modulo pi^n: pivot coordinate scaled to 1."""
        i = self.pivot()
        piv = self.coords[i]
        scaled = [x / piv for x in self.coords]
        return (i,) + tuple(self.model.truncate(x.approx(n), n) for x in scaled)

    def same_as(self, other, n=32):
        """Projective equality, decided modulo pi^n when refinables are involved."""
        if all(x.is_exact for x in self.coords + other.coords):
            a, b = self.coords, other.coords
            return all(a[i] * b[j] == a[j] * b[i] for i in range(self.d) for j in range(self.d))
        return self.key(n) == other.key(n)

    def affine(self):
        """For d = 2: the affine coordinate ``x / y`` (``None`` for infinity)."""
        if self.d != 2:
            raise DimensionError("affine coordinate only for d = 2")
        x, y = self.coords
        if y.is_exact and y.is_zero():
            return None
        return x / y

    def __repr__(self):
        return f"{type(self).__name__}([{' : '.join(str(c) if c.is_exact else '~' for c in self.coords)}])"


class ProjPoint(_Homogeneous):
    """A point of P(k^d), as a column vector up to scale."""

    __slots__ = ()

    @classmethod
    def affine_point(cls, model, z):
        """The point ``[z : 1]`` of P^1, or ``[1 : 0]`` for ``z is None``."""
        if z is None:
            return cls(model, [1, 0])
        return cls(model, [z, 1])


class DualPoint(_Homogeneous):
    """A hyperplane, as a row vector up to scale."""

    __slots__ = ()

    @classmethod
    def dual_of(cls, point):
        """For d = 2, the row vector whose kernel is ``point``."""
        if point.d != 2:
            raise DimensionError("dual_of is only defined for d = 2")
        x, y = point.coords
        return cls(point.model, [-y, x])


def pairing(phi, omega):
    return _dot(phi.coords, omega.coords)


class Classification(str, Enum):
    HYPERBOLIC = "HYPERBOLIC"
    PARABOLIC = "PARABOLIC"
    STRICTLY_ELLIPTIC = "STRICTLY_ELLIPTIC"
    IDENTITY = "IDENTITY"


def classify_pgl2(M):
    """Scaling-invariant type of a 2x2 matrix.

    Hyperbolic means v(tr^2) < v(det), which agrees with |tr| > 1 on SL(2).
    """
    if M.d != 2:
        raise DimensionError(f"classify_pgl2 needs d = 2, got {M.d}")
    if M.is_scalar():
        return Classification.IDENTITY
    tr = M[0, 0] + M[1, 1]
    det = M.det()
    tr2 = tr * tr
    if tr2.valuation() < det.valuation():
        return Classification.HYPERBOLIC
    if tr2 == 4 * det:
        return Classification.PARABOLIC
    return Classification.STRICTLY_ELLIPTIC


@dataclass(frozen=True)
class EigenData:
    attracting_point: ProjPoint
    repelling_point: ProjPoint
    attracting_hyperplane: DualPoint
    repelling_hyperplane: DualPoint
    top_valuation: int
    bottom_valuation: int
    top_eigenvalue: FieldElement
    bottom_eigenvalue: FieldElement


def kernel_vector(rows):
    """Nonzero kernel vector of a d x d matrix of rank d - 1.

    Gauss-Jordan elimination with the pivot of least valuation at each step;
    the entries left over after d - 1 pivots are zero and never inspected.
    """
    a = [list(r) for r in rows]
    d = len(a)
    model = a[0][0].model
    used = []
    for k in range(d - 1):
        cand = [(i, j) for i in range(k, d) for j in range(d) if j not in used]
        i, j = cand[argmin_valuation([a[i][j] for i, j in cand])]
        a[k], a[i] = a[i], a[k]
        inv = 1 / a[k][j]
        a[k] = [x * inv for x in a[k]]
        a[k][j] = model.one
        for r in range(d):
            if r == k:
                continue
            f = a[r][j]
            if f.is_exact and f.is_zero():
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[k])]
            a[r][j] = model.zero
        used.append(j)
    free = next(j for j in range(d) if j not in used)
    x = [model.zero] * d
    x[free] = model.one
    for k, j in enumerate(used):
        x[j] = -a[k][free]
    return x


def _shift(M, lam):
    return [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(M.rows)]


def eigen_data(M):
    """Extreme eigenvalues, eigenlines and invariant hyperplanes of a
    biproximal matrix.

    The eigenvalue of largest absolute value (least valuation) is *top*, the
    smallest is *bottom*; both must be simple roots of the characteristic
    polynomial in the sense of the Newton polygon, so that they lie in the
    field.
    """
    coeffs = M.char_poly()
    vals = newton_polygon(coeffs)
    if len(vals) < 2 or vals[0][1] != 1 or vals[-1][1] != 1:
        raise NotBiproximal(f"extreme Newton polygon segments are not simple: {vals}")
    top = hensel_root(coeffs, vals[0][0], label="top eigenvalue")
    bottom = hensel_root(coeffs, vals[-1][0], label="bottom eigenvalue")
    Mt = M.transpose()
    return EigenData(
        attracting_point=ProjPoint(M.model, kernel_vector(_shift(M, top))),
        repelling_point=ProjPoint(M.model, kernel_vector(_shift(M, bottom))),
        attracting_hyperplane=DualPoint(M.model, kernel_vector(_shift(Mt, bottom))),
        repelling_hyperplane=DualPoint(M.model, kernel_vector(_shift(Mt, top))),
        top_valuation=int(vals[0][0]),
        bottom_valuation=int(vals[-1][0]),
        top_eigenvalue=top,
        bottom_eigenvalue=bottom,
    )


def _pairings(phi, phi2, omega, omega2):
    den1 = pairing(phi, omega2)
    den2 = pairing(phi2, omega)
    for den in (den1, den2):
        if den.is_exact and den.is_zero():
            raise DegeneratePairing("a denominator pairing vanishes")
    return pairing(phi, omega), pairing(phi2, omega2), den1, den2


def cross_ratio(phi, phi2, omega, omega2):
    """phi(omega) phi2(omega2) / (phi(omega2) phi2(omega)), independent of lifts."""
    a, b, c, d = _pairings(phi, phi2, omega, omega2)
    return a * b / (c * d)


def cross_ratio_valuation(phi, phi2, omega, omega2):
    """log_v |C| = -v(C), from the four pairing valuations.

    Returns ``-INFINITY`` when a numerator pairing vanishes exactly (C = 0).
    """
    a, b, c, d = _pairings(phi, phi2, omega, omega2)
    if (a.is_exact and a.is_zero()) or (b.is_exact and b.is_zero()):
        return -INFINITY
    return -(a.valuation() + b.valuation() - c.valuation() - d.valuation())


def translation_length(M):
    """Valuation spread of the eigenvalues, from the Newton polygon alone."""
    vals = newton_polygon(M.char_poly())
    return _as_int(vals[-1][0] - vals[0][0])


def period(M, omega):
    """log_v |C(gamma+, gamma-, omega, M omega)|."""
    if M.is_scalar():
        return 0
    e = eigen_data(M)
    return cross_ratio_valuation(e.attracting_hyperplane, e.repelling_hyperplane,
                                 omega, M.apply(omega))


@dataclass(frozen=True)
class CartanValuations:
    """Invariant-factor valuations v_1 <= ... <= v_d.

    The semi-homothecy ratios are sigma_i = q^(-v_i); the Anosov gap of a
    matrix is ``v_2 - v_1``.
    """

    vals: tuple

    @property
    def gap(self):
        return self.vals[1] - self.vals[0]

    def ratios(self, q):
        return tuple(Fraction(q) ** (-v) for v in self.vals)


def _smith_valuations(a, model):
    a = [list(r) for r in a]
    n = len(a)
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = model.raw_valuation(a[i][j])
                if v != INFINITY and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            out.extend([INFINITY] * (n - k))
            break
        v, i, j = best
        a[k], a[i] = a[i], a[k]
        for r in a:
            r[k], r[j] = r[j], r[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        out.append(v)
    return out


def cartan_valuations(M, normalize=True):
    """Invariant factors of M over the valuation ring, via valuation-pivot
    elimination.  With ``normalize`` the matrix is first rescaled so its
    least entry valuation is 0."""
    if not M.is_exact:
        raise TypeError("cartan_valuations needs exact entries")
    vals = _smith_valuations(M.raw(), M.model)
    if normalize:
        vals = [v - vals[0] for v in vals]
    return CartanValuations(tuple(vals))


def anosov_gap_report(rep, max_len):
    """Minimum Cartan gap ``v_2 - v_1`` over all reduced words of each length
    1..max_len.

    A table that grows roughly linearly with the length is evidence, never
    proof, that the representation is projective Anosov: the constants of the
    definition cannot be certified from a finite window.
    """
    model = rep.model
    gens = [rep.letter_matrix(x).raw() for x in range(2 * rep.rank)]
    best = {}

    def mul(a, b):
        n = len(a)
        return [[sum((a[i][k] * b[k][j] for k in range(n)), model.raw(0)) for j in range(n)]
                for i in range(n)]

    stack = [(x, gens[x], 1) for x in range(2 * rep.rank)]
    while stack:
        last, m, length = stack.pop()
        vals = _smith_valuations(m, model)
        gap = vals[1] - vals[0]
        if length not in best or gap < best[length]:
            best[length] = gap
        if length < max_len:
            for x in range(2 * rep.rank):
                if x != last ^ 1:
                    stack.append((x, mul(m, gens[x]), length + 1))
    return [(n, best[n]) for n in range(1, max_len + 1)]


def veronese(M, d_target):
    """Matrix of M acting on homogeneous polynomials of degree d_target - 1.

    With ``M = [[a, b], [c, d]]`` the basis element ``x^(n-i) y^i`` is sent
    to ``(a x + c y)^(n-i) (b x + d y)^i``; column i holds its coefficients
    in the same basis.  This is the symmetric power of the standard action,
    so ``veronese(A @ B) == veronese(A) @ veronese(B)``.
    """
    if M.d != 2:
        raise DimensionError("veronese needs a 2 x 2 matrix")
    if d_target < 2:
        raise DimensionError("target dimension must be at least 2")
    (a, b), (c, d) = M.raw()
    n = d_target - 1
    zero = M.model.raw(0)

    def power(u, v, k):
        # (u x + v y)^k as coefficients of x^(k-j) y^j
        return [comb(k, j) * u ** (k - j) * v ** j for j in range(k + 1)]

    cols = []
    for i in range(n + 1):
        p1 = power(a, c, n - i)
        p2 = power(b, d, i)
        col = [zero] * (n + 1)
        for j1, x in enumerate(p1):
            for j2, y in enumerate(p2):
                col[j1 + j2] = col[j1 + j2] + x * y
        cols.append(col)
    return ProjMatrix(M.model, [list(r) for r in zip(*cols)])


def veronese_point(point, d_target):
    """Image of a P^1 point on the Veronese curve: coefficients of (x X + y Y)^n."""
    x, y = point.coords
    n = d_target - 1
    return ProjPoint(point.model, [comb(n, j) * x ** (n - j) * y ** j for j in range(n + 1)])


def veronese_dual(phi, d_target):
    """Osculating hyperplane of the Veronese curve at the kernel of ``phi``."""
    u, v = phi.coords
    n = d_target - 1
    # the hyperplane (u X + v Y)^n pairs with veronese_point([x:y]) as (u x + v y)^n
    return DualPoint(phi.model, [u ** (n - j) * v ** j for j in range(n + 1)])
