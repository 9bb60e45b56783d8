"""The identity itself: boundary translation lengths on one side, a sum of
cross-ratio valuations over double cosets on the other.

The scan behind :func:`verify` walks reduced words depth first and carries,
for each word w, the rows ``phi_j(+-) rho(w)`` reduced modulo pi^N.  A term
only needs valuations of four pairings, and every rescaling of a row or of a
generator matrix cancels between numerator and denominator, so integral
residues of the normalised matrices are all that is stored.  If some pairing
vanishes modulo pi^N the scan restarts with twice the precision.

The geometric scan in :mod:`nabasmajian.berkovich` uses the same walker but
extends words on the left and works in coordinates where the axis of the
boundary element is [0, infinity].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegeneratePairing, DimensionError, NotHyperbolic
from .proj_linear import (Classification, ProjMatrix, classify_pgl2,
                          cross_ratio_valuation, eigen_data, translation_length,
                          veronese)
from .surface_group import (CANONICAL, LEFT_IMPROVABLE, RIGHT_IMPROVABLE,
                            BoundarySystem, DoubleCosets, SurfaceType,
                            boundary_words, check_not_identity, format_word,
                            invert, parse_word)
from .valued_field import Kind

DEFAULT_CUTOFF = 12
DEFAULT_WINDOW = 3
_START_PRECISION = 64
_MAX_PRECISION = 1024


class Representation:
    """Images of the free generators of a surface group.

    ``images`` maps generator names (``a``, ``b``, ...) to d x d matrices;
    ``boundary`` optionally replaces boundary words ``{j: word}`` and
    ``inverted`` lists boundaries whose orientation is reversed.
    """

    def __init__(self, model, surface, images, boundary=None, inverted=(),
                 cutoff=DEFAULT_CUTOFF, window=DEFAULT_WINDOW, check=True):
        if not isinstance(surface, SurfaceType):
            surface = SurfaceType(*surface)
        self.model = model
        self.surface = surface
        names = [chr(ord("a") + i) for i in range(surface.rank)]
        if sorted(images) != names:
            raise ValueError(f"expected images for generators {' '.join(names)}, "
                             f"got {' '.join(sorted(images))}")
        mats = {}
        for name in names:
            m = images[name]
            mats[name] = m if isinstance(m, ProjMatrix) else ProjMatrix(model, m)
        dims = {m.d for m in mats.values()}
        if len(dims) != 1:
            raise DimensionError("generator images have different sizes")
        self.d = dims.pop()
        self.images = mats
        self.boundary_overrides = dict(boundary or {})
        self.inverted = frozenset(inverted)
        self.cutoff = cutoff
        self.window = window
        words = list(boundary_words(surface).words)
        for j, w in self.boundary_overrides.items():
            if not 1 <= j <= len(words):
                raise ValueError(f"no boundary {j}")
            words[j - 1] = parse_word(w, surface.rank) if isinstance(w, str) else tuple(w)
        for j in self.inverted:
            if not 1 <= j <= len(words):
                raise ValueError(f"no boundary {j}")
            words[j - 1] = invert(words[j - 1])
        self.boundary = BoundarySystem(surface, tuple(words))
        self._letters = {}
        self._eigen = {}
        for name, m in mats.items():
            det = m.det()
            if det.is_zero():
                raise ValueError(f"image of {name} is singular")
        if check:
            self.check()

    @property
    def rank(self):
        return self.surface.rank

    def letter_matrix(self, code):
        if code not in self._letters:
            m = self.images[chr(ord("a") + (code >> 1))]
            self._letters[code] = m.inverse() if code & 1 else m
        return self._letters[code]

    def image(self, word):
        if isinstance(word, str):
            word = parse_word(word, self.rank)
        out = ProjMatrix.identity(self.model, self.d)
        for x in word:
            out = out @ self.letter_matrix(x)
        return out

    def boundary_image(self, j):
        return self.image(self.boundary[j])

    def eigen(self, j):
        if j not in self._eigen:
            self._eigen[j] = eigen_data(self.boundary_image(j))
        return self._eigen[j]

    def check(self):
        """Every boundary image must be biproximal (hyperbolic when d = 2)."""
        for j in range(1, len(self.boundary) + 1):
            if self.d == 2:
                cls = classify_pgl2(self.boundary_image(j))
                if cls is not Classification.HYPERBOLIC:
                    raise NotHyperbolic(f"boundary {j} has {cls.value} image")
            self.eigen(j)

    def with_options(self, cutoff=None, window=None):
        rep = Representation.__new__(Representation)
        rep.__dict__.update(self.__dict__)
        rep.cutoff = self.cutoff if cutoff is None else cutoff
        rep.window = self.window if window is None else window
        return rep


# -- reports -----------------------------------------------------------------


class Status(str, Enum):
    VERIFIED = "VERIFIED"
    PARTIAL = "PARTIAL"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class TermRecord:
    j: int
    q: int
    word: tuple
    value: int

    def sort_key(self):
        return (self.j, self.q, len(self.word), self.word)

    def line(self):
        return f"TERM j={self.j} q={self.q} w={format_word(self.word)} value={self.value}"


@dataclass
class IdentityReport:
    lhs: int
    rhs: int
    terms: list
    max_len_scanned: int
    status: Status
    window: int = DEFAULT_WINDOW
    max_nonzero_len: int = -1

    @property
    def nonzero_count(self):
        return len(self.terms)

    def summary_line(self):
        return (f"SUM lhs={self.lhs} rhs={self.rhs} nonzero={self.nonzero_count} "
                f"max_len={self.max_len_scanned} status={self.status.value}")

    def to_text(self):
        return "".join(t.line() + "\n" for t in self.terms) + self.summary_line() + "\n"

    def to_json(self):
        return json.dumps({
            "terms": [{"j": t.j, "q": t.q, "w": format_word(t.word), "value": t.value}
                      for t in self.terms],
            "lhs": self.lhs, "rhs": self.rhs, "nonzero": self.nonzero_count,
            "max_len": self.max_len_scanned, "status": self.status.value,
        }, indent=2) + "\n"

    def multiset(self):
        return sorted(t.value for t in self.terms)


def lhs(rep):
    return sum(translation_length(rep.boundary_image(j)) for j in range(1, len(rep.boundary) + 1))


def term(rep, j, q, w):
    """A single term, straight from eigen data and the cross ratio."""
    if isinstance(w, str):
        w = parse_word(w, rep.rank)
    check_not_identity(rep.boundary, j, q, w)
    ej, eq = rep.eigen(j), rep.eigen(q)
    m = rep.image(w)
    return cross_ratio_valuation(ej.attracting_hyperplane, ej.repelling_hyperplane,
                                 m.apply(eq.attracting_point), m.apply(eq.repelling_point))


def phi(rep, j, x, z):
    """log |C(alpha_j+, alpha_j-, x, z)| for points x, z of P^(d-1)."""
    e = rep.eigen(j)
    return cross_ratio_valuation(e.attracting_hyperplane, e.repelling_hyperplane, x, z)


def veronese_lift(rep, d_target):
    if rep.d != 2:
        raise DimensionError("veronese_lift needs a d = 2 representation")
    images = {name: veronese(m, d_target) for name, m in rep.images.items()}
    return Representation(rep.model, rep.surface, images, boundary=rep.boundary_overrides,
                          inverted=rep.inverted, cutoff=rep.cutoff, window=rep.window)


# -- residue arithmetic --------------------------------------------------------


class _LowPrecision(Exception):
    """A pairing vanished modulo pi^N; ``args[0]`` is the word, once known."""


class _IntResidues:
    """Z_p / p^N as Python ints."""

    def __init__(self, p, n, d):
        self.p = p
        self.mod = mod = p ** n
        if d == 2:
            # the common case gets unrolled loops
            def vecmat(r, g):
                r0, r1 = r
                (g00, g01), (g10, g11) = g
                return [(r0 * g00 + r1 * g10) % mod, (r0 * g01 + r1 * g11) % mod]

            def matvec(g, u):
                u0, u1 = u
                (g00, g01), (g10, g11) = g
                return [(g00 * u0 + g01 * u1) % mod, (g10 * u0 + g11 * u1) % mod]

            def dot(a, b):
                return (a[0] * b[0] + a[1] * b[1]) % mod

            self.vecmat, self.matvec, self.dot = vecmat, matvec, dot

    def lift(self, digits):
        return digits % self.mod

    def vecmat(self, r, g):
        mod = self.mod
        return [sum(x * row[k] for x, row in zip(r, g)) % mod for k in range(len(r))]

    def matvec(self, g, u):
        mod = self.mod
        return [sum(x * y for x, y in zip(row, u)) % mod for row in g]

    def dot(self, a, b):
        return sum(x * y for x, y in zip(a, b)) % self.mod

    def val(self, x):
        if x == 0:
            raise _LowPrecision
        p = self.p
        if p == 2:
            return (x & -x).bit_length() - 1
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v


class _PolyResidues:
    """F_p[[T]] / T^N as coefficient arrays."""

    def __init__(self, p, n):
        self.p = p
        self.n = n

    def lift(self, digits):
        return np.array(digits, dtype=np.int64) % self.p

    def _mul(self, a, b):
        return np.convolve(a, b)[:self.n]

    def vecmat(self, r, g):
        d = len(r)
        return [sum(self._mul(r[i], g[i][k]) for i in range(d)) % self.p for k in range(d)]

    def matvec(self, g, u):
        return [sum(self._mul(x, y) for x, y in zip(row, u)) % self.p for row in g]

    def dot(self, a, b):
        return sum(self._mul(x, y) for x, y in zip(a, b)) % self.p

    def val(self, x):
        nz = np.flatnonzero(x)
        if not len(nz):
            raise _LowPrecision
        return int(nz[0])


def _ring(model, n, d):
    if model.kind is Kind.QP:
        return _IntResidues(model.p, n, d)
    return _PolyResidues(model.p, n)


def _lift_matrix(ring, m, n):
    return [[ring.lift(x) for x in row] for row in m.residue_digits(n)]


def _lift_vector(ring, point, n):
    return [ring.lift(x) for x in point.residue_digits(n)]


# -- the scans -----------------------------------------------------------------


def _walk(cosets, rank, max_len, side, start, step):
    """Depth-first walk over reduced words up to max_len, yielding
    ``(word, state)`` for canonical double coset representatives.

    ``side`` is ``"right"`` or ``"left"``: the end at which words grow.
    Subtrees whose growing end cannot matter are pruned (a word improvable at
    its fixed end stays improvable after any extension).
    """
    prune = LEFT_IMPROVABLE if side == "right" else RIGHT_IMPROVABLE
    stack = [((), None, None)]
    while stack:
        w, parent, x = stack.pop()
        verdict = cosets.verdict(w)
        if verdict == prune:
            continue
        state = start if x is None else step(parent, x)
        if verdict == CANONICAL:
            yield w, state
        if len(w) < max_len:
            for y in range(2 * rank):
                if side == "right":
                    if not w or y != w[-1] ^ 1:
                        stack.append((w + (y,), state, y))
                elif not w or y != w[0] ^ 1:
                    stack.append(((y,) + w, state, y))


def _algebraic_scan(rep, j, q, max_len, n):
    ring = _ring(rep.model, n, rep.d)
    ej, eq = rep.eigen(j), rep.eigen(q)
    gens = [_lift_matrix(ring, rep.letter_matrix(x), n) for x in range(2 * rep.rank)]
    start = (_lift_vector(ring, ej.attracting_hyperplane, n),
             _lift_vector(ring, ej.repelling_hyperplane, n))
    om_plus = _lift_vector(ring, eq.attracting_point, n)
    om_minus = _lift_vector(ring, eq.repelling_point, n)
    vecmat, dot, val = ring.vecmat, ring.dot, ring.val

    def step(state, x):
        g = gens[x]
        return vecmat(state[0], g), vecmat(state[1], g)

    cosets = DoubleCosets(rep.boundary[j], rep.boundary[q], same=(j == q))
    for w, (rp, rm) in _walk(cosets, rep.rank, max_len, "right", start, step):
        if not w and j == q:
            continue
        try:
            value = -(val(dot(rp, om_plus)) + val(dot(rm, om_minus))
                      - val(dot(rp, om_minus)) - val(dot(rm, om_plus)))
        except _LowPrecision:
            raise _LowPrecision(w) from None
        yield w, value


def _geometric_scan(rep, j, q, max_len, n):
    from .berkovich import AxisInterval, Ball, normalize_axis

    model = rep.model
    ring = _ring(model, n, rep.d)
    h, h_adj = normalize_axis(rep.boundary_image(j))
    gens = [_lift_matrix(ring, h_adj @ rep.letter_matrix(x) @ h, n) for x in range(2 * rep.rank)]
    if rep.boundary[j] == rep.boundary[q]:
        start = ([ring.lift(1), ring.lift(0)], [ring.lift(0), ring.lift(1)])
    else:
        eq = rep.eigen(q)
        start = (_lift_vector(ring, h_adj.apply(eq.attracting_point), n),
                 _lift_vector(ring, h_adj.apply(eq.repelling_point), n))
    matvec, val = ring.matvec, ring.val
    zero = model.zero

    def step(state, x):
        g = gens[x]
        return matvec(g, state[0]), matvec(g, state[1])

    cosets = DoubleCosets(rep.boundary[j], rep.boundary[q], same=(j == q))
    for w, (up, um) in _walk(cosets, rep.rank, max_len, "left", start, step):
        if not w and j == q:
            continue
        # axis coordinates: z = u0 / u1, projected to B(0, v(z))
        try:
            s_plus = val(up[0]) - val(up[1])
            s_minus = val(um[0]) - val(um[1])
        except _LowPrecision:
            raise _LowPrecision(w) from None
        if s_plus == s_minus:
            yield w, 0
            continue
        yield w, AxisInterval(Ball(zero, s_plus), Ball(zero, s_minus)).signed_measure


def _with_precision(scan, rep, j, q, max_len):
    n = _START_PRECISION
    limit = min(_MAX_PRECISION, rep.model.precision_cap)
    while True:
        try:
            return list(scan(rep, j, q, max_len, n))
        except _LowPrecision as exc:
            if 2 * n > limit:
                w = format_word(exc.args[0]) if exc.args else "?"
                # for transverse data this cannot happen, so blame the input
                raise DegeneratePairing(
                    f"j={j} q={q} w={w}: a pairing vanishes modulo pi^{n}; the boundary "
                    f"fixed points are not in general position") from None
            n *= 2


def _pairs(rep):
    m = len(rep.boundary)
    return [(j, q) for j in range(1, m + 1) for q in range(1, m + 1)]


def _check_geometric(rep):
    if rep.d != 2:
        raise DimensionError("the geometric pipeline needs d = 2")
    for j in range(1, len(rep.boundary) + 1):
        cls = classify_pgl2(rep.boundary_image(j))
        if cls is not Classification.HYPERBOLIC:
            raise NotHyperbolic(f"boundary {j} has {cls.value} image")


def _all_terms(rep, max_len, geometric=False):
    if geometric:
        _check_geometric(rep)
    scan = _geometric_scan if geometric else _algebraic_scan
    out = {}
    for j, q in _pairs(rep):
        for w, value in _with_precision(scan, rep, j, q, max_len):
            out[(j, q, w)] = value
    return out


def algebraic_terms(rep, max_len):
    """Every term up to max_len, zeros included: ``{(j, q, word): value}``."""
    return _all_terms(rep, max_len)


def _scan_report(rep, cutoff, window, geometric):
    cutoff = rep.cutoff if cutoff is None else cutoff
    window = rep.window if window is None else window
    if geometric:
        _check_geometric(rep)
    scan = _geometric_scan if geometric else _algebraic_scan
    left = lhs(rep)
    terms = []
    for j, q in _pairs(rep):
        for w, value in _with_precision(scan, rep, j, q, cutoff):
            if value:
                terms.append(TermRecord(j, q, w, value))
    terms.sort(key=TermRecord.sort_key)
    rhs = sum(t.value for t in terms)
    max_nonzero = max((len(t.word) for t in terms), default=-1)
    # the last `window` lengths scanned must be free of nonzero terms
    stabilized = cutoff - window >= max(max_nonzero, 0)
    if not stabilized:
        status = Status.PARTIAL
    elif rhs == left:
        status = Status.VERIFIED
    else:
        status = Status.MISMATCH
    return IdentityReport(lhs=left, rhs=rhs, terms=terms, max_len_scanned=max(cutoff, 0),
                          status=status, window=window, max_nonzero_len=max_nonzero)


def verify(rep, cutoff=None, window=None):
    """Scan all double cosets up to ``cutoff`` and compare both sides."""
    return _scan_report(rep, cutoff, window, geometric=False)
