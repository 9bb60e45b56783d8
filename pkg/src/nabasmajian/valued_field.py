r"""Exact arithmetic in discretely valued fields.

Two concrete models of a non-Archimedean local field are provided:

* ``FieldModel.qp(p)``: the rationals with the ``p``-adic valuation, a dense
  subfield of :math:`\mathbb{Q}_p`;
* ``FieldModel.laurent(p)``: rational functions over :math:`\mathbb{F}_p`
  with the ``T``-adic valuation, a dense subfield of
  :math:`\mathbb{F}_p((T))`.

Elements of the dense subfield are :class:`Exact`.  Quantities that only
exist in the completion (roots found by Hensel lifting, and anything
computed from them) are :class:`Refinable`: they can be asked for their
canonical residue modulo :math:`\pi^N` for any ``N`` and never pretend to
know more than that.

Valuations are integers, normalised so that the uniformizer (``p`` or
``T``) has valuation 1, and ``log_v |x| = -v(x)``.  The residue field has
``p`` elements in both models.

>>> Q3 = FieldModel.qp(3)
>>> Q3("9/2").valuation()
2
>>> (Q3(1) / 3 + Q3(2) / 3).valuation()
0
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import _fpoly
from ._fpoly import RatFunc
from .errors import (DivisionByZero, ModelMismatch, NoSimpleSegment,
                     PrecisionExhausted, ZeroPolynomial)

INFINITY = math.inf
DEFAULT_PRECISION_CAP = 1 << 16


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp_int(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class Kind(str, Enum):
    QP = "qp"
    LAURENT = "laurent"


@dataclass(frozen=True)
class FieldModel:
    """A discretely valued field with residue field of prime order ``p``."""

    kind: Kind
    p: int
    precision_cap: int = field(default=DEFAULT_PRECISION_CAP, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")

    @classmethod
    def qp(cls, p, precision_cap=DEFAULT_PRECISION_CAP):
        return cls(Kind.QP, p, precision_cap)

    @classmethod
    def laurent(cls, p, precision_cap=DEFAULT_PRECISION_CAP):
        return cls(Kind.LAURENT, p, precision_cap)

    @property
    def residue_cardinality(self):
        return self.p

    def __str__(self):
        return f"{self.kind.value} {self.p}"

    # -- raw values: Fraction for QP, RatFunc for LAURENT -------------------

    def raw(self, x):
        if isinstance(x, FieldElement):
            if x.model != self:
                raise ModelMismatch(f"element of {x.model} used in {self}")
            if not x.is_exact:
                raise TypeError("refinable element has no exact value")
            return x.value
        if isinstance(x, str):
            return self.parse_raw(x)
        if self.kind is Kind.QP:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise ModelMismatch(f"cannot coerce {x!r} into {self}")
        if isinstance(x, RatFunc):
            if x.p != self.p:
                raise ModelMismatch(f"F_{x.p}(T) element used in {self}")
            return x
        if isinstance(x, int):
            return RatFunc.const(x, self.p)
        if isinstance(x, Fraction) and x.denominator % self.p:
            return RatFunc.const(x.numerator, self.p) / RatFunc.const(x.denominator, self.p)
        raise ModelMismatch(f"cannot coerce {x!r} into {self}")

    def __call__(self, x):
        return Exact(self, self.raw(x))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def uniformizer(self):
        return Exact(self, self.pi_power(1))

    def pi_power(self, k):
        """Raw value of pi^k (k may be negative)."""
        if self.kind is Kind.QP:
            return Fraction(self.p) ** k
        return RatFunc.monomial(k, self.p)

    def raw_valuation(self, r):
        if self.kind is Kind.QP:
            if r == 0:
                return INFINITY
            return _vp_int(r.numerator, self.p) - _vp_int(r.denominator, self.p)
        v = r.valuation()
        return INFINITY if v is None else v

    def truncate(self, r, n):
        """Canonical residue of ``r`` modulo pi^n.

        The result ``t`` satisfies ``v(r - t) >= n`` and depends only on the
        class of ``r`` modulo pi^n: for QP it is ``m / p^s`` with
        ``s = max(0, -v(r))`` and ``0 <= m < p^(n+s)``; for LAURENT it is the
        Laurent polynomial made of the T-adic expansion below degree ``n``.
        """
        v = self.raw_valuation(r)
        if v >= n:
            return self.raw(0)
        s = max(0, -v)
        p = self.p
        if self.kind is Kind.QP:
            mod = p ** (n + s)
            num, den = r.numerator * p ** s, r.denominator
            vd = _vp_int(den, p)
            num //= p ** vd
            den //= p ** vd
            m = num * pow(den, -1, mod) % mod
            return Fraction(m, p ** s)
        on = _fpoly.ord_t(r.num)
        od = _fpoly.ord_t(r.den)
        n0 = r.num[on:]
        d0 = r.den[od:]
        length = n - v
        series = _fpoly.pmul(n0, tuple(_fpoly.series_inverse(d0, length, p)), p)[:length]
        coeffs = (0,) * max(v, 0) + tuple(series)
        den = (0,) * s + (1,)
        return RatFunc(coeffs, den, p, _reduced=True)

    def residue_digits(self, r, n):
        """Integral residue modulo pi^n in machine form: an int for QP, a
        coefficient list of length ``n`` for LAURENT."""
        t = self.truncate(r, n)
        if self.kind is Kind.QP:
            if t.denominator != 1:
                raise ValueError("residue_digits needs an integral value")
            return t.numerator
        if t.den != (1,):
            raise ValueError("residue_digits needs an integral value")
        return list(t.num) + [0] * (n - len(t.num))

    # -- text syntax -------------------------------------------------------

    def parse_raw(self, text):
        text = text.strip()
        if self.kind is Kind.QP:
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad rational {text!r}") from exc
        return _fpoly.parse_ratfunc(text, self.p)

    def parse(self, text):
        return Exact(self, self.parse_raw(text))

    def format(self, r):
        if self.kind is Kind.QP:
            return str(r)
        return _fpoly.format_ratfunc(r)


def _element(model, x):
    if isinstance(x, FieldElement):
        if x.model != model:
            raise ModelMismatch(f"operands from {x.model} and {model}")
        return x
    return Exact(model, model.raw(x))


class FieldElement:
    """Common interface of :class:`Exact` and :class:`Refinable`."""

    __slots__ = ("model",)
    is_exact = False

    def valuation(self):
        raise NotImplementedError

    def approx(self, n):
        raise NotImplementedError

    def lower_bound(self):
        raise NotImplementedError

    def at_least(self, n):
        """True iff v(self) >= n; never needs more than precision n."""
        return self.model.raw_valuation(self.approx(n)) >= n

    def shifted_approx(self, n, k):
        """Canonical residue of ``self / pi^k`` modulo pi^n."""
        return self.approx(n + k) * self.model.pi_power(-k)

    def __add__(self, other):
        return arith("ADD", self, other)

    def __radd__(self, other):
        return arith("ADD", _element(self.model, other), self)

    def __sub__(self, other):
        return arith("ADD", self, arith("NEG", _element(self.model, other)))

    def __rsub__(self, other):
        return arith("ADD", _element(self.model, other), arith("NEG", self))

    def __mul__(self, other):
        return arith("MUL", self, other)

    def __rmul__(self, other):
        return arith("MUL", _element(self.model, other), self)

    def __truediv__(self, other):
        return arith("MUL", self, arith("INV", _element(self.model, other)))

    def __rtruediv__(self, other):
        return arith("MUL", _element(self.model, other), arith("INV", self))

    def __neg__(self):
        return arith("NEG", self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else arith("INV", self)
        out = self.model.one
        for _ in range(abs(k)):
            out = out * base
        return out


class Exact(FieldElement):
    """An element of the dense subfield, stored exactly in lowest terms."""

    __slots__ = ("value",)
    is_exact = True

    def __init__(self, model, value):
        self.model = model
        self.value = value

    def valuation(self):
        return self.model.raw_valuation(self.value)

    def lower_bound(self):
        return self.valuation()

    def approx(self, n):
        return self.model.truncate(self.value, n)

    def is_zero(self):
        return not self.value

    def __eq__(self, other):
        if isinstance(other, Exact):
            return self.model == other.model and self.value == other.value
        if isinstance(other, (int, Fraction, RatFunc)):
            try:
                return self.value == self.model.raw(other)
            except ModelMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.model, self.value))

    def __str__(self):
        return self.model.format(self.value)

    def __repr__(self):
        return f"Exact({self.model.format(self.value)!r}, {self.model})"


class Refinable(FieldElement):
    """An element of the completion known through its residues.

    ``generator(N)`` must return a raw value ``r`` with ``v(x - r) >= N``.
    ``lower`` is a proven lower bound on the valuation.  The highest
    precision computed so far is memoised; access is serialised by a lock so
    concurrent queries see one consistent memo.
    """

    __slots__ = ("_gen", "_lower", "_memo", "_memo_prec", "_val", "_lock", "label")

    def __init__(self, model, generator, lower, label=None):
        self.model = model
        self._gen = generator
        self._lower = lower
        self._memo = None
        self._memo_prec = -INFINITY
        self._val = None
        self._lock = threading.RLock()
        self.label = label

    def lower_bound(self):
        return self._val if self._val is not None else self._lower

    def approx(self, n):
        with self._lock:
            if n <= self._memo_prec:
                return self.model.truncate(self._memo, n)
            if n <= self.lower_bound():
                return self.model.raw(0)
            r = self.model.truncate(self._gen(n), n)
            self._memo, self._memo_prec = r, n
            return r

    def known_valuation(self):
        return self._val

    def valuation(self):
        if self._val is not None:
            return self._val
        n = 8
        while n <= self._lower:
            n *= 2
        while True:
            if n > self.model.precision_cap:
                raise PrecisionExhausted(
                    f"no nonzero residue up to precision {self.model.precision_cap}"
                    + (f" for {self.label}" if self.label else ""))
            v = self.model.raw_valuation(self.approx(n))
            if v < n:
                self._val = v
                return v
            n *= 2

    def __repr__(self):
        shown = self.model.format(self.approx(8)) if self._memo is not None else "?"
        return f"Refinable(~{shown} mod pi^8, {self.model})"


def valuation(x):
    """v(x) as an int, or ``INFINITY`` for exact zero."""
    return x.valuation()


def _exact_zero(x):
    return x.is_exact and not x.value


def arith(op, x, y=None):
    """Apply ``op`` in ``{"ADD", "MUL", "NEG", "INV"}``.

    Exact operands give exact results.  Otherwise the result is refinable,
    with its generator requesting enough precision from each operand that
    the residues it returns are always correct.
    """
    if not isinstance(x, FieldElement):
        raise TypeError("first operand must be a FieldElement")
    model = x.model
    if op in ("ADD", "MUL"):
        if y is None:
            raise TypeError(f"{op} needs two operands")
        y = _element(model, y)
    if op == "NEG":
        if x.is_exact:
            return Exact(model, -x.value)
        return Refinable(model, lambda n: -x.approx(n), x.lower_bound())
    if op == "INV":
        if x.is_exact:
            if not x.value:
                raise DivisionByZero("inverse of exact zero")
            return Exact(model, 1 / x.value)
        e = x.valuation()

        def gen(n):
            r = x.approx(max(n + 2 * e, e + 1))
            return 1 / r

        out = Refinable(model, gen, -e)
        out._val = -e
        return out
    if op == "ADD":
        if x.is_exact and y.is_exact:
            return Exact(model, x.value + y.value)
        if _exact_zero(x):
            return y
        if _exact_zero(y):
            return x
        return Refinable(model, lambda n: x.approx(n) + y.approx(n),
                         min(x.lower_bound(), y.lower_bound()))
    if op == "MUL":
        if x.is_exact and y.is_exact:
            return Exact(model, x.value * y.value)
        if _exact_zero(x) or _exact_zero(y):
            return model.zero
        if y.is_exact:
            x, y = y, x
        if x.is_exact:
            c, vc = x.value, x.valuation()
            out = Refinable(model, lambda n: c * y.approx(n - vc), vc + y.lower_bound())
            if y.known_valuation() is not None:
                out._val = vc + y.known_valuation()
            return out

        def gen(n):
            lx, ly = x.lower_bound(), y.lower_bound()
            return x.approx(max(n - ly, lx)) * y.approx(max(n - lx, ly))

        return Refinable(model, gen, x.lower_bound() + y.lower_bound())
    raise ValueError(f"unknown operation {op!r}")


def argmin_valuation(elements):
    """Index of an element of minimal valuation, refining all simultaneously.

    Elements that are (possibly) zero are never resolved individually, so a
    list containing hidden zeros still terminates as long as one entry is
    nonzero.  Raises :class:`PrecisionExhausted` if nothing nonzero shows up.
    """
    if not elements:
        raise ValueError("empty sequence")
    model = elements[0].model
    best = None
    for i, x in enumerate(elements):
        if x.is_exact and x.value:
            v = x.valuation()
            if best is None or v < best[0]:
                best = (v, i)
    n = 8
    while True:
        cand = best
        for i, x in enumerate(elements):
            if x.is_exact:
                continue
            if x.known_valuation() is not None:
                v = x.known_valuation()
            else:
                v = model.raw_valuation(x.approx(n))
                if v >= n:
                    continue
            if cand is None or v < cand[0] or (v == cand[0] and i < cand[1]):
                cand = (v, i)
        if cand is not None and cand[0] < n:
            return cand[1]
        if all(x.is_exact for x in elements):
            if cand is None:
                raise PrecisionExhausted("all entries are exactly zero")
            return cand[1]
        if n > model.precision_cap:
            raise PrecisionExhausted("all entries vanish up to the precision cap")
        n *= 2


def min_valuation(elements):
    i = argmin_valuation(elements)
    return elements[i].valuation()


# -- polynomials -------------------------------------------------------------

def _coefficients(coeffs, model):
    if model is None:
        for c in coeffs:
            if isinstance(c, FieldElement):
                model = c.model
                break
        else:
            raise TypeError("model required for raw coefficients")
    return [_element(model, c) for c in coeffs], model


def newton_segments(coeffs, model=None):
    """Lower convex hull of ``(i, v(c_i))`` as ``(i_start, i_end, slope)``.

    ``coeffs[i]`` is the coefficient of lambda^i.
    """
    coeffs, model = _coefficients(coeffs, model)
    pts = [(i, c.valuation()) for i, c in enumerate(coeffs)]
    pts = [(i, v) for i, v in pts if v != INFINITY]
    if not pts:
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    if pts[0][0] != 0:
        raise ValueError("constant coefficient is zero; strip zero roots first")
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [(a[0], b[0], Fraction(b[1] - a[1], b[0] - a[0])) for a, b in zip(hull, hull[1:])]


def newton_polygon(coeffs, model=None):
    """Root valuations with multiplicities, ascending.

    >>> Q2 = FieldModel.qp(2)
    >>> newton_polygon([Q2(8), Q2(-6), Q2(1)])
    [(Fraction(1, 1), 1), (Fraction(2, 1), 1)]
    """
    segs = newton_segments(coeffs, model)
    out = sorted((-slope, end - start) for start, end, slope in segs)
    return out


def _poly_eval_trunc(coeffs, x, n, model):
    acc = model.raw(0)
    for c in reversed(coeffs):
        acc = model.truncate(acc * x + c, n)
    return acc


def hensel_root(coeffs, valuation, residue=None, model=None, label=None):
    """Root of the given valuation of ``sum coeffs[i] lambda^i``, as a
    :class:`Refinable`.

    The Newton polygon segment with root valuation ``valuation`` must have
    lattice length 1; then the root lies in the field and is refined by
    Newton iteration.  ``residue``, if given, is checked against the unique
    simple root of the reduced segment polynomial (the residue of
    ``root / pi^valuation`` modulo pi).
    """
    coeffs, model = _coefficients(coeffs, model)
    if any(not c.is_exact for c in coeffs):
        raise TypeError("hensel_root needs exact coefficients")
    for start, end, slope in newton_segments(coeffs, model):
        if -slope == valuation:
            break
    else:
        raise NoSimpleSegment(f"no Newton polygon segment with root valuation {valuation}")
    if end - start != 1:
        raise NoSimpleSegment(
            f"segment of root valuation {valuation} has lattice length {end - start}")
    e = int(-slope)
    shift = coeffs[start].valuation() + e * start
    scaled = [c.value * model.pi_power(e * i - shift) for i, c in enumerate(coeffs)]
    dscaled = [i * scaled[i] for i in range(1, len(scaled))]
    c0 = model.truncate(scaled[start], 1)
    c1 = model.truncate(scaled[start + 1], 1)
    r0 = model.truncate(-c0 / c1, 1)
    if residue is not None and model.truncate(model.raw(residue) - r0, 1):
        raise ValueError(f"{residue} is not the simple root of the reduced segment")
    state = {"u": r0, "prec": 1}

    def gen(n):
        k = n - e
        if k <= 0:
            return model.raw(0)
        while state["prec"] < k:
            m = 2 * state["prec"]
            u = state["u"]
            num = _poly_eval_trunc([model.truncate(c, m) for c in scaled], u, m, model)
            den = _poly_eval_trunc([model.truncate(c, m) for c in dscaled], u, m, model)
            state["u"] = model.truncate(u - num * model.truncate(1 / den, m), m)
            state["prec"] = m
        return model.truncate(state["u"], k) * model.pi_power(e)

    root = Refinable(model, gen, e, label=label)
    root._val = e
    return root


def extreme_root(coeffs, top=True, model=None):
    """Root of maximal (``top``) or minimal absolute value."""
    vals = newton_polygon(coeffs, model)
    v = vals[0][0] if top else vals[-1][0]
    return hensel_root(coeffs, v, model=model)
