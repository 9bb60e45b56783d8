"""Dense polynomials over F_p and the rational function field F_p(T).

Polynomials are tuples of ints in ``[0, p)``, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import re
from functools import total_ordering


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b, p):
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                for i in range(n))


def pneg(a, p):
    return tuple((-c) % p for c in a)


def psub(a, b, p):
    return padd(a, pneg(b, p), p)


def pscale(a, c, p):
    c %= p
    if c == 0:
        return ()
    return tuple(x * c % p for x in a)


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(c % p for c in out)


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for i, y in enumerate(b):
                rem[k + i] = (rem[k + i] - c * y) % p
    return trim(q), trim(rem)


def monic(a, p):
    if not a:
        return a
    return pscale(a, pow(a[-1], -1, p), p)


def pgcd(a, b, p):
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return monic(a, p)


def ord_t(a):
    """Order of vanishing at T = 0; ``None`` for the zero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    return None


def series_inverse(a, n, p):
    """First ``n`` coefficients of ``1/a`` for ``a(0) != 0``."""
    inv0 = pow(a[0], -1, p)
    out = [0] * n
    for k in range(n):
        s = 1 if k == 0 else 0
        for i in range(1, min(k, len(a) - 1) + 1):
            s -= a[i] * out[k - i]
        out[k] = s * inv0 % p
    return out


@total_ordering
class RatFunc:
    """Element of F_p(T), kept as a reduced fraction with monic denominator."""

    __slots__ = ("p", "num", "den")

    def __init__(self, num, den=(1,), p=2, _reduced=False):
        self.p = p
        num = trim(c % p for c in num)
        den = trim(c % p for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator in F_p(T)")
        if not _reduced:
            if not num:
                den = (1,)
            else:
                g = pgcd(num, den, p)
                if len(g) > 1:
                    num = pdivmod(num, g, p)[0]
                    den = pdivmod(den, g, p)[0]
                lead = pow(den[-1], -1, p)
                num, den = pscale(num, lead, p), pscale(den, lead, p)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c, p):
        return cls((c % p,), (1,), p, _reduced=True)

    @classmethod
    def monomial(cls, k, p):
        """T^k for any integer k."""
        if k >= 0:
            return cls((0,) * k + (1,), (1,), p, _reduced=True)
        return cls((1,), (0,) * (-k) + (1,), p, _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                return NotImplemented
            return other
        if isinstance(other, int):
            return RatFunc.const(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        return RatFunc(padd(pmul(self.num, other.den, p), pmul(other.num, self.den, p), p),
                       pmul(self.den, other.den, p), p)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num, self.p), self.den, self.p, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        return RatFunc(pmul(self.num, other.num, p), pmul(self.den, other.den, p), p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in F_p(T)")
        return RatFunc(self.den, self.num, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = RatFunc.const(1, self.p)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        # arbitrary but total; only used to make sorting deterministic
        return (self.p, self.den, self.num) < (other.p, other.den, other.num)

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def valuation(self):
        """ord_T; ``None`` for zero."""
        if not self.num:
            return None
        return ord_t(self.num) - ord_t(self.den)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r}, p={self.p})"


def format_poly(a):
    if not a:
        return "0"
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "T" if i == 1 else f"T^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)


def format_ratfunc(x):
    if x.den == (1,):
        return f"({format_poly(x.num)})" if len([c for c in x.num if c]) > 1 else format_poly(x.num)
    return f"({format_poly(x.num)})/({format_poly(x.den)})"


_TERM = re.compile(r"([+-]?)(\d*)(T(?:\^(\d+))?)?")


def parse_poly(text, p):
    """Parse ``1+2T+T^2`` (no spaces) into a coefficient tuple mod p."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, digits, tpart, exp = m.groups()
        if not digits and not tpart:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if tpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return trim(coeffs.get(i, 0) % p for i in range(deg + 1))


def parse_ratfunc(text, p):
    """Parse ``(1+2T+T^2)/(T^3)``, ``T^2``, ``-4`` into a :class:`RatFunc`."""
    text = text.strip()
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
    if split is None:
        return RatFunc(parse_poly(text, p), (1,), p)
    num = parse_poly(text[:split], p)
    den = parse_poly(text[split + 1:], p)
    if not den:
        raise ZeroDivisionError("zero denominator")
    return RatFunc(num, den, p)
