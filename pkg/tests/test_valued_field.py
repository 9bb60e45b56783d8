import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nabasmajian import FieldModel, INFINITY, arith, hensel_root, newton_polygon, valuation
from nabasmajian._fpoly import RatFunc, parse_ratfunc
from nabasmajian.errors import (DivisionByZero, ModelMismatch, NoSimpleSegment,
                                PrecisionExhausted, ZeroPolynomial)
from nabasmajian.valued_field import Refinable, argmin_valuation, newton_segments

PRIMES = [2, 3, 5, 7]


def vp(n, p):
    # independent p-adic valuation of a nonzero rational
    n = Fraction(n)
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# -- models and coercion -------------------------------------------------------

def test_model_requires_prime():
    with pytest.raises(ValueError):
        FieldModel.qp(6)
    assert FieldModel.laurent(5).residue_cardinality == 5


def test_model_mismatch_is_reported(Q2, Q3):
    with pytest.raises(ModelMismatch):
        Q2(1) + Q3(1)


def test_text_syntax(L5, Q3):
    assert Q3.parse("5/2").value == Fraction(5, 2)
    x = L5.parse("(1+2T+T^2)/(T^3)")
    assert x.valuation() == -3
    assert L5.parse(L5.format(x.value)) == x
    assert L5.parse("6T") == L5.parse("T")


# -- valuation examples --------------------------------------------------------

def test_valuation_examples(Q3, L5):
    assert valuation(Q3(Fraction(9, 2))) == 2
    assert valuation(Q3(0)) == INFINITY
    t2 = parse_ratfunc("T^2", 5) / parse_ratfunc("1+T", 5)
    assert valuation(L5(t2)) == 2


def test_arith_examples(Q2, Q3):
    s = arith("ADD", Q3(Fraction(1, 3)), Q3(Fraction(2, 3)))
    assert s == 1 and s.valuation() == 0
    s = arith("ADD", Q2(2), Q2(2))
    assert s == 4 and s.valuation() == 2
    m = arith("MUL", Q3(Fraction(9, 2)), Q3(Fraction(2, 3)))
    assert m == 3 and m.valuation() == 1
    with pytest.raises(DivisionByZero):
        arith("INV", Q3(0))


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(p=st.sampled_from(PRIMES), x=rationals, y=rationals)
def test_qp_valuation_laws(p, x, y):
    K = FieldModel.qp(p)
    a, b = K(x), K(y)
    if x:
        assert a.valuation() == vp(x, p)
    if x and y:
        assert (a * b).valuation() == a.valuation() + b.valuation()
        if x + y:
            assert (a + b).valuation() >= min(a.valuation(), b.valuation())
            if a.valuation() != b.valuation():
                assert (a + b).valuation() == min(a.valuation(), b.valuation())


polys = st.lists(st.integers(0, 4), min_size=1, max_size=6)


@given(n1=polys, d1=polys, n2=polys, d2=polys)
def test_laurent_valuation_laws(n1, d1, n2, d2):
    K = FieldModel.laurent(5)
    if not any(d1) or not any(d2) or not any(n1) or not any(n2):
        return
    a, b = K(RatFunc(n1, d1, 5)), K(RatFunc(n2, d2, 5))
    assert (a * b).valuation() == a.valuation() + b.valuation()
    s = a + b
    if not s.is_zero():
        assert s.valuation() >= min(a.valuation(), b.valuation())
        if a.valuation() != b.valuation():
            assert s.valuation() == min(a.valuation(), b.valuation())


@given(p=st.sampled_from(PRIMES), x=rationals, n=st.integers(-5, 30))
def test_truncate_is_a_residue(p, x, n):
    K = FieldModel.qp(p)
    t = K.truncate(Fraction(x), n)
    assert K.raw_valuation(Fraction(x) - t) >= n
    # canonical: depends only on the class modulo p^n
    assert K.truncate(Fraction(x) + Fraction(p) ** max(n, 0) * 7, n) == t or n < 0


# -- refinable elements --------------------------------------------------------

def _series_sqrt_of_7_in_q3():
    # 7 = 1 mod 3 has a 3-adic square root; refine it independently by brute force
    K = FieldModel.qp(3)

    def gen(n):
        r = 1
        for k in range(1, max(n, 1)):
            mod = 3 ** (k + 1)
            while (r * r - 7) % mod:
                r += 3 ** k
        return Fraction(r)

    return K, Refinable(K, gen, 0)


def test_refinable_coherence_and_arith():
    K, r = _series_sqrt_of_7_in_q3()
    for n in (1, 3, 9, 20):
        assert K.raw_valuation(r.approx(20) - r.approx(n)) >= n
    sq = r * r
    assert K.raw_valuation(sq.approx(30) - 7) >= 30
    inv = 1 / r
    assert K.raw_valuation((inv * r).approx(25) - 1) >= 25
    assert (sq - 7).at_least(40)
    assert (sq - 8).valuation() == 0


def test_hidden_zero_exhausts_precision():
    K = FieldModel.qp(3, precision_cap=64)
    z = Refinable(K, lambda n: Fraction(0), 0)
    with pytest.raises(PrecisionExhausted):
        z.valuation()
    # argmin skips a hidden zero as long as something is nonzero
    assert argmin_valuation([z, K(9)]) == 1


def test_concurrent_queries_agree():
    K, r = _series_sqrt_of_7_in_q3()
    results = {}

    def worker(n):
        results[n] = r.approx(n)

    threads = [threading.Thread(target=worker, args=(n,)) for n in (6, 12, 24, 18, 3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    top = r.approx(24)
    for n, x in results.items():
        assert K.raw_valuation(x - top) >= n


# -- Newton polygons and Hensel ----------------------------------------------

def test_newton_polygon_examples(Q2, Q3):
    assert newton_polygon([Q2(8), Q2(-6), Q2(1)]) == [(1, 1), (2, 1)]
    assert newton_polygon([Q3(81), Q3(-50), Q3(1)]) == [(0, 1), (4, 1)]
    assert newton_polygon([Q3(1), Q3(0), Q3(1)]) == [(0, 2)]
    with pytest.raises(ZeroPolynomial):
        newton_polygon([Q3(0), Q3(0)])


def test_hensel_examples(Q2, Q3):
    root = hensel_root([Q2(8), Q2(-6), Q2(1)], 1)
    assert root.valuation() == 1
    # residues of the root 2 modulo 2, 4, 16
    assert [Q2.truncate(root.approx(n), n) for n in (1, 2, 4)] == [0, 2, 2]
    unit = hensel_root([Q3(81), Q3(-50), Q3(1)], 0, residue=2)
    assert unit.valuation() == 0 and Q3.truncate(unit.approx(1), 1) == 2
    with pytest.raises(NoSimpleSegment):
        hensel_root([Q3(1), Q3(0), Q3(1)], 0)


def _poly_from_roots(model, roots):
    coeffs = [model.raw(1)]
    for r in roots:
        nxt = [model.raw(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - r * c
        coeffs = nxt
    return [model(c) for c in coeffs]


@given(p=st.sampled_from([2, 3, 5]),
       data=st.lists(st.tuples(st.integers(-3, 4), st.integers(1, 40)), min_size=1, max_size=5))
def test_newton_polygon_matches_factorization(p, data):
    K = FieldModel.qp(p)
    roots = []
    for a, u in data:
        if u % p == 0:
            u += 1
        roots.append(Fraction(p) ** a * u)
    got = newton_polygon(_poly_from_roots(K, roots))
    want = {}
    for a, _ in data:
        want[a] = want.get(a, 0) + 1
    assert got == sorted((Fraction(a), m) for a, m in want.items())
    # slopes increase along the hull, so root valuations decrease
    slopes = [s for _, _, s in newton_segments(_poly_from_roots(K, roots))]
    assert slopes == sorted(-Fraction(a) for a in want)


@given(p=st.sampled_from([2, 3, 5]), a=st.integers(-3, 3), gap=st.integers(1, 4),
       u=st.integers(1, 50), w=st.integers(1, 50), n=st.integers(1, 60))
def test_hensel_root_is_a_root(p, a, gap, u, w, n):
    K = FieldModel.qp(p)
    u += (u % p == 0)
    w += (w % p == 0)
    r1, r2 = Fraction(p) ** a * u, Fraction(p) ** (a + gap) * w
    f = _poly_from_roots(K, [r1, r2])
    for v, want in ((a, r1), (a + gap, r2)):
        root = hensel_root(f, v)
        assert root.valuation() == v
        assert K.raw_valuation(root.approx(n) - want) >= n
        # f(root) vanishes to the queried precision
        val = f[0] + f[1] * root + f[2] * root * root
        assert val.at_least(n)


def test_hensel_over_laurent(L5):
    T = RatFunc.monomial(1, 5)
    r1, r2 = T * (1 + T), T ** 3 * 2
    f = _poly_from_roots(L5, [r1, r2])
    root = hensel_root(f, 1)
    assert L5.raw_valuation(root.approx(30) - r1) >= 30
