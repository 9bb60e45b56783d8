"""Random inputs shared by the property tests and the acceptance suite."""

import random
from fractions import Fraction

from nabasmajian import FieldModel, Kind, ProjMatrix, ProjPoint
from nabasmajian._fpoly import RatFunc

MODELS = [FieldModel.qp(2), FieldModel.qp(3), FieldModel.qp(5), FieldModel.laurent(5)]


def rand_raw(rng, model, spread=3):
    """A random nonzero raw value with valuation roughly in [-spread, spread]."""
    p = model.p
    if model.kind is Kind.QP:
        while True:
            x = Fraction(rng.randint(-60, 60), rng.randint(1, 30))
            if x:
                return x * Fraction(p) ** rng.randint(-spread, spread)
    while True:
        num = [rng.randrange(p) for _ in range(rng.randint(1, 4))]
        den = [rng.randrange(p) for _ in range(rng.randint(1, 3))]
        if any(num) and any(den):
            return RatFunc(num, den, p) * RatFunc.monomial(rng.randint(-spread, spread), p)


def rand_elem(rng, model, spread=3):
    return model(rand_raw(rng, model, spread))


def rand_point(rng, model, d=2):
    while True:
        coords = [rand_raw(rng, model) if rng.random() > 0.15 else model.raw(0) for _ in range(d)]
        if any(coords):
            return ProjPoint(model, coords)


def rand_matrix(rng, model, d=2):
    while True:
        rows = [[rand_raw(rng, model) if rng.random() > 0.1 else model.raw(0) for _ in range(d)]
                for _ in range(d)]
        M = ProjMatrix(model, rows)
        if not M.det().is_zero():
            return M


def rng_for(name):
    return random.Random(f"nabasmajian-{name}")


def vanishes(x, n=64):
    """Exactly zero, or zero to precision n for a refinable value."""
    return x.is_zero() if x.is_exact else x.at_least(n)


def seeded_randoms():
    """Hypothesis strategy for a seeded Random; draws are not recorded."""
    from hypothesis import strategies as st
    return st.integers(0, 2**32).map(random.Random)
