import cmath
import random

import pytest
from hypothesis import given, settings, strategies as st

from congruence_lab.multiplier import (I, MINUS_I, S, T, RootOfUnity, UnimodularMatrix,
                                       cocycle_sigma, eta_multiplier, eta_numeric,
                                       theta_multiplier)


def random_sl2(rng, bound=60, c_mod=1):
    while True:
        c = rng.randrange(-bound, bound) * c_mod
        d = rng.randrange(-bound, bound)
        if c == 0 and d not in (1, -1):
            continue
        from math import gcd
        if gcd(c, d) != 1:
            continue
        # solve a d - b c = 1
        if c == 0:
            return UnimodularMatrix(d, rng.randrange(-9, 9), 0, d)
        a = pow(d, -1, abs(c)) if abs(c) > 1 else 0
        if abs(c) == 1:
            a = 0 if d == 0 else rng.randrange(-5, 5)
        b_num = a * d - 1
        if b_num % c:
            continue
        return UnimodularMatrix(a, b_num // c, c, d)


def test_eta_generators():
    assert eta_multiplier(T) == RootOfUnity(1, 24)
    # eta(-1/tau) = sqrt(-i tau) eta(tau) = e(-1/8) tau^(1/2) eta(tau)
    assert eta_multiplier(S) == RootOfUnity(-3, 24)
    assert eta_multiplier(I) == RootOfUnity(0, 24)
    assert eta_multiplier(MINUS_I) == RootOfUnity(-6, 24)


def test_theta_example():
    # (8/3) = -1 and eps_3 = i, so v = (-1)(-i) = i
    assert theta_multiplier(UnimodularMatrix(3, 1, 8, 3)) == RootOfUnity(2, 8)
    with pytest.raises(ValueError):
        theta_multiplier(S)


def test_eta_cocycle_identity_1000_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        g, h = random_sl2(rng), random_sl2(rng)
        lhs = eta_multiplier(g) * eta_multiplier(h)
        rhs = eta_multiplier(g @ h) * cocycle_sigma(g, h)
        assert lhs == rhs, (g, h)


def test_theta_cocycle_identity():
    rng = random.Random(11)
    for _ in range(500):
        g, h = random_sl2(rng, 30, 4), random_sl2(rng, 30, 4)
        assert theta_multiplier(g) * theta_multiplier(h) == \
            theta_multiplier(g @ h) * cocycle_sigma(g, h)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_eta_transformation_numeric(seed):
    rng = random.Random(seed)
    g = random_sl2(rng, 6)
    tau = complex(0.13, 1.05)
    lhs = eta_numeric(g.act(tau), 400)
    z = g.c * tau + g.d
    rhs = eta_multiplier(g).to_complex() * cmath.sqrt(z) * eta_numeric(tau, 400)
    if abs(g.act(tau).imag) < 0.02:
        return
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))
