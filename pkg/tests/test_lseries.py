import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from congruence_lab.arith import CoefficientField, FieldElement, FiniteField
from congruence_lab.lseries import (EulerRatioSeries, LPolynomial, check_lemma32_decomposition,
                                    criterion_eps0, criterion_eps_pm1, criterion_orders,
                                    factor_lpoly, lpoly_inverse_coeffs, reconvolve,
                                    series_zero_list, shimura_coefficients, twist_character,
                                    twist_value, zero_coefficient_exponents)

K = Fraction(9, 2)


def ints(cs):
    return [int(c) for c in cs]


def test_inverse_of_square_closed_form():
    # L_7(-2, X) = 1 + 2X + 7X^2 = (1 + X)^2 mod 3
    L7 = LPolynomial.from_weight(7, -2, 2, 3)
    got = ints(lpoly_inverse_coeffs(L7, 1, None, 0, 40))
    assert got == [((-1) ** m * (m + 1)) % 3 for m in range(41)]


def test_fibonacci_convolution():
    # 1/L_5(1, X) = 1/(1 - X + 5X^2) = 1/(1 - X - X^2) mod 3: Fibonacci residues
    L5 = LPolynomial.from_weight(5, 1, 2, 3)
    fib = [1, 1]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    assert ints(lpoly_inverse_coeffs(L5, 1, None, 0, 19)) == [x % 3 for x in fib]
    conv = [sum(fib[i] * fib[m - 1 - i] for i in range(m)) % 3 if m else 0 for m in range(12)]
    assert ints(lpoly_inverse_coeffs(L5, 2, None, 1, 11)) == conv


def test_zero_exponents_helper():
    F = FiniteField(5)
    assert zero_coefficient_exponents([F(0), F(1), F(0)], 3) == [0, 2]


def test_weight9half_factorization():
    fld = CoefficientField(433, (432, 5))
    L = LPolynomial.from_half_integral(3, -87, K, 433)
    a, b = factor_lpoly(L, fld)
    E = fld.ext
    assert {a, b} == {FieldElement(E, 126, 94), FieldElement(E, 220, 339)}
    assert a + b == E(-87) and a * b == E(3 ** 7)


def test_weight9half_orders():
    fld = CoefficientField(433, (432, 5))
    rep = criterion_orders(-87, 3, K, 1, 433, fld=fld)
    assert (rep.ord_ratio, rep.ord_target[1], rep.ord_target[-1]) == (217, 62, 434)
    assert rep.solutions == {1: [], -1: []}


def test_prime7_lists_with_faithful_lead():
    """Closed computation with lead 7^7 (the printed lists differ; see acceptance)."""
    L = LPolynomial.from_half_integral(7, -181, K, 433)
    assert int(L.lead) == pow(7, 7, 433) == 410
    got = [series_zero_list(L, e, tw, sh) for e, sh in ((1, 0), (2, 1))
           for tw in (None, 343, -343)]
    assert got == [[433, 867], [165, 599], [253, 687], [0, 62, 280, 838, 966], [0, 301], [0, 978]]


def test_prime7_printed_lists_need_prime5_lead():
    """Diagnostic: lead 5^7 mod 433 reproduces every printed prime-7 list."""
    F = FiniteField(433)
    L = LPolynomial(7, F(-181), F(pow(5, 7, 433)))
    got = [series_zero_list(L, e, tw, sh) for e, sh in ((1, 0), (2, 1))
           for tw in (None, 343, -343)]
    assert got == [[433, 867], [206, 640], [60, 494, 928], [0, 444, 850], [0, 142, 661],
                   [0, 100, 969]]


def _direct(L, twist, m_max):
    return [not x for x in lpoly_inverse_coeffs(L, 1, twist, 0, m_max)]


@pytest.mark.parametrize("ell,p,k,r", [(13, 5, Fraction(11, 2), 11), (11, 7, Fraction(9, 2), 1),
                                       (7, 5, Fraction(3, 2), 23), (433, 3, K, 1)])
def test_criteria_match_direct_vanishing(ell, p, k, r):
    F = FiniteField(ell)
    lams = range(ell) if ell < 50 else [-87, 0, 1, 5, 200]
    for lam in lams:
        L = LPolynomial.from_half_integral(p, lam, k, ell)
        z0 = _direct(L, None, 500)
        for m in range(501):
            assert criterion_eps0(lam, p, k, m, ell) == z0[m], (lam, m)
        for eps in (1, -1):
            c = int(twist_value(p, k, r, eps, F))
            z = _direct(L, c, 500)
            for m in range(501):
                assert criterion_eps_pm1(lam, p, k, r, eps, m, ell) == z[m], (lam, eps, m)


def test_mutual_exclusion_sweep():
    rng = random.Random(3)
    ells = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    for _ in range(400):
        ell = rng.choice(ells)
        p = rng.choice([q for q in (3, 5, 7, 11, 13, 17, 19, 23, 29) if q != ell])
        k = Fraction(2 * rng.randrange(1, 12) + 1, 2)
        r = rng.randrange(24)
        lam = rng.randrange(ell)
        both = criterion_eps_pm1(lam, p, k, r, 1, 1, ell) and criterion_eps_pm1(lam, p, k, r, -1, 1, ell)
        assert not both, (ell, p, k, r, lam)


def test_twist_character_parity():
    tw = twist_character(Fraction(9, 2), 1)
    assert [tw(d) for d in (1, 3, 5)] == [1, 1, 1]
    tw = twist_character(Fraction(9, 2), 2)
    assert [tw(d) for d in (1, 3, 5)] == [1, -1, 1]


def test_shimura_reconvolution_round_trip(f11):
    eig = {p: f11[p] for p in range(2, 400) if all(p % q for q in range(2, int(p ** 0.5) + 1))}
    tw = twist_character(Fraction(3, 2), 0, D=5)
    b = shimura_coefficients(eig, 2, 11, Fraction(3, 2), tw, 300)
    a = reconvolve(b, tw, Fraction(3, 2))
    assert a[1:] == [f11[n] for n in range(1, 301)]


def test_decomposition_decomposition_on_generalized_eigenform(g_mod3):
    rep = check_lemma32_decomposition(g_mod3, 5, 1, 1, 1000, 3)
    assert rep.holds and rep.precondition


def test_decomposition_fault_injection(g_mod3):
    bad = g_mod3.with_coeffs(tuple(v + (1 if i == 499 else 0) for i, v in enumerate(g_mod3.coeffs)))
    rep = check_lemma32_decomposition(bad, 5, 1, 1, 1000, 3)
    assert not rep.holds and rep.first_violation == 500


def test_euler_ratio_multiplicative():
    F = 13
    L5 = LPolynomial.from_weight(5, 3, 2, F)
    L7 = LPolynomial.from_weight(7, 4, 2, F)
    s = EulerRatioSeries({5: (0, L5, None), 7: (1, L7, None)})
    assert s.coefficient(1) == 0         # t_7 = 1 shifts by 7
    assert s.coefficient(7) == lpoly_inverse_coeffs(L7, 2, None, 1, 1)[1]
    assert s.coefficient(5 * 7) == \
        lpoly_inverse_coeffs(L5, 1, None, 0, 1)[1] * lpoly_inverse_coeffs(L7, 2, None, 1, 1)[1]
    assert s.coefficient(11) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12), st.integers(1, 3), st.integers(0, 3))
def test_inverse_times_lpoly_is_shift(lam, e, shift):
    L = LPolynomial.from_weight(5, lam, 4, 13)
    cs = lpoly_inverse_coeffs(L, e, None, shift, 30)
    F = L.field
    Le = [F.one]
    for _ in range(e):
        nxt = [F.zero] * (len(Le) + 2)
        for i, a in enumerate(Le):
            for j, b in enumerate(L.coefficients()):
                nxt[i + j] = nxt[i + j] + a * b
        Le = nxt
    prod = [sum((Le[i] * cs[m - i] for i in range(min(m, len(Le) - 1) + 1)), F.zero)
            for m in range(31)]
    assert prod == [F.one if m == shift else F.zero for m in range(31)]
