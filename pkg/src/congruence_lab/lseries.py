"""
L-polynomials 1 - lambda X + a X^2 over finite fields.

The coefficients of X^t (1 - c X) / L^e decide congruences at prime powers;
this module computes them, factors L, and evaluates the closed-form
criteria that say when such a coefficient vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .arith import (ArithmeticError_, CoefficientField, FieldElement, FiniteField,
                    default_extension_poly, factorint, kronecker_symbol, multiplicative_order)
from .qseries import FourierExpansion, hecke_multiplicative_coefficients


def _base_field(fld) -> FiniteField:
    if isinstance(fld, FiniteField):
        return fld.prime_field()
    if isinstance(fld, CoefficientField):
        return fld.base
    return FiniteField(int(fld))


def _ext_field(fld, ext_poly=None) -> FiniteField:
    if isinstance(fld, FiniteField) and fld.degree == 2 and ext_poly is None:
        return fld
    if ext_poly is not None:
        return FiniteField(_base_field(fld).p, tuple(ext_poly))
    if isinstance(fld, CoefficientField):
        return fld.extension_field()
    p = _base_field(fld).p
    return FiniteField(p, default_extension_poly(p))


@dataclass
class LPolynomial:
    """1 - lam X + lead X^2 over F_l (lead = chi(p) p^(w-1))."""
    p: int
    lam: FieldElement
    lead: FieldElement
    roots: Optional[tuple] = None

    @classmethod
    def from_weight(cls, p: int, lam, weight: int, fld, chi_p: int = 1) -> "LPolynomial":
        """Integral weight w: lead = chi(p) p^(w-1)."""
        F = _base_field(fld) if not isinstance(lam, FieldElement) else lam.field
        return cls(p, F(lam), F(chi_p * pow(p, weight - 1, F.p)))

    @classmethod
    def from_half_integral(cls, p: int, lam, k: Fraction, fld, chi_p: int = 1):
        """Shimura-lift normalization: lead = chi(p)^2 p^(2k-2)."""
        k = Fraction(k)
        F = _base_field(fld) if not isinstance(lam, FieldElement) else lam.field
        return cls(p, F(lam), F(chi_p * chi_p * pow(p, int(2 * k - 2), F.p)))

    @property
    def field(self) -> FiniteField:
        return self.lam.field

    def coefficients(self) -> list:
        F = self.field
        return [F.one, -self.lam, self.lead]

    def is_repeated(self) -> bool:
        return self.lam * self.lam == self.lead * 4

    def __repr__(self):
        return f"L_{self.p}({self.lam}, X) = 1 - ({self.lam})X + ({self.lead})X^2"


def lpoly_inverse_coeffs(L: LPolynomial, e: int = 1, twist=None, shift: int = 0,
                         m_max: int = 10) -> list:
    """
    Coefficients of X^shift (1 - twist X) / L^e at X^0 .. X^m_max, by the
    linear recurrence that L^e imposes.
    """
    if e < 1:
        raise ValueError("power e must be positive")
    if m_max < 0:
        return []
    F = L.field
    # coefficients of L^e
    Le = [F.one]
    for _ in range(e):
        nxt = [F.zero] * (len(Le) + 2)
        for i, a in enumerate(Le):
            for j, b in enumerate(L.coefficients()):
                nxt[i + j] = nxt[i + j] + a * b
        Le = nxt
    n = m_max + 1
    inv = [F.zero] * n
    for m in range(n):
        acc = F.one if m == 0 else F.zero
        for i in range(1, min(m, len(Le) - 1) + 1):
            if Le[i]:
                acc = acc - Le[i] * inv[m - i]
        inv[m] = acc
    if twist is not None:
        c = F(twist) if not isinstance(twist, FieldElement) else twist
        tw = [inv[m] - (c * inv[m - 1] if m else F.zero) for m in range(n)]
    else:
        tw = inv
    return [F.zero] * min(shift, n) + tw[:max(0, n - shift)]


def zero_coefficient_exponents(coeffs, bound: Optional[int] = None) -> list:
    """Exponents m < bound whose coefficient vanishes."""
    bound = len(coeffs) if bound is None else min(bound, len(coeffs))
    return [m for m in range(bound) if not coeffs[m]]


def series_zero_list(L: LPolynomial, e: int, twist, shift: int, bound: int = 1000) -> list:
    return zero_coefficient_exponents(lpoly_inverse_coeffs(L, e, twist, shift, bound - 1), bound)


def factor_lpoly(L: LPolynomial, fld=None, ext_poly=None) -> tuple:
    """
    (alpha, beta) with L = (1 - alpha X)(1 - beta X): the roots of
    Y^2 - lam Y + lead.  The quadratic extension is built only if needed.
    """
    F = L.field
    lam, lead = L.lam, L.lead
    if F.p == 2:
        for Fx in (F, _ext_field(fld or F, ext_poly)):
            rts = [x for x in Fx.elements() if x * x - lam * x + lead == 0]
            if rts:
                a = rts[0]
                return (a, Fx(lam) - a)
        raise ArithmeticError_("no roots found")  # pragma: no cover
    disc = lam * lam - lead * 4
    sq = F.sqrt(disc) if F.degree == 2 or F.is_square(disc) else None
    if sq is None:
        F = _ext_field(fld or F, ext_poly)
        sq = F.sqrt(F(disc))
        lam = F(lam)
    inv2 = F(2).inverse()
    alpha = (lam + sq) * inv2
    beta = (lam - sq) * inv2
    if not alpha or not beta:
        raise ArithmeticError_("root 0: the leading datum vanishes mod l")
    L.roots = (alpha, beta)
    return alpha, beta


# ---------------------------------------------------------------------------
# Shimura-lift coefficients

def _mobius_divisors(n: int):
    """(d, mu(d)) for square-free d | n."""
    ps = list(factorint(n)) if n > 1 else []
    out = [(1, 1)]
    for p in ps:
        out += [(d * p, -m) for d, m in out]
    return out


def shimura_coefficients(eigenvalues: dict, weight: int, level: int, k, twist: Callable,
                         n_max: int, modulus: Optional[int] = None) -> list:
    """
    b(n) for 0 <= n <= n_max with b(n) = sum_{d | n} mu(d) twist(d) d^(k-3/2) a(n/d),
    a(n) the Hecke-multiplicative coefficients of weight w = 2k-1.
    b[0] is 0.
    """
    k = Fraction(k)
    e = int(k - Fraction(3, 2))
    missing = [p for p in _primes_upto(n_max) if p not in eigenvalues]
    if missing:
        raise KeyError(f"missing eigenvalues for primes {missing[:5]}")
    a = hecke_multiplicative_coefficients(eigenvalues, weight, level, n_max + 1)

    def dpow(d):
        if modulus:
            return pow(d, e, modulus)
        return Fraction(d) ** e

    b = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = 0
        for d, mu in _mobius_divisors(n):
            t = twist(d)
            if t:
                acc += mu * t * dpow(d) * a[n // d]
        if isinstance(acc, Fraction) and acc.denominator == 1:
            acc = int(acc)
        b[n] = acc % modulus if modulus else acc
    return b


def reconvolve(b: list, twist: Callable, k, modulus: Optional[int] = None) -> list:
    """a(n) = sum_{d | n} twist(d) d^(k-3/2) b(n/d): inverse of shimura_coefficients."""
    e = int(Fraction(k) - Fraction(3, 2))
    n_max = len(b) - 1
    a = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        t = twist(d)
        if not t:
            continue
        w = t * (pow(d, e, modulus) if modulus else Fraction(d) ** e)
        for m in range(d, n_max + 1, d):
            a[m] += w * b[m // d]
    out = []
    for v in a:
        if isinstance(v, Fraction) and v.denominator == 1:
            v = int(v)
        out.append(v % modulus if modulus else v)
    return out


def _primes_upto(n):
    from .arith import primes_below
    return primes_below(n + 1)


def twist_character(k, r: int, chi: Callable = lambda a: 1, D: int = 1,
                    variant: str = "minus4") -> Callable:
    """
    d -> chi(d) chi_{-4}^(2k-r)(d) chi_D(d).  variant "plus4" uses the
    Kronecker symbol (4/.) in place of (-4/.).  Only the parity of 2k - r matters.
    """
    par = int(2 * Fraction(k) - r) % 2
    four = -4 if variant == "minus4" else 4

    def tw(d: int) -> int:
        v = chi(d) * kronecker_symbol(D, d)
        if par:
            v *= kronecker_symbol(four, d)
        return v
    return tw


# ---------------------------------------------------------------------------
# the generalized-eigenform decomposition as a coefficient identity

@dataclass
class DecompositionReport:
    holds: bool
    first_violation: Optional[int]
    checked_to: int
    window: int
    precondition: bool = True       # (T_p - lam)^(d+1) f = 0 on its window

    def to_json(self):
        return self.__dict__.copy()


def check_lemma32_decomposition(ft: FourierExpansion, p: int, lam, d: int, n_max: int,
                                ell: int, chi_p: int = 1) -> DecompositionReport:
    """
    Check c(f; p^j m) = sum_{t<=d} [X^j](X^t / L^(t+1)) c(f_t; m), p not dividing m,
    with f_t = f | (T_p - lam)^t (integral weight), for 1 <= n <= n_max.
    Whether (T_p - lam)^(d+1) f vanishes is reported, not enforced, so that a
    corrupted coefficient shows up as a violation of the identity itself.
    """
    from .hecke import HeckeContext, hecke_Tp
    fld = CoefficientField(ell)
    f = ft.reduce(fld) if ft.modulus is None else ft
    w = int(f.weight)
    ctx = HeckeContext(p, w, None, fld, "integral")
    lam = lam % ell if isinstance(lam, int) else int(lam)
    ladder = [f]
    for _ in range(d + 1):
        g = hecke_Tp(ladder[-1], ctx)
        h = ladder[-1].truncate(g.precision)
        ladder.append(g - h.scale(lam))
    precondition = ladder[d + 1].is_zero()
    if n_max >= ladder[d].precision:
        raise ArithmeticError_(f"window exhausted: f_{d} known below {ladder[d].precision}")
    L = LPolynomial.from_weight(p, lam, w, fld, chi_p)
    jmax = 0
    while p ** (jmax + 1) <= n_max:
        jmax += 1
    series = [lpoly_inverse_coeffs(L, t + 1, None, t, jmax) for t in range(d + 1)]
    for n in range(1, n_max + 1):
        m, j = n, 0
        while m % p == 0:
            m //= p
            j += 1
        acc = 0
        for t in range(d + 1):
            acc += int(series[t][j]) * ladder[t][m]
        if (acc - f[n]) % ell:
            return DecompositionReport(False, n, n_max, ladder[d].precision, precondition)
    return DecompositionReport(True, None, n_max, ladder[d].precision, precondition)


# ---------------------------------------------------------------------------
# vanishing criteria at prime powers

def twist_value(p: int, k, r: int, eps: int, F: FiniteField, chi_p: int = 1,
                D: int = 1) -> FieldElement:
    """chi_{-4}^(2k-r)(p) chi(p) chi_D(p) eps p^(k-3/2) in F."""
    par = int(2 * Fraction(k) - r) % 2
    s = chi_p * eps * kronecker_symbol(D, p) * (kronecker_symbol(-4, p) if par else 1)
    return F(s * pow(p, int(Fraction(k) - Fraction(3, 2)), F.p))


def _lpoly_half(lam, p, k, ell, chi_p) -> LPolynomial:
    if isinstance(lam, FieldElement):
        return LPolynomial.from_half_integral(p, lam, k, lam.field, chi_p)
    return LPolynomial.from_half_integral(p, lam, k, ell, chi_p)


def criterion_eps0(lam, p: int, k, m: int, ell: int, chi_p: int = 1) -> bool:
    """
    Does [X^m] 1/L_p vanish?  Repeated root: iff m = -1 mod l; distinct
    roots: iff alpha^(m+1) = beta^(m+1).
    """
    if p % ell == 0:
        raise ValueError("p must be prime to l")
    L = _lpoly_half(lam, p, k, ell, chi_p)
    if L.is_repeated():
        return (m + 1) % ell == 0
    a, b = factor_lpoly(L)
    return a ** (m + 1) == b ** (m + 1)


def criterion_eps_pm1(lam, p: int, k, r: int, eps: int, m: int, ell: int,
                      chi_p: int = 1, D: int = 1) -> bool:
    """
    Does [X^m] (1 - c X)/L_p vanish, c = chi_{-4}^(2k-r)(p) chi(p) eps p^(k-3/2)?
    Repeated root: m != -1, lam = 2 m c/(m+1) and p = m^2/(m+1)^2 mod l.
    Distinct roots: (alpha/beta)^m = (beta - c)/(alpha - c).
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if p % ell == 0:
        raise ValueError("p must be prime to l")
    L = _lpoly_half(lam, p, k, ell, chi_p)
    F = L.field
    c = twist_value(p, k, r, eps, F.prime_field(), chi_p, D)
    if L.is_repeated():
        if (m + 1) % ell == 0:
            return False
        q = F(m) / F(m + 1)
        return L.lam == c * q * 2 and F(p) == q * q
    a, b = factor_lpoly(L)
    if a == c or b == c:
        return False
    return (a / b) ** m == (b - c) / (a - c)


@dataclass
class OrderReport:
    alpha: FieldElement
    beta: FieldElement
    ord_ratio: int
    ord_target: dict            # eps -> order of (beta - c)/(alpha - c)
    solutions: dict             # eps -> sorted m in [1, ord_ratio] with (alpha/beta)^m = target

    @property
    def solvable(self) -> dict:
        return {e: bool(s) for e, s in self.solutions.items()}

    def to_json(self):
        return {
            "alpha": repr(self.alpha), "beta": repr(self.beta),
            "ord_ratio": self.ord_ratio,
            "ord_target": {str(e): o for e, o in self.ord_target.items()},
            "solutions": {str(e): s for e, s in self.solutions.items()},
            "solvable": {str(e): s for e, s in self.solvable.items()},
        }


def criterion_orders(lam, p: int, k, r: int, ell: int, chi_p: int = 1, D: int = 1,
                     ext_poly=None, fld=None) -> OrderReport:
    """
    Orders of alpha/beta and of the two target ratios, and every m solving
    (alpha/beta)^m = (beta - c)/(alpha - c), by walking the cyclic group.
    """
    L = _lpoly_half(lam, p, k, ell, chi_p)
    if L.is_repeated():
        raise ArithmeticError_("repeated root: use the repeated-root branch")
    a, b = factor_lpoly(L, fld, ext_poly)
    rho = a / b
    ordr = multiplicative_order(rho)
    targets, orders, sols = {}, {}, {}
    for eps in (1, -1):
        c = twist_value(p, k, r, eps, a.field.prime_field(), chi_p, D)
        if a == c or b == c:
            orders[eps] = None
            sols[eps] = []
            continue
        tgt = (b - c) / (a - c)
        orders[eps] = multiplicative_order(tgt)
        found = []
        x = a.field.one
        for m in range(1, ordr + 1):
            x = x * rho
            if x == tgt:
                found.append(m)
        sols[eps] = found
    return OrderReport(a, b, ordr, orders, sols)


# ---------------------------------------------------------------------------
# Euler-ratio coefficients c_M(lambda, t; m)

@dataclass
class EulerRatioSeries:
    """
    Coefficients of m^(-s) in prod_{p | M} p^(-s t_p)(1 - c_p p^(-s)) / L_p(lam_p, p^(-s))^(t_p+1).
    data maps p -> (t_p, LPolynomial, c_p or None).
    """
    data: dict
    _cache: dict = field(default_factory=dict, repr=False)

    def _local(self, p: int, j: int):
        key = (p, j)
        if key not in self._cache:
            t, L, c = self.data[p]
            self._cache[key] = lpoly_inverse_coeffs(L, t + 1, c, t, j)[j]
        return self._cache[key]

    def coefficient(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        fac = factorint(m) if m > 1 else {}
        if any(q not in self.data for q in fac):
            return 0
        acc = None
        for p in self.data:
            v = self._local(p, fac.get(p, 0))
            acc = v if acc is None else acc * v
        return acc
