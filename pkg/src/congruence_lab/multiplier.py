"""
Theta and eta multiplier systems and the metaplectic 2-cocycle.

Values are exact roots of unity e(k/n), stored as exponents k mod n.  The
convention is

    eta(gamma tau) = v_eta(gamma) (c tau + d)^(1/2) eta(tau)

with the principal branch of the square root, and v(g) v(h) = sigma(g, h) v(g h).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .arith import kronecker_symbol


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"det of ({self.a} {self.b}; {self.c} {self.d}) is not 1")

    def __matmul__(self, o: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                                self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __neg__(self):
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def c_tilde(self) -> int:
        return self.c if self.c else self.d

    def act(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)


T = UnimodularMatrix(1, 1, 0, 1)
S = UnimodularMatrix(0, -1, 1, 0)
I = UnimodularMatrix(1, 0, 0, 1)
MINUS_I = UnimodularMatrix(-1, 0, 0, -1)


@dataclass(frozen=True)
class RootOfUnity:
    """e(exponent/order)."""
    exponent: int
    order: int = 24

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if isinstance(other, int) and other in (1, -1):
            return RootOfUnity(self.exponent + (0 if other == 1 else self.order // 2), self.order)
        n = self.order * other.order // _gcd(self.order, other.order)
        return RootOfUnity(self.exponent * (n // self.order) + other.exponent * (n // other.order), n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * e, self.order)

    def __eq__(self, other):
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self.exponent * other.order == other.exponent * self.order

    def __hash__(self):
        from fractions import Fraction
        return hash(Fraction(self.exponent, self.order))

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)

    def __repr__(self):
        return f"e({self.exponent}/{self.order})"


def RootOfUnity24(exponent: int) -> RootOfUnity:
    return RootOfUnity(exponent, 24)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _hilbert_inf(x: int, y: int) -> int:
    return -1 if x < 0 and y < 0 else 1


def cocycle_sigma(g: UnimodularMatrix, h: UnimodularMatrix) -> int:
    """The sign sigma(g, h) of (g, w_g)(h, w_h) = (gh, sigma w_gh)."""
    gh = g @ h
    if g.c and h.c:
        if gh.c:
            return _hilbert_inf(gh.c_tilde() * g.c_tilde(), gh.c_tilde() * h.c_tilde())
        return _hilbert_inf(g.c_tilde(), h.c_tilde())
    if not g.c and not h.c:
        return _hilbert_inf(g.c_tilde(), h.c_tilde())
    if not g.c:
        return _hilbert_inf(g.c_tilde(), -h.c_tilde())
    return _hilbert_inf(-g.c_tilde(), h.c_tilde())


def _eta_exponent(a: int, b: int, c: int, d: int) -> int:
    if c > 0:
        if c % 2:
            sym = kronecker_symbol(d, c)
            e = (a + d) * c - b * d * (c * c - 1) - 3 * c
        else:
            sym = kronecker_symbol(c, d)
            e = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d
        return e + (0 if sym == 1 else 12)
    if c == 0:
        # (1 b; 0 1) is a translation, (-1 b; 0 -1) = -I (1 -b; 0 1)
        return b if d == 1 else -6 - b
    # gamma = (-I)(-gamma): v(-I) = e(-6/24) and sigma(-I, -gamma) = -1
    return 6 + _eta_exponent(-a, -b, -c, -d)


def eta_multiplier(g: UnimodularMatrix) -> RootOfUnity:
    return RootOfUnity(_eta_exponent(g.a, g.b, g.c, g.d), 24)


def theta_multiplier(g: UnimodularMatrix) -> RootOfUnity:
    """(c/d) eps_d^(-1) as a power of e(1/8), for g in Gamma_0(4)."""
    if g.c % 4:
        raise ValueError("theta multiplier needs 4 | c")
    sym = kronecker_symbol(g.c, g.d)
    eps_inv = 0 if g.d % 4 == 1 else 6       # eps_d = i for d = 3 mod 4
    return RootOfUnity((0 if sym == 1 else 4) + eps_inv, 8)


def eta_numeric(tau: complex, terms: int = 200) -> complex:
    """eta(tau) by the pentagonal series; a floating point aid for tests."""
    q = cmath.exp(2j * cmath.pi * tau)
    s = 0
    for k in range(-terms, terms + 1):
        s += (-1) ** (k % 2) * q ** (k * (3 * k - 1) // 2)
    return cmath.exp(2j * cmath.pi * tau / 24) * s
