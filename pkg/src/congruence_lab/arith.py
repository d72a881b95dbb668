"""
Exact arithmetic primitives.

Finite fields F_l and F_l[r]/(r^2 + b r + c), elements a + b sqrt(d) of a real
quadratic field with their reduction at a prime above l, Kronecker symbols,
square classes, multiplicative orders, Kloosterman sums in F_l[X]/Phi_p and
the factorizations of an arithmetic progression M Z + beta.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional

import gmpy2


class ArithmeticError_(ValueError):
    """Raised on invalid field data or on reduction of non-integral input."""


class NonIntegralError(ArithmeticError_):
    def __init__(self, valuation: int, value=None):
        self.valuation = valuation
        self.value = value
        super().__init__(f"element {value} has valuation {valuation} < 0 at l")


# ---------------------------------------------------------------------------
# integers

def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


def factorint(n: int) -> dict:
    """Prime factorization of |n| as {p: e}."""
    from sympy import factorint as _factorint
    n = abs(int(n))
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in _factorint(n).items()}


def primes_below(n: int) -> list:
    from sympy import primerange
    return [int(p) for p in primerange(2, n)]


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ArithmeticError_("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def radical(n: int) -> int:
    r = 1
    for p in factorint(n):
        r *= p
    return r


def squarefree_decomposition(n: int) -> tuple:
    """Return (n_fd, n_s) with n = n_fd * n_s^2 and n_fd square-free (n > 0)."""
    fd, s = 1, 1
    for p, e in factorint(n).items():
        if e % 2:
            fd *= p
        s *= p ** (e // 2)
    return fd, s


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(n).values())


def is_fundamental_discriminant(D: int) -> bool:
    """D = 1 counts as fundamental."""
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), with the usual extension to n <= 0 and even n."""
    return int(gmpy2.kronecker(int(a), int(n)))


# ---------------------------------------------------------------------------
# square classes

@lru_cache(maxsize=256)
def _unit_squares(M: int) -> frozenset:
    return frozenset(u * u % M for u in range(1, M + 1) if gcd(u, M) == 1)


def square_class_equal(m: int, n: int, M: int) -> bool:
    """m and n lie in the same square class mod M: m = u^2 n (mod M) for a unit u."""
    if M < 1:
        raise ArithmeticError_("modulus must be positive")
    if M == 1:
        return True
    # local test at each p^e || M: equal valuation below e and unit parts
    # differing by a square unit mod p^(e - v)
    for p, e in factorint(M).items():
        pe = p ** e
        a, b = m % pe, n % pe
        if a == 0 or b == 0:
            if a != b:
                return False
            continue
        va, vb = valuation(a, p), valuation(b, p)
        if va != vb:
            return False
        f = e - va
        ua, ub = a // p ** va, b // p ** va
        mod = p ** f
        ratio = ua * pow(ub, -1, mod) % mod
        if p == 2:
            if ratio % min(8, mod) != 1 % min(8, mod):
                return False
        elif kronecker_symbol(ratio, p) != 1:
            return False
    return True


def square_class_orbit(beta: int, M: int, N: int = 1) -> list:
    """Sorted residues u^2 beta mod M for u coprime to M N."""
    MN = M * N
    out = set()
    for u in range(1, MN + 1):
        if gcd(u, MN) == 1:
            out.add(u * u * beta % M)
    return sorted(out)


# ---------------------------------------------------------------------------
# progression factorization

@dataclass(frozen=True)
class ProgressionFactorization:
    M: int
    beta: int
    M1: int
    M0: int
    beta0: int
    M_fd: int
    M_s: int
    M_sf: int
    parts: dict = field(default_factory=dict)   # p -> (M_p, M_p^#)

    def M_p(self, p: int) -> int:
        return self.parts[p][0]

    def M_p_sharp(self, p: int) -> int:
        return self.parts[p][1]


def factor_progression(M: int, beta: int) -> ProgressionFactorization:
    """
    Factor the data of M Z + beta.

    M_1 = gcd(M, beta), M_0 = M/M_1, beta_0 = beta/M_1, M_fd M_s^2 = M_1 and
    M_sf = gcd(8, M) times the radical of the odd part of M.  beta = 0 gives
    M_1 = M, M_0 = 1, beta_0 = 0.
    """
    if M < 1:
        raise ArithmeticError_("M must be positive")
    M1 = gcd(M, beta) if beta else M
    M0 = M // M1
    beta0 = beta // M1 if beta else 0
    fd, s = squarefree_decomposition(M1)
    fac = factorint(M)
    parts = {}
    for p, e in fac.items():
        Mp = p ** e
        parts[p] = (Mp, M // Mp)
    odd = M
    while odd % 2 == 0:
        odd //= 2
    M_sf = gcd(8, M) * radical(odd)
    return ProgressionFactorization(M, beta, M1, M0, beta0, fd, s, M_sf, parts)


# ---------------------------------------------------------------------------
# finite fields

class FiniteField:
    """
    F_p, or F_p[r]/(r^2 + b r + c) when poly = (b, c) is given.

    The generator r of the extension is pinned by the polynomial so that
    printed elements such as 126+94r are reproducible.
    """

    def __init__(self, p: int, poly: Optional[tuple] = None):
        if not is_prime(p):
            raise ArithmeticError_(f"{p} is not prime")
        self.p = int(p)
        if poly is not None:
            b, c = int(poly[0]) % p, int(poly[1]) % p
            if any((x * x + b * x + c) % p == 0 for x in range(p)):
                raise ArithmeticError_(f"r^2+{b}r+{c} is reducible over F_{p}")
            self.poly = (b, c)
            self.degree = 2
        else:
            self.poly = None
            self.degree = 1
        self.order = self.p ** self.degree

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.poly) == (other.p, other.poly)

    def __hash__(self):
        return hash((self.p, self.poly))

    def __repr__(self):
        if self.poly is None:
            return f"F_{self.p}"
        return f"F_{self.p}[r]/(r^2+{self.poly[0]}r+{self.poly[1]})"

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if x.field.p == self.p and x.b == 0:
                return FieldElement(self, x.a, 0)
            raise ArithmeticError_(f"cannot coerce {x!r} into {self!r}")
        if isinstance(x, tuple):
            if self.degree == 1 and x[1] % self.p:
                raise ArithmeticError_("prime field has no r component")
            return FieldElement(self, x[0] % self.p, x[1] % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NonIntegralError(-valuation(x.denominator, self.p), x)
            return FieldElement(self, x.numerator * pow(x.denominator, -1, self.p) % self.p, 0)
        return FieldElement(self, int(x) % self.p, 0)

    @property
    def zero(self):
        return FieldElement(self, 0, 0)

    @property
    def one(self):
        return FieldElement(self, 1, 0)

    @property
    def gen(self):
        if self.degree == 1:
            raise ArithmeticError_("prime field has no generator r")
        return FieldElement(self, 0, 1)

    def prime_field(self) -> "FiniteField":
        return self if self.degree == 1 else FiniteField(self.p)

    def elements(self) -> Iterator["FieldElement"]:
        for b in range(self.p if self.degree == 2 else 1):
            for a in range(self.p):
                yield FieldElement(self, a, b)

    def is_square(self, x) -> bool:
        x = self(x)
        if not x:
            return True
        if self.p == 2:
            return True
        return x ** ((self.order - 1) // 2) == 1

    def sqrt(self, x):
        """A square root of x in this field, or None (Tonelli-Shanks)."""
        x = self(x)
        if not x:
            return self.zero
        q = self.order
        if self.p == 2:
            return x ** (q // 2)
        if not self.is_square(x):
            return None
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = next(e for e in self.elements() if e and not self.is_square(e))
        m, c, u, rr = s, z ** t, x ** t, x ** ((t + 1) // 2)
        while u != 1:
            i, u2 = 0, u
            while u2 != 1:
                u2 = u2 * u2
                i += 1
            bb = c ** (1 << (m - i - 1))
            m, c = i, bb * bb
            u, rr = u * c, rr * bb
        return rr


class FieldElement:
    """Element a + b r of a FiniteField (b = 0 in a prime field)."""
    __slots__ = ("field", "a", "b")

    def __init__(self, fld: FiniteField, a: int, b: int = 0):
        self.field = fld
        self.a = a
        self.b = b

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            same = other.field is self.field or other.field == self.field
            if same or (other.field.p == self.field.p
                        and 1 in (other.field.degree, self.field.degree)):
                return other
            raise ArithmeticError_("elements of different fields")
        if isinstance(other, (int, Fraction)) or hasattr(other, "__index__"):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(o.field if o.field.degree > self.field.degree else self.field,
                            (self.a + o.a) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, -self.a % p, -self.b % p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        fld = o.field if o.field.degree > self.field.degree else self.field
        p = fld.p
        if self.b == 0 and o.b == 0:
            return FieldElement(fld, self.a * o.a % p, 0)
        bb, cc = fld.poly
        hi = self.b * o.b
        a = self.a * o.a - hi * cc
        b = self.a * o.b + self.b * o.a - hi * bb
        return FieldElement(fld, a % p, b % p)

    __rmul__ = __mul__

    def norm(self) -> int:
        """Norm down to F_p (the element itself in a prime field)."""
        p = self.field.p
        if self.field.degree == 1:
            return self.a
        bb, cc = self.field.poly
        return (self.a * self.a - self.a * self.b * bb + self.b * self.b * cc) % p

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        p = self.field.p
        if self.b == 0:
            return FieldElement(self.field, pow(self.a, -1, p), 0)
        bb, _ = self.field.poly
        ninv = pow(self.norm(), -1, p)
        return FieldElement(self.field, (self.a - self.b * bb) * ninv % p, -self.b * ninv % p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if self.b == 0:
            return FieldElement(self.field, pow(self.a, e, self.field.p), 0)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and (self.a, self.b) == (other.a, other.b)
        if isinstance(other, (int, Fraction)):
            try:
                o = self.field(other)
            except NonIntegralError:
                return False
            return (self.a, self.b) == (o.a, o.b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.a, self.b))

    def __int__(self):
        if self.b:
            raise ArithmeticError_(f"{self} is not in the prime field")
        return self.a

    def __index__(self):
        return self.__int__()

    def __repr__(self):
        if self.field.degree == 1 or self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}r"
        return f"{self.a}+{self.b}r"

    def to_json(self):
        return self.a if self.field.degree == 1 else [self.a, self.b]


def multiplicative_order(x: FieldElement) -> int:
    """Least t >= 1 with x^t = 1."""
    if not x:
        raise ArithmeticError_("0 has no multiplicative order")
    n = x.field.order - 1
    t = n
    for q, e in factorint(n).items():
        for _ in range(e):
            if x ** (t // q) == 1:
                t //= q
            else:
                break
    return t


# ---------------------------------------------------------------------------
# real quadratic field elements

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QuadFieldElement:
    """a + b sqrt(d) with exact rationals a, b."""
    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @classmethod
    def from_parts(cls, a_num, a_den, b_num, b_den, d):
        return cls(Fraction(a_num, a_den), Fraction(b_num, b_den), d)

    def _lift(self, other):
        if isinstance(other, QuadFieldElement):
            if other.d != self.d and other.b and self.b:
                raise ArithmeticError_("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElement(_frac(other), Fraction(0), self.d)
        return NotImplemented

    def _d(self, o):
        return self.d if self.b or not o.b else o.d

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadFieldElement(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return QuadFieldElement(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conj(self):
        return QuadFieldElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by 0 in Q(sqrt d)")
        num = self * o.conj()
        return QuadFieldElement(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return QuadFieldElement(_frac(other), Fraction(0), self.d) / self

    def __pow__(self, e: int):
        result = QuadFieldElement(Fraction(1), Fraction(0), self.d)
        base = self if e >= 0 else 1 / self
        for _ in range(abs(e)):
            result = result * base
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QuadFieldElement) else other
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (not self.b or self.d == o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def __repr__(self):
        if not self.b:
            return str(self.a)
        a = "" if not self.a else f"{self.a}"
        sign = "-" if self.b < 0 else ("+" if a else "")
        bb = abs(self.b)
        bs = "" if bb == 1 else (f"{bb}" if bb.denominator == 1 else f"({bb})")
        return f"{a}{sign}{bs}√{self.d}"

    def to_json(self):
        return [self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator]

    def integral_parts(self) -> tuple:
        """(A, B, D) with self = (A + B sqrt d)/D, D > 0, gcd(A, B, D) = 1."""
        D = self.a.denominator * self.b.denominator // gcd(self.a.denominator, self.b.denominator)
        A = int(self.a * D)
        B = int(self.b * D)
        return A, B, D


# ---------------------------------------------------------------------------
# coefficient fields

@dataclass(frozen=True)
class QuadraticReduction:
    d: int
    sqrt_image: Optional[int] = None    # s with s^2 = d mod l (split or ramified case)


class CoefficientField:
    """
    F_l together with an optional quadratic extension and an optional
    reduction map from Q(sqrt d) at a prime above l.
    """

    def __init__(self, ell: int, extension: Optional[tuple] = None,
                 quadratic_reduction: Optional[QuadraticReduction] = None):
        if not is_prime(ell):
            raise ArithmeticError_(f"{ell} is not prime")
        self.ell = int(ell)
        self.base = FiniteField(self.ell)
        self.ext = FiniteField(self.ell, extension) if extension is not None else None
        self.extension = self.ext.poly if self.ext else None
        qr = quadratic_reduction
        if qr is not None:
            if self.ell == 2:
                raise ArithmeticError_("quadratic reduction at l = 2 is not supported")
            if qr.d == 1 or not is_squarefree(qr.d):
                raise ArithmeticError_(f"d = {qr.d} must be square-free and not 1")
            leg = kronecker_symbol(qr.d, self.ell)
            if leg == 1:
                if qr.sqrt_image is None or (qr.sqrt_image ** 2 - qr.d) % self.ell:
                    raise ArithmeticError_(
                        f"sqrt image {qr.sqrt_image} does not square to {qr.d} mod {self.ell}")
                self.kind = "split"
            elif leg == 0:
                qr = QuadraticReduction(qr.d, 0)
                self.kind = "ramified"
            else:
                if qr.sqrt_image is not None:
                    raise ArithmeticError_(f"{qr.d} is not a square mod {self.ell}")
                self.kind = "inert"
        else:
            self.kind = None
        self.quadratic_reduction = qr

    @property
    def d(self) -> Optional[int]:
        return self.quadratic_reduction.d if self.quadratic_reduction else None

    def __repr__(self):
        s = f"CoefficientField(ell={self.ell}"
        if self.ext:
            s += f", extension=r^2+{self.extension[0]}r+{self.extension[1]}"
        if self.quadratic_reduction:
            q = self.quadratic_reduction
            s += f", d={q.d}, sqrt_image={q.sqrt_image}"
        return s + ")"

    def extension_field(self) -> FiniteField:
        """The quadratic extension, constructed with a default generator if not pinned."""
        if self.ext is None:
            self.ext = FiniteField(self.ell, default_extension_poly(self.ell))
            self.extension = self.ext.poly
        return self.ext


def default_extension_poly(p: int) -> tuple:
    """Smallest (b, c) in lexicographic order with r^2 + b r + c irreducible over F_p."""
    for b in range(p):
        for c in range(1, p):
            if all((x * x + b * x + c) % p for x in range(p)):
                return (b, c)
    raise ArithmeticError_("no irreducible quadratic")  # pragma: no cover


def _as_quad(x, d) -> QuadFieldElement:
    if isinstance(x, QuadFieldElement):
        if x.b and d is not None and x.d != d:
            raise ArithmeticError_(f"element of Q(sqrt {x.d}) used with d = {d}")
        return x
    return QuadFieldElement(_frac(x), Fraction(0), d or 1)


def _decompose(x: QuadFieldElement, ell: int):
    """x = ell^a * u * (A' + B' sqrt d) with gcd(A', B') = 1 and u an l-unit rational."""
    A, B, D = x.integral_parts()
    g = gcd(A, B)
    A1, B1 = A // g, B // g
    a = valuation(g, ell) - valuation(D, ell)
    u = Fraction(g, D) / Fraction(ell) ** a
    return a, u, A1, B1


def ell_valuation(x, fld: CoefficientField) -> int:
    """Valuation of x at the prime above l described by fld (v(l) = 1 unless ramified)."""
    q = _as_quad(x, fld.d)
    if not q:
        raise ArithmeticError_("valuation of 0 is infinite")
    ell = fld.ell
    if q.b and fld.quadratic_reduction is None:
        raise ArithmeticError_("field has no quadratic reduction data")
    a, u, A1, B1 = _decompose(q, ell)
    if B1 == 0 or fld.kind == "inert":
        return a * (2 if fld.kind == "ramified" else 1)
    if fld.kind == "ramified":
        return 2 * a + (1 if A1 % ell == 0 else 0)
    s = fld.quadratic_reduction.sqrt_image
    if (A1 + B1 * s) % ell:
        return a
    return a + valuation(A1 * A1 - q.d * B1 * B1, ell)


def reduce_quadratic(x, fld: CoefficientField) -> FieldElement:
    """
    Image of an l-integral x in the residue field (F_l, or F_l^2 for inert l).

    Denominators divisible by l are cleared through the conjugate,
    x = N(num) / (den conj(num)); negative valuation raises NonIntegralError.
    """
    q = _as_quad(x, fld.d)
    ell = fld.ell
    target = fld.base if fld.kind != "inert" else fld.extension_field()
    if not q:
        return target.zero
    v = ell_valuation(q, fld)
    if v < 0:
        raise NonIntegralError(v, q)
    if v > 0:
        return target.zero
    a, u, A1, B1 = _decompose(q, ell)
    uu = target(u)
    if B1 == 0:
        return uu * (A1 % ell)
    if fld.kind == "ramified":
        return uu * A1
    if fld.kind == "inert":
        sq = target.sqrt(q.d)
        return uu * (sq * B1 + A1)
    s = fld.quadratic_reduction.sqrt_image
    if a == 0:
        return uu * ((A1 + B1 * s) % ell)
    j = -a
    N = A1 * A1 - q.d * B1 * B1
    Nj = N // ell ** j
    return uu * target(Nj) / target((A1 - B1 * s) % ell)


def reduce_int(x, fld: CoefficientField) -> int:
    """reduce_quadratic for targets in the prime field, returned as an int."""
    if isinstance(x, int):
        return x % fld.ell
    if isinstance(x, Fraction):
        if x.denominator % fld.ell:
            return x.numerator * pow(x.denominator, -1, fld.ell) % fld.ell
    return int(reduce_quadratic(x, fld))


# ---------------------------------------------------------------------------
# cyclotomic residues and Kloosterman sums

@dataclass(frozen=True)
class CyclotomicResidue:
    """Element of F_l[X]/Phi_p(X), coefficients of 1, X, ..., X^(p-2)."""
    p: int
    ell: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ArithmeticError_("a residue mod Phi_p needs p-1 coefficients")

    @classmethod
    def from_exponent_counts(cls, p: int, ell: int, counts) -> "CyclotomicResidue":
        """Reduce sum counts[e] X^e (e mod p) using X^(p-1) = -(1 + ... + X^(p-2))."""
        top = counts[p - 1]
        return cls(p, ell, tuple((counts[i] - top) % ell for i in range(p - 1)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
                terms.append(f"{c}{mon}" if i == 0 or c != 1 else mon)
        return " + ".join(terms) or "0"


def kloosterman_K2(p: int, a: int, b: int, ell: int) -> CyclotomicResidue:
    """
    K_2(psi^b, a) = sum over x1 x2 = a (mod p) of zeta_p^(b (x1 + x2)), as a
    residue in F_ell[X]/Phi_p(X), with psi(x) = e(x/p).
    """
    if not is_prime(p) or p == 2:
        raise ArithmeticError_(f"p = {p} must be an odd prime")
    if not is_prime(ell):
        raise ArithmeticError_(f"l = {ell} must be prime")
    if ell == p:
        raise ArithmeticError_("l = p is not allowed")
    if b % p == 0:
        raise ArithmeticError_("b must be a unit mod p")
    counts = [0] * p
    a %= p
    for x1 in range(p):
        if x1 == 0:
            if a == 0:
                for x2 in range(p):
                    counts[b * x2 % p] += 1
            continue
        x2 = a * pow(x1, -1, p) % p
        if a == 0:
            x2 = 0
        counts[b * (x1 + x2) % p] += 1
    return CyclotomicResidue.from_exponent_counts(p, ell, counts)
