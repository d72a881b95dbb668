"""
Truncated Fourier expansions with exact or mod-l coefficients.

Expansions are stored densely on the arithmetic progression of indices they
can be supported on, start + step*j, below an exclusive precision bound.  For
eta-type forms in 24th-indexing (coefficient of e(n tau/24)) the step is 24,
which keeps eta^(-1) to index 2.4e6 at 1e5 stored values.

Series products use Kronecker substitution: both coefficient lists are packed
into one big integer each, multiplied with gmpy2, and unpacked.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import gmpy2
import numpy as np

from .arith import (CoefficientField, QuadFieldElement, QuadraticReduction,
                    kronecker_symbol, reduce_int, reduce_quadratic)


class PrecisionError(ValueError):
    """Raised when an operation would read past the known precision."""


class Indexing(str, Enum):
    INTEGRAL = "integral"
    TWENTYFOURTH = "twentyfourth"


# ---------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class CharacterSpec:
    """
    chi * chi_eta^r, chi * chi_theta^r, or a plain Dirichlet character for
    integral weight (kind = "integral").  dirichlet is "trivial",
    ("kronecker", d), or a table {a mod N: value}.
    """
    kind: str = "integral"          # eta | theta | integral
    r: int = 0
    N: int = 1
    dirichlet: object = "trivial"

    def __post_init__(self):
        if self.kind == "eta" and gcd(self.r, 24) != 1:
            raise ValueError(f"eta character needs gcd(r, 24) = 1, got r = {self.r}")
        if self.kind == "theta" and self.r % 2 == 0:
            raise ValueError(f"theta character needs r odd, got r = {self.r}")
        if self.kind not in ("eta", "theta", "integral"):
            raise ValueError(f"unknown character kind {self.kind}")

    def chi(self, a: int) -> int:
        if gcd(a, self.N) != 1:
            return 0
        dch = self.dirichlet
        if dch == "trivial":
            return 1
        if isinstance(dch, (tuple, list)) and dch[0] == "kronecker":
            return kronecker_symbol(dch[1], a)
        if isinstance(dch, dict):
            return dch[a % self.N]
        raise ValueError(f"bad dirichlet data {dch!r}")

    def parity(self) -> int:
        """chi(-1)."""
        return self.chi(-1) if self.N > 1 else 1

    def to_json(self):
        d = self.dirichlet
        if isinstance(d, dict):
            d = {"table": {str(k): v for k, v in d.items()}}
        elif isinstance(d, (tuple, list)):
            d = {"kronecker": d[1]}
        return {"kind": self.kind, "r": self.r, "N": self.N, "dirichlet": d}

    @classmethod
    def from_json(cls, obj) -> "CharacterSpec":
        if obj is None:
            return cls()
        d = obj.get("dirichlet", "trivial")
        if isinstance(d, dict):
            if "kronecker" in d:
                d = ("kronecker", int(d["kronecker"]))
            else:
                d = {int(k): int(v) for k, v in d["table"].items()}
        return cls(obj.get("kind", "integral"), int(obj.get("r", 0)), int(obj.get("N", 1)), d)


ETA_CHARACTER = CharacterSpec("eta", 1)


# ---------------------------------------------------------------------------
# Kronecker substitution engine

def _nbytes(bound: int) -> int:
    return max(1, (int(bound).bit_length() + 7) // 8)


def _pack_nonneg(a: Sequence[int], nb: int):
    if nb <= 8:
        arr = np.asarray(a, dtype=np.uint64).astype("<u8")
        buf = arr.view(np.uint8).reshape(-1, 8)[:, :nb].tobytes()
    else:
        buf = b"".join(int(x).to_bytes(nb, "little") for x in a)
    return gmpy2.mpz(int.from_bytes(buf, "little"))


def _digits(z: int, nb: int, n: int) -> bytes:
    z = int(z)
    size = max(nb * n, (z.bit_length() + 7) // 8)
    return z.to_bytes(size, "little")[:nb * n].ljust(nb * n, b"\0")


def _unpack_mod(z, nb: int, n: int, m: int) -> list:
    raw = _digits(z, nb, n)
    if nb <= 8:
        arr = np.frombuffer(raw, dtype=np.uint8).reshape(n, nb)
        pad = np.zeros((n, 8), dtype=np.uint8)
        pad[:, :nb] = arr
        return (pad.view("<u8").reshape(n) % np.uint64(m)).tolist()
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") % m for i in range(n)]


def mul_mod(a: Sequence[int], b: Sequence[int], n: int, m: int) -> list:
    """First n coefficients of a*b with entries reduced into [0, m)."""
    a = a[:n]
    b = b[:n]
    if not len(a) or not len(b) or n <= 0:
        return [0] * max(n, 0)
    nb = _nbytes(min(len(a), len(b)) * (m - 1) ** 2)
    z = _pack_nonneg(a, nb) * _pack_nonneg(b, nb)
    return _unpack_mod(z, nb, n, m)


def mul_exact(a: Sequence[int], b: Sequence[int], n: int) -> list:
    """First n coefficients of a*b over Z (signed entries, balanced digits)."""
    a = [int(x) for x in a[:n]]
    b = [int(x) for x in b[:n]]
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * n
    nb = _nbytes(2 * min(len(a), len(b)) * ma * mb + 1)
    k = 8 * nb

    def pack(v):
        pos = _pack_nonneg([x if x > 0 else 0 for x in v], nb)
        neg = _pack_nonneg([-x if x < 0 else 0 for x in v], nb)
        return pos - neg

    z = pack(a) * pack(b)
    half = 1 << (k - 1)
    offset = int.from_bytes((b"\0" * (nb - 1) + b"\x80") * n, "little")
    low = (int(z) + offset) & ((1 << (k * n)) - 1)
    raw = low.to_bytes(nb * n, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(n)]


def series_mul(a, b, n: int, m: Optional[int]) -> list:
    return mul_mod(a, b, n, m) if m else mul_exact(a, b, n)


def series_inverse(a: Sequence[int], n: int, m: Optional[int]) -> list:
    """Power series inverse to n terms by Newton iteration; a[0] must be a unit."""
    if m:
        g = [pow(int(a[0]), -1, m)]
    else:
        if abs(a[0]) != 1:
            raise ValueError("exact inverse needs leading coefficient +-1")
        g = [int(a[0])]
    size = 1
    while size < n:
        size = min(2 * size, n)
        e = series_mul(a, g, size, m)
        e = [(-x) % m if m else -x for x in e]
        e[0] = (e[0] + 2) % m if m else e[0] + 2
        g = series_mul(g, e, size, m)
    return g[:n]


def series_pow(a: Sequence[int], e: int, n: int, m: Optional[int]) -> list:
    if e < 0:
        a = series_inverse(a, n, m)
        e = -e
    result = [1] + [0] * (n - 1)
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = series_mul(result, base, n, m)
        e >>= 1
        if e:
            base = series_mul(base, base, n, m)
    return result


def euler_product(n: int) -> list:
    """Coefficients of prod_{k>=1} (1 - q^k) below q^n (pentagonal numbers)."""
    out = [0] * n
    k = 0
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= n:
            break
        s = -1 if k % 2 else 1
        out[g1] = s
        g2 = k * (3 * k + 1) // 2
        if k and g2 < n:
            out[g2] = s
        k += 1
    return out


# ---------------------------------------------------------------------------
# Fourier expansions

def _as_fraction_weight(w) -> Fraction:
    if isinstance(w, (list, tuple)):
        return Fraction(int(w[0]), int(w[1]))
    return Fraction(w)


@dataclass(frozen=True)
class FourierExpansion:
    """
    Coefficients c(f; n) for n = start + step*j, 0 <= j < len(coeffs), all such
    n below the exclusive precision bound.  Indices outside that progression
    or below start are zero.  modulus is l when the values are residues in
    [0, l); None for exact values (int, Fraction, QuadFieldElement).
    """
    coeffs: tuple
    start: int = 0
    step: int = 1
    precision: int = 0
    indexing: Indexing = Indexing.INTEGRAL
    weight: Fraction = Fraction(0)
    character: Optional[CharacterSpec] = None
    modulus: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        if self.step < 1:
            raise ValueError("step must be positive")
        expected = max(0, -(-(self.precision - self.start) // self.step))
        if len(self.coeffs) != expected:
            raise ValueError(f"{len(self.coeffs)} coefficients stored, "
                             f"{expected} expected for start {self.start}, step "
                             f"{self.step}, precision {self.precision}")
        object.__setattr__(self, "weight", _as_fraction_weight(self.weight))

    # construction ----------------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs: dict, precision: int, start: Optional[int] = None,
                  step: int = 1, **kw) -> "FourierExpansion":
        if start is None:
            start = min(coeffs) if coeffs else 0
        n = max(0, -(-(precision - start) // step))
        vals = [0] * n
        for i, v in coeffs.items():
            if i >= precision:
                continue
            j, rem = divmod(i - start, step)
            if rem or j < 0:
                if v:
                    raise ValueError(f"index {i} is off the progression {start} + {step}Z")
                continue
            vals[j] = v
        return cls(tuple(vals), start, step, precision, **kw)

    def with_coeffs(self, coeffs, **kw) -> "FourierExpansion":
        return replace(self, coeffs=tuple(coeffs), **kw)

    # access ----------------------------------------------------------------

    def __getitem__(self, n: int):
        if n >= self.precision:
            raise PrecisionError(f"index {n} is beyond precision {self.precision}")
        j, rem = divmod(n - self.start, self.step)
        if rem or j < 0:
            return 0
        return self.coeffs[j]

    def indices(self) -> range:
        return range(self.start, self.precision, self.step) if self.coeffs else range(0)

    def items(self) -> Iterable:
        """(n, c(f; n)) for all nonzero stored coefficients."""
        s, st = self.start, self.step
        for j, v in enumerate(self.coeffs):
            if v:
                yield s + st * j, v

    def as_dict(self) -> dict:
        return dict(self.items())

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, precision: int) -> "FourierExpansion":
        if precision > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {precision}")
        n = max(0, -(-(precision - self.start) // self.step))
        return replace(self, coeffs=self.coeffs[:n], precision=precision)

    def restep(self, step: int, start: Optional[int] = None) -> "FourierExpansion":
        """Re-store on a finer progression (step must divide the current one)."""
        if self.step % step:
            raise ValueError(f"step {step} does not divide {self.step}")
        if start is None:
            start = self.start
        if start > self.start or (self.start - start) % step:
            raise ValueError("new start must lie below the old one on the progression")
        return FourierExpansion.from_dict(self.as_dict(), self.precision, start, step,
                                          **self._meta())

    def _meta(self) -> dict:
        return dict(indexing=self.indexing, weight=self.weight, character=self.character,
                    modulus=self.modulus, label=self.label)

    def __repr__(self):
        shown = ", ".join(f"{n}: {v}" for n, v in list(self.items())[:8])
        more = ", ..." if sum(1 for v in self.coeffs if v) > 8 else ""
        mod = f" mod {self.modulus}" if self.modulus else ""
        return (f"FourierExpansion({self.label or '?'}, {self.indexing.value}, k={self.weight}, "
                f"{{{shown}{more}}}, B={self.precision}{mod})")

    # arithmetic --------------------------------------------------------------

    def _norm(self, v):
        if self.modulus and isinstance(v, int):
            return v % self.modulus
        return v

    def _aligned(self, other: "FourierExpansion"):
        if self.indexing != other.indexing:
            raise ValueError("indexing conventions differ")
        if self.modulus != other.modulus:
            raise ValueError("coefficient rings differ")
        step = gcd(self.step, other.step)
        if (self.start - other.start) % step:
            step = gcd(step, abs(self.start - other.start))
        start = min(self.start, other.start)
        prec = min(self.precision, other.precision)
        a = self if (self.step, self.start) == (step, start) else self.restep(step, start)
        b = other if (other.step, other.start) == (step, start) else other.restep(step, start)
        n = max(0, -(-(prec - start) // step))
        return a.coeffs[:n], b.coeffs[:n], start, step, prec

    def __add__(self, other: "FourierExpansion") -> "FourierExpansion":
        a, b, start, step, prec = self._aligned(other)
        vals = tuple(self._norm(x + y) for x, y in zip(a, b))
        return FourierExpansion(vals, start, step, prec, **self._meta())

    def __neg__(self):
        return self.with_coeffs(self._norm(-v) for v in self.coeffs)

    def __sub__(self, other: "FourierExpansion") -> "FourierExpansion":
        return self + (-other)

    def scale(self, s) -> "FourierExpansion":
        return self.with_coeffs(self._norm(s * v) for v in self.coeffs)

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if not isinstance(other, FourierExpansion):
            return self.scale(other)
        return series_product(self, other)

    def equal_on(self, other: "FourierExpansion", window: Optional[int] = None) -> bool:
        w = min(self.precision, other.precision) if window is None else window
        return (self.truncate(w) - other.truncate(w)).is_zero()

    def first_difference(self, other: "FourierExpansion"):
        d = self - other
        for n, v in d.items():
            return n
        return None

    # coefficient rings -------------------------------------------------------

    def reduce(self, fld: Union[CoefficientField, int]) -> "FourierExpansion":
        """Reduce exact coefficients into F_l; negative valuation raises per coefficient."""
        if isinstance(fld, int):
            fld = CoefficientField(fld)
        if self.modulus:
            if self.modulus != fld.ell:
                raise ValueError(f"already reduced mod {self.modulus}")
            return self
        if fld.kind == "inert":
            vals = tuple(reduce_quadratic(v, fld) if v else 0 for v in self.coeffs)
        else:
            vals = tuple(reduce_int(v, fld) if v else 0 for v in self.coeffs)
        return replace(self, coeffs=vals, modulus=fld.ell)


def series_product(f: FourierExpansion, g: FourierExpansion) -> FourierExpansion:
    if f.indexing != g.indexing or f.modulus != g.modulus:
        raise ValueError("cannot multiply expansions with different conventions")
    step = gcd(f.step, g.step)
    if f.step != g.step:
        f = f.restep(step)
        g = g.restep(step)
    start = f.start + g.start
    prec = min(f.precision + g.start, g.precision + f.start)
    n = max(0, -(-(prec - start) // step))
    if not all(isinstance(v, int) for v in f.coeffs + g.coeffs):
        vals = [0] * n
        for i, x in enumerate(f.coeffs[:n]):
            if x:
                for j, y in enumerate(g.coeffs[:n - i]):
                    vals[i + j] += x * y
        if f.modulus:
            vals = [v % f.modulus for v in vals]
    else:
        vals = series_mul(list(f.coeffs), list(g.coeffs), n, f.modulus)
    return FourierExpansion(tuple(vals), start, step, prec, f.indexing, f.weight + g.weight,
                            None, f.modulus, f"({f.label})*({g.label})")


# ---------------------------------------------------------------------------
# eta quotients and partitions

def _check_precision(B: int):
    if B < 1:
        raise ValueError(f"precision must be positive, got {B}")


def eta_quotient_expansion(spec: Sequence, precision: int, modulus: Optional[int] = None,
                           label: str = "") -> FourierExpansion:
    """
    prod eta(m tau)^e in 24th-indexing: index sum(m e) + 24 j carries the
    coefficient of q^j in prod (q^m; q^m)_inf^e.
    """
    _check_precision(precision)
    spec = [(int(m), int(e)) for m, e in spec]
    for m, _ in spec:
        if m < 1:
            raise ValueError("eta quotient factors need m >= 1")
    s0 = sum(m * e for m, e in spec)
    n = max(0, -(-(precision - s0) // 24))
    total = [1] + [0] * (n - 1) if n else []
    for m, e in spec:
        if not n or e == 0:
            continue
        nm = -(-n // m)
        base = euler_product(nm)
        if modulus:
            base = [x % modulus for x in base]
        part = series_pow(base, e, nm, modulus)
        spread = [0] * n
        spread[::m] = part[:len(spread[::m])]
        total = series_mul(total, spread, n, modulus)
    weight = Fraction(sum(e for _, e in spec), 2)
    r = s0 % 24
    char = CharacterSpec("eta", r) if gcd(r, 24) == 1 else None
    if not label:
        label = "*".join(f"eta({m}t)^{e}" if m > 1 else f"eta^{e}" for m, e in spec)
    return FourierExpansion(tuple(total), s0, 24, precision, Indexing.TWENTYFOURTH,
                            weight, char, modulus, label)


def eta_expansion(precision: int, modulus: Optional[int] = None) -> FourierExpansion:
    """eta in 24th-indexing: c(eta; (6k+1)^2) = (-1)^k."""
    _check_precision(precision)
    n = max(0, -(-(precision - 1) // 24))
    vals = euler_product(n)
    if modulus:
        vals = [v % modulus for v in vals]
    return FourierExpansion(tuple(vals), 1, 24, precision, Indexing.TWENTYFOURTH,
                            Fraction(1, 2), ETA_CHARACTER, modulus, "eta")


def partition_series_mod(ell: Optional[int], n_max: int) -> list:
    """p(n) mod ell for 0 <= n < n_max by Euler's pentagonal recurrence."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    pent = []
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= n_max:
            break
        s = 1 if k % 2 else -1
        pent.append((g1, s))
        g2 = k * (3 * k + 1) // 2
        if g2 < n_max:
            pent.append((g2, s))
        k += 1
    p = [0] * n_max
    p[0] = 1
    for n in range(1, n_max):
        acc = 0
        for g, s in pent:
            if g > n:
                break
            acc += s * p[n - g]
        p[n] = acc % ell if ell else acc
    return p


# ---------------------------------------------------------------------------
# operators

def extract_progression(f: FourierExpansion, M: int, beta: int) -> FourierExpansion:
    """Keep c(f; n) only for n = beta mod M."""
    if M < 1:
        raise ValueError("M must be positive")
    s, st = f.start, f.step
    vals = tuple(v if (s + st * j - beta) % M == 0 else 0 for j, v in enumerate(f.coeffs))
    return f.with_coeffs(vals, label=f"{f.label}|{M}Z+{beta % M}")


def U_operator(f: FourierExpansion, m: int) -> FourierExpansion:
    """c(U_m f; n) = c(f; m n); determined for m n < B."""
    if m < 1:
        raise ValueError("m must be positive")
    if f.indexing == Indexing.TWENTYFOURTH and gcd(m, 24) != 1 and m % 24:
        raise ValueError("U_m in 24th-indexing needs gcd(m, 24) = 1 (or 24 | m)")
    g = gcd(m, f.step)
    prec = (f.precision - 1) // m + 1
    if f.start % g:
        return FourierExpansion((), prec, 1, prec, **{**f._meta(), "label": f"U_{m}({f.label})"})
    new_step = f.step // g
    n0 = (f.start // g) * pow(m // g, -1, new_step) % new_step if new_step > 1 else 0
    lo = -(-f.start // m)
    start = lo + (n0 - lo) % new_step
    vals = []
    n = start
    while n < prec:
        vals.append(f[m * n])
        n += new_step
    return FourierExpansion(tuple(vals), start, new_step, max(prec, start), **{
        **f._meta(), "label": f"U_{m}({f.label})"}) if vals else \
        FourierExpansion((), prec, new_step, prec, **{**f._meta(), "label": f"U_{m}({f.label})"})


def twist_projection(f: FourierExpansion, ell: int, eps: int) -> FourierExpansion:
    """Keep c(f; n) with (-n/ell) = eps."""
    if ell % 2 == 0:
        raise ValueError("ell must be odd")
    s, st = f.start, f.step
    vals = tuple(v if kronecker_symbol(-(s + st * j), ell) == eps else 0
                 for j, v in enumerate(f.coeffs))
    return f.with_coeffs(vals, label=f"{f.label}[(-n/{ell})={eps}]")


def v24_map(f: FourierExpansion) -> FourierExpansion:
    """Read a 24th-indexed expansion as sum c(n/24) e(n tau); indices are kept."""
    if f.indexing != Indexing.TWENTYFOURTH:
        raise ValueError("v24_map needs 24th-indexing")
    char = f.character
    if char is not None and char.kind == "eta":
        char = CharacterSpec("theta", char.r, max(char.N, 1) * 576 // gcd(char.N, 576),
                             char.dirichlet)
    return replace(f, indexing=Indexing.INTEGRAL, character=char)


def v24_inverse(f: FourierExpansion) -> FourierExpansion:
    if f.indexing != Indexing.INTEGRAL:
        raise ValueError("v24_inverse needs integral indexing")
    return replace(f, indexing=Indexing.TWENTYFOURTH)


def integral_from_24(f: FourierExpansion, weight=None) -> FourierExpansion:
    """A 24th-indexed form supported on 24Z as an integral-indexed form (index n/24)."""
    if f.indexing != Indexing.TWENTYFOURTH or f.start % 24 or f.step % 24:
        raise ValueError("form is not supported on 24Z")
    g = U_operator(replace(f, indexing=Indexing.INTEGRAL), 24)
    w = f.weight if weight is None else weight
    return replace(g, weight=_as_fraction_weight(w), character=CharacterSpec(), label=f.label)


# ---------------------------------------------------------------------------
# multiplicative coefficients

def hecke_multiplicative_coefficients(eigenvalues: dict, weight: int, level: int,
                                      n_max: int, character=None) -> list:
    """
    a(n), 0 <= n < n_max, of a normalized integral-weight eigenform from a(p),
    with a(p^(j+1)) = a(p) a(p^j) - chi(p) p^(w-1) a(p^(j-1)) and chi(p) = 0 at
    primes dividing the level.
    """
    spf = list(range(n_max))
    for i in range(2, int(n_max ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, n_max, i):
                if spf[j] == j:
                    spf[j] = i
    chi = character or CharacterSpec("integral", 0, level)
    a = [0] * n_max
    if n_max > 1:
        a[1] = 1
    for n in range(2, n_max):
        p = spf[n]
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        if m > 1:
            a[n] = a[m] * a[n // m]
            continue
        if p not in eigenvalues:
            raise KeyError(f"missing eigenvalue a({p})")
        ap = eigenvalues[p]
        if e == 1:
            a[n] = ap
        else:
            a[n] = ap * a[n // p] - chi.chi(p) * p ** (weight - 1) * a[n // (p * p)]
    return a


# ---------------------------------------------------------------------------
# fixtures

def _parse_value(v, d):
    if isinstance(v, int):
        return v
    if isinstance(v, list) and len(v) == 4:
        q = QuadFieldElement(Fraction(v[0], v[1]), Fraction(v[2], v[3]), d or 1)
        if not q.b:
            return q.a if q.a.denominator != 1 else int(q.a)
        if d is None:
            raise ValueError("quadratic coefficient without field.d")
        return q
    if isinstance(v, list) and len(v) == 2:
        return Fraction(v[0], v[1])
    raise ValueError(f"bad coefficient value {v!r}")


def _dump_value(v):
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else [v.numerator, v.denominator, 0, 1]
    if isinstance(v, QuadFieldElement):
        return v.to_json()
    raise TypeError(f"cannot serialize {v!r}")


def fixture_to_json(f: FourierExpansion, d: Optional[int] = None, extra: Optional[dict] = None):
    obj = {
        "label": f.label,
        "indexing": f.indexing.value,
        "weight": [f.weight.numerator, f.weight.denominator],
        "character": (f.character or CharacterSpec()).to_json(),
        "coefficients": [[n, _dump_value(v)] for n, v in f.items()],
        "precision": f.precision,
    }
    if d is not None:
        obj["field"] = {"d": d}
    if f.step != 1:
        obj["support"] = {"start": f.start, "step": f.step}
    if extra:
        obj.update(extra)
    return obj


def fixture_from_json(obj: dict, precision: Optional[int] = None) -> FourierExpansion:
    """
    Build an exact expansion from a fixture object.  Besides explicit
    "coefficients", a fixture may carry "hecke" (level and prime eigenvalues of
    an integral-weight newform) or "eta_quotient" data; precision may then be
    lowered by the caller.
    """
    for key in ("label", "indexing", "weight", "precision"):
        if key not in obj:
            raise ValueError(f"fixture lacks '{key}'")
    indexing = Indexing(obj["indexing"])
    weight = _as_fraction_weight(obj["weight"])
    char = CharacterSpec.from_json(obj.get("character"))
    d = obj.get("field", {}).get("d") if obj.get("field") else None
    B = int(obj["precision"]) if precision is None else min(precision, int(obj["precision"]))
    meta = dict(indexing=indexing, weight=weight, character=char, label=obj["label"])
    if "hecke" in obj:
        h = obj["hecke"]
        eig = {int(p): _parse_value(a, d) for p, a in h["eigenvalues"]}
        a = hecke_multiplicative_coefficients(eig, int(weight), int(h["level"]), B)
        return FourierExpansion(tuple(a[1:]), 1, 1, B, **meta)
    if "eta_quotient" in obj:
        f = eta_quotient_expansion(obj["eta_quotient"], B * 24 if obj.get("rescale") else B)
        if obj.get("rescale"):
            f = integral_from_24(f, weight)
        return replace(f, label=obj["label"], weight=weight,
                       character=char if obj.get("character") else f.character)
    sup = obj.get("support", {})
    coeffs = {int(n): _parse_value(v, d) for n, v in obj["coefficients"]}
    start = int(sup.get("start", min(coeffs) if coeffs else 0))
    start = min([start] + list(coeffs))
    return FourierExpansion.from_dict(coeffs, B, start, int(sup.get("step", 1)), **meta)


def validate_fixture(obj: dict) -> list:
    """List of invariant violations of a fixture object (empty when valid)."""
    errors = []
    try:
        f = fixture_from_json(obj)
    except Exception as exc:   # noqa: BLE001 - report any parse failure
        return [f"{obj.get('label', '?')}: {exc}"]
    if f.character and f.character.kind == "eta" and f.indexing == Indexing.TWENTYFOURTH:
        for n, _ in f.items():
            if (n - f.character.r) % 24:
                errors.append(f"{f.label}: index {n} not = r = {f.character.r} mod 24")
                break
    d = obj.get("field", {}).get("d") if obj.get("field") else None
    red = obj.get("field", {}).get("reduction") if obj.get("field") else None
    if red:
        try:
            CoefficientField(int(red["ell"]), None, QuadraticReduction(d, red.get("sqrt_image")))
        except Exception as exc:   # noqa: BLE001
            errors.append(f"{f.label}: {exc}")
    if f.weight.denominator not in (1, 2):
        errors.append(f"{f.label}: weight {f.weight} is not integral or half-integral")
    return errors


DATA_DIR = Path(__file__).resolve().parent / "data"


def load_fixture(name_or_path, precision: Optional[int] = None) -> FourierExpansion:
    p = Path(name_or_path)
    if not p.exists():
        p = DATA_DIR / f"{name_or_path}.json"
    with open(p) as fh:
        return fixture_from_json(json.load(fh), precision)


def load_fixture_json(name_or_path) -> dict:
    p = Path(name_or_path)
    if not p.exists():
        p = DATA_DIR / f"{name_or_path}.json"
    with open(p) as fh:
        return json.load(fh)
