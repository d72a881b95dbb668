"""
Scanning, maximality, and the implication rules for Ramanujan-type
congruences c(f; Mn + beta) = 0 (mod l).

Every rule here is an implication generator: it proposes new progressions,
and each proposal is scanned on the same window before it is marked
confirmed.  A proposal that fails its scan makes the run inconsistent,
which means either the input claim was false or the window is too short.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arith import (CoefficientField, FieldElement, factor_progression, factorint,
                    is_fundamental_discriminant, kronecker_symbol, reduce_int,
                    reduce_quadratic, square_class_equal, square_class_orbit,
                    squarefree_decomposition)
from .qseries import (CharacterSpec, FourierExpansion, Indexing, PrecisionError,
                      eta_quotient_expansion, twist_projection, U_operator)


class InputError(ValueError):
    """A claim or pipeline request that violates its preconditions."""


# ---------------------------------------------------------------------------
# claims and scanning

@dataclass(frozen=True)
class CongruenceClaim:
    """
    c(f; Mn + beta) = 0 mod l for all n (for n prime to every p in `gap`,
    if given), checked below `bound`.
    """
    M: int
    beta: int
    ell: int
    label: str = ""
    bound: Optional[int] = None
    gap: tuple = ()

    def __post_init__(self):
        if self.M < 1:
            raise InputError(f"M must be positive, got {self.M}")
        object.__setattr__(self, "beta", self.beta % self.M if not self.gap else self.beta)

    def describe(self) -> str:
        s = f"{self.M}Z+{self.beta}"
        if self.gap:
            s = f"{self.M}n+{self.beta}, n prime to {'*'.join(map(str, self.gap))}"
        return s


def partition_claim(M: int, beta: int, ell: int, bound: Optional[int] = None) -> CongruenceClaim:
    """p(Mn + beta) = 0 as a claim on eta^(-1) in 24th-indexing: index 24m - 1."""
    return CongruenceClaim(24 * M, 24 * beta - 1, ell, f"p({M}n+{beta})", bound)


@dataclass
class ScanResult:
    verified: bool
    counterexample: Optional[int]
    checked: int
    bound: int

    def to_json(self):
        return asdict(self)


def _reducer(f: FourierExpansion, ell: int, fld: Optional[CoefficientField]):
    if f.modulus:
        if f.modulus != ell:
            raise InputError(f"form is reduced mod {f.modulus}, claim is mod {ell}")
        return lambda v: v
    fld = fld or CoefficientField(ell)

    def red(v):
        if isinstance(v, int):
            return v % ell
        if fld.kind == "inert":
            return reduce_quadratic(v, fld)
        return reduce_int(v, fld)
    return red


def _progression_js(f: FourierExpansion, M: int, beta: int, bound: int) -> range:
    """Storage positions j with start + step*j = beta (mod M) and index < bound."""
    s, st = f.start, f.step
    g = math.gcd(st, M)
    if (beta - s) % g:
        return range(0)
    Mg = M // g
    j0 = ((beta - s) // g) * pow(st // g, -1, Mg) % Mg if Mg > 1 else 0
    jmax = -(-(bound - s) // st) if bound > s else 0
    return range(j0, min(jmax, len(f.coeffs)), Mg)


def _bound(f: FourierExpansion, claim: CongruenceClaim) -> int:
    b = f.precision if claim.bound is None else claim.bound
    if b > f.precision:
        raise PrecisionError(f"scan bound {b} exceeds precision {f.precision} of {f.label}")
    return b


def scan(f: FourierExpansion, claim: CongruenceClaim,
         fld: Optional[CoefficientField] = None) -> ScanResult:
    """Check every index of the claim below the bound; report the first violation."""
    B = _bound(f, claim)
    red = _reducer(f, claim.ell, fld)
    if claim.gap:
        return _scan_gap(f, claim, B, red)
    js = _progression_js(f, claim.M, claim.beta, B)
    coeffs = f.coeffs
    if f.modulus and len(js) > 64:
        arr = np.fromiter((coeffs[j] for j in js), dtype=object, count=len(js)) \
            if not isinstance(coeffs[0], int) else np.asarray(coeffs, dtype=np.int64)[js.start:js.stop:js.step]
        nz = np.flatnonzero(arr)
        if len(nz):
            j = js[int(nz[0])]
            return ScanResult(False, f.start + f.step * j, int(nz[0]) + 1, B)
        return ScanResult(True, None, len(js), B)
    for i, j in enumerate(js):
        v = coeffs[j]
        if v and red(v):
            return ScanResult(False, f.start + f.step * j, i + 1, B)
    return ScanResult(True, None, len(js), B)


def _scan_gap(f, claim, B, red) -> ScanResult:
    M, beta = claim.M, claim.beta
    n = -(-(f.start - beta) // M)
    checked = 0
    while M * n + beta < B:
        if all(n % p for p in claim.gap):
            idx = M * n + beta
            v = f[idx]
            checked += 1
            if v and red(v):
                return ScanResult(False, idx, checked, B)
        n += 1
    return ScanResult(True, None, checked, B)


def progression_support_size(f: FourierExpansion, M: int, beta: int) -> tuple:
    """
    (L, count): residues mod L = lcm(M, step) in both MZ+beta and the storage
    progression of f.  Two progressions with equal counts (one containing the
    other) see exactly the same coefficients of f.
    """
    L = M * f.step // math.gcd(M, f.step)
    g = math.gcd(M, f.step)
    if (beta - f.start) % g:
        return L, 0
    return L, L // (M * f.step // g)


def _same_support(f, M_small, M_big, beta) -> bool:
    L1, c1 = progression_support_size(f, M_small, beta)
    L2, c2 = progression_support_size(f, M_big, beta)
    L = L1 * L2 // math.gcd(L1, L2)
    return c1 * (L // L1) == c2 * (L // L2)


@dataclass
class MaximalityResult:
    maximal: bool
    witnesses: dict             # q -> counterexample index on (M/q)Z + beta
    extends_to: Optional[int]   # a proper divisor M' on which the claim also holds
    support_forced: list        # primes q whose divisor sees no new support
    degenerate: bool
    bound: int

    def to_json(self):
        d = asdict(self)
        d["witnesses"] = {str(k): v for k, v in self.witnesses.items()}
        return d


def certify_maximal(f: FourierExpansion, claim: CongruenceClaim,
                    fld: Optional[CoefficientField] = None) -> MaximalityResult:
    """
    Maximal at the bound: for every prime q | M the progression (M/q)Z + beta
    has a nonvanishing coefficient.  Divisors that add no index of the
    support of f are skipped (they are forced by the support, not by f).
    """
    B = _bound(f, claim)
    red = _reducer(f, claim.ell, fld)
    degenerate = all(not red(v) for v in f.coeffs[:len(_progression_js(f, 1, 0, B))] if v)
    witnesses, forced = {}, []
    extends = None
    for q in sorted(factorint(claim.M)) if claim.M > 1 else []:
        Mq = claim.M // q
        if _same_support(f, Mq, claim.M, claim.beta):
            forced.append(q)
            continue
        res = scan(f, CongruenceClaim(Mq, claim.beta, claim.ell, bound=B), fld)
        if res.verified:
            extends = Mq
        else:
            witnesses[q] = res.counterexample
    maximal = extends is None and not degenerate
    return MaximalityResult(maximal, witnesses, extends, forced, degenerate, B)


# ---------------------------------------------------------------------------
# implication rules

def implied_progressions(claim: CongruenceClaim, N_chi: int = 1) -> dict:
    """
    The square-class orbit {u^2 beta mod M : gcd(u, M N_chi) = 1} and the
    reduced period gcd(M, M_sf beta) (M itself when beta = 0).
    """
    orbit = square_class_orbit(claim.beta, claim.M, N_chi)
    fac = factor_progression(claim.M, claim.beta)
    M_red = claim.M if claim.beta % claim.M == 0 else math.gcd(claim.M, fac.M_sf * claim.beta)
    return {
        "orbit": orbit,
        "reduced": CongruenceClaim(M_red, claim.beta % M_red, claim.ell, claim.label, claim.bound),
    }


def up_reduction(claim: CongruenceClaim, p: int, N: int = 1) -> CongruenceClaim:
    """The claim on M_p^# Z + beta, valid when M_p | beta and p is prime to l N."""
    fac = factor_progression(claim.M, claim.beta)
    if claim.M % p:
        raise InputError(f"{p} does not divide M = {claim.M}")
    if math.gcd(p, claim.ell * N) != 1:
        raise InputError(f"p = {p} must be prime to l N = {claim.ell * N}")
    Mp = fac.M_p(p)
    if claim.beta % Mp:
        raise InputError(f"M_{p} = {Mp} does not divide beta = {claim.beta}")
    Msh = fac.M_p_sharp(p)
    return CongruenceClaim(Msh, claim.beta % Msh, claim.ell, claim.label, claim.bound)


@dataclass
class GapPrediction:
    rule: str
    p: int
    claims: list
    results: list = field(default_factory=list)

    def to_json(self):
        return {"rule": self.rule, "p": self.p,
                "claims": [c.describe() for c in self.claims],
                "results": [r.to_json() for r in self.results]}


def _is_square(n: int) -> bool:
    r = math.isqrt(n)
    return r * r == n


def gap_predictions(claim: CongruenceClaim, N: int = 1, max_claims: int = 200) -> list:
    """
    For each p | M prime to l N with M_p a square (l != 2 when M_p = p^2):
    the gap congruence on (M/p)n + M_p beta', n prime to p, with
    M_p beta' = beta mod M_p^#; and the companion full-progression claims
    (every beta' exactly divisible by p when M_p = p^2, the orbit with the
    same gcd with M_p and square class mod M_p^# otherwise).
    """
    out = []
    M, beta, ell = claim.M, claim.beta, claim.ell
    fac = factor_progression(M, beta)
    for p in sorted(factorint(M)) if M > 1 else []:
        if math.gcd(p, ell * N) != 1:
            continue
        Mp, Msh = fac.M_p(p), fac.M_p_sharp(p)
        if not _is_square(Mp):
            continue
        if Mp == p * p and ell == 2:
            continue
        # M_p beta' = beta mod M_p^#
        bp = beta * pow(Mp, -1, Msh) % Msh if Msh > 1 else 0
        gap = CongruenceClaim(M // p, Mp * bp, ell, claim.label, claim.bound, gap=(p,))
        out.append(GapPrediction("gap", p, [gap]))
        companions = []
        if Mp == p * p:
            if beta % p == 0 and beta % (p * p):
                for b2 in range(M):
                    if b2 % p == 0 and b2 % (p * p) and (b2 - beta) % Msh == 0:
                        companions.append(CongruenceClaim(M, b2, ell, claim.label, claim.bound))
            rule = "exact-p-stratum"
        else:
            g = math.gcd(beta, Mp)
            for b2 in range(M):
                if math.gcd(b2, Mp) == g and square_class_equal(b2, beta, Msh):
                    companions.append(CongruenceClaim(M, b2, ell, claim.label, claim.bound))
            rule = "square-power-orbit"
        if companions:
            out.append(GapPrediction(rule, p, companions[:max_claims]))
    return out


def prime_power_localizations(claim: CongruenceClaim) -> list:
    """Candidate claims on M_p Z + beta, one per p | M (eigenform rule)."""
    fac = factor_progression(claim.M, claim.beta)
    return [(p, CongruenceClaim(fac.M_p(p), claim.beta % fac.M_p(p), claim.ell, claim.label,
                                claim.bound))
            for p in sorted(factorint(claim.M))] if claim.M > 1 else []


# ---------------------------------------------------------------------------
# fundamental discriminants

def _sign_for_weight(k) -> int:
    k = Fraction(k)
    e = k - Fraction(1, 2)
    if e.denominator != 1:
        raise InputError(f"weight {k} is not half-integral")
    return 1 if int(e) % 2 == 0 else -1


def fundamental_discriminants(sign: int, bound: int) -> list:
    """Fundamental discriminants D of the given sign with |D| <= bound (D = 1 included)."""
    return [sign * a for a in range(1, bound + 1) if is_fundamental_discriminant(sign * a)]


def in_dk(D: int, M: int, beta: int) -> bool:
    """Membership in D_k by its definition: |D| m^2 = M_1 n_0 with n_0 in the class of beta_0 mod M_0."""
    fac = factor_progression(M, beta)
    a = abs(D)
    for m in range(1, M + 1):
        t = a * m * m
        if t % fac.M1:
            continue
        if square_class_equal(t // fac.M1, fac.beta0, fac.M0):
            return True
    return False


def in_dk_explicit(D: int, M: int, beta: int) -> bool:
    """The explicit description: M_fd | D and |D|/M_fd in the class of beta_0 mod M."""
    fac = factor_progression(M, beta)
    a = abs(D)
    return a % fac.M_fd == 0 and square_class_equal(a // fac.M_fd, fac.beta0, M)


def dktilde_data(M: int, beta: int) -> dict:
    """M = M_s^2 M_fd, M_sf and beta_1 = beta M_sf / M_s^2 for the D-tilde sets."""
    M_fd, M_s = squarefree_decomposition(M)
    fac = factor_progression(M, beta)
    b1 = Fraction(beta * fac.M_sf, M_s * M_s)
    return {"M_fd": M_fd, "M_s": M_s, "M_sf": fac.M_sf, "beta1": b1}


def in_dktilde(D: int, M: int, beta: int, ell: int) -> bool:
    data = dktilde_data(M, beta)
    b1 = data["beta1"]
    if b1.denominator != 1:
        raise InputError(f"beta_1 = {b1} is not integral; the congruence cannot be maximal")
    b1 = int(b1)
    a = abs(D)
    for p in factorint(M) if M > 1 else {}:
        if kronecker_symbol(a, p) != kronecker_symbol(b1, p):
            return False
    if ell == 2:
        for p in factorint(data["M_fd"]) if data["M_fd"] > 1 else {}:
            if a % p or b1 % p:
                return False
            if kronecker_symbol(a // p, p) != kronecker_symbol(b1 // p, p):
                return False
    return True


@dataclass
class DiscriminantSet:
    kind: str
    k: Fraction
    M: int
    beta: int
    bound: int
    members: list

    def to_json(self):
        return {"kind": self.kind, "k": str(self.k), "M": self.M, "beta": self.beta,
                "bound": self.bound, "members": self.members}


def enumerate_discriminants(kind: str, k, M: int, beta: int, ell: int = 0,
                            bound: int = 100, explicit: bool = False) -> DiscriminantSet:
    """
    kind "dk": D with sgn D = (-1)^(k-1/2) and |D| m^2 = M_1 n_0, n_0 in the
    square class of beta_0 mod M_0 (explicit=True uses the M_fd description,
    valid for maximal congruences).  kind "dktilde": the Jacobi-symbol set,
    with the extra conditions at p | M_fd when l = 2.
    """
    sign = _sign_for_weight(k)
    cands = fundamental_discriminants(sign, bound)
    if kind == "dk":
        test = (lambda D: in_dk_explicit(D, M, beta)) if explicit else (lambda D: in_dk(D, M, beta))
    elif kind == "dktilde":
        test = lambda D: in_dktilde(D, M, beta, ell)    # noqa: E731
    else:
        raise InputError(f"unknown discriminant set {kind!r}")
    return DiscriminantSet(kind, Fraction(k), M, beta, bound, [D for D in cands if test(D)])


def discriminant_set_sides(k, M: int, beta: int, limit: int) -> tuple:
    """
    Both sides of the set identity
        {M_1 n_0 : n_0 > 0 in the class of beta_0 mod M}
        = {|D| M_s^2 m^2 : D in D_k, gcd(m, M) = 1},
    restricted to [1, limit] and to integers n with sgn * n = 0, 1 mod 4,
    the support of the plus space.
    """
    sign = _sign_for_weight(k)
    fac = factor_progression(M, beta)
    plus = lambda n: (sign * n) % 4 in (0, 1)     # noqa: E731
    left = {fac.M1 * n0 for n0 in range(1, limit // fac.M1 + 1)
            if square_class_equal(n0, fac.beta0, M) and plus(fac.M1 * n0)}
    Ds = enumerate_discriminants("dk", k, M, beta, bound=limit, explicit=True).members
    right = set()
    for D in Ds:
        base = abs(D) * fac.M_s ** 2
        m = 1
        while base * m * m <= limit:
            if math.gcd(m, M) == 1:
                right.add(base * m * m)
            m += 1
    return left, right


# ---------------------------------------------------------------------------
# analysis report

@dataclass
class CongruenceReport:
    label: str
    claim: dict
    scan: dict
    maximality: dict
    implications: list
    discriminants: dict
    consistent: bool
    notes: list

    def to_json(self):
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, s: str) -> "CongruenceReport":
        return cls(**json.loads(s))


def _check(f, c: CongruenceClaim, fld) -> dict:
    r = scan(f, c, fld)
    status = "confirmed" if r.verified and r.checked else ("empty" if r.verified else "failed")
    return {"claim": c.describe(), "status": status, "checked": r.checked,
            "counterexample": r.counterexample}


def analyze(f: FourierExpansion, M: int, beta: int, ell: int, bound: Optional[int] = None,
            N: int = 1, fld: Optional[CoefficientField] = None,
            disc_bound: int = 200, max_orbit: int = 200) -> CongruenceReport:
    """
    Scan the claim, certify maximality, then derive and re-verify every
    implied progression (square classes, reduced period, U_p reductions,
    gap congruences, prime-power localizations) and check c(f; |D|) on the
    discriminant sets.  consistent is False iff a derived claim fails.
    """
    claim = CongruenceClaim(M, beta, ell, f.label, bound)
    B = _bound(f, claim)
    if f.indexing == Indexing.TWENTYFOURTH:
        N = N * 24 // math.gcd(N, 24)
    notes = []
    res = scan(f, claim, fld)
    scan_d = res.to_json()
    implications = []
    consistent = True
    if not res.verified:
        notes.append("claim fails its scan; no implications derived")
        return CongruenceReport(f.label, {"M": M, "beta": beta % M, "ell": ell, "bound": B},
                                scan_d, {}, [], {}, True, notes)
    mx = certify_maximal(f, claim, fld)

    def record(rule, c):
        nonlocal consistent
        entry = _check(f, c, fld)
        entry["rule"] = rule
        if entry["status"] == "failed":
            consistent = False
        implications.append(entry)

    imp = implied_progressions(claim, N)
    for b2 in imp["orbit"][:max_orbit]:
        if b2 != claim.beta:
            record("square-class", CongruenceClaim(M, b2, ell, f.label, B))
    if imp["reduced"].M != M:
        record("reduced-period", imp["reduced"])
    fac = factor_progression(M, beta)
    for p in sorted(factorint(M)) if M > 1 else []:
        if math.gcd(p, ell * N) == 1 and beta % fac.M_p(p) == 0:
            record(f"U_{p}-reduction", up_reduction(claim, p, N))
    if mx.maximal:
        for gp in gap_predictions(claim, N, max_orbit):
            for c in gp.claims:
                record(f"{gp.rule}@{gp.p}", c)
    else:
        notes.append("gap rules need a maximal congruence; skipped")
    for p, c in prime_power_localizations(claim):
        entry = _check(f, c, fld)
        entry["rule"] = f"localization@{p} (holds for eigenforms)"
        entry["advisory"] = True
        implications.append(entry)
    discs = {}
    if f.weight.denominator == 2 and math.gcd(M, ell * N) == 1 and mx.maximal:
        red = _reducer(f, ell, fld)
        for kind in ("dk", "dktilde"):
            try:
                ds = enumerate_discriminants(kind, f.weight, M, beta, ell,
                                             min(disc_bound, B - 1))
            except InputError as exc:
                notes.append(str(exc))
                continue
            status = {}
            for D in ds.members:
                if abs(D) < B:
                    status[str(D)] = "zero" if not red(f[abs(D)]) else "nonzero"
            discs[kind] = {"members": ds.members, "coefficient_status": status}
    return CongruenceReport(f.label, {"M": M, "beta": beta % M, "ell": ell, "bound": B},
                            scan_d, mx.to_json(), implications, discs, consistent, notes)


def square_class_split_check(f: FourierExpansion, p: int, beta0: int, ell: int,
                    bound: Optional[int] = None, fld=None) -> dict:
    """
    Scan p^2(pZ + b) for every b prime to p; the symbol (b/p) should decide
    the outcome when the claim at beta0 is maximal.
    """
    out = {}
    for b in range(1, p):
        r = scan(f, CongruenceClaim(p ** 3, p * p * b, ell, f.label, bound), fld)
        out[b] = {"symbol": kronecker_symbol(b, p), "verified": r.verified,
                  "counterexample": r.counterexample}
    s0 = kronecker_symbol(beta0, p)
    agree = all(v["verified"] == (v["symbol"] == s0) for v in out.values())
    return {"by_residue": out, "two_sided": agree}


# ---------------------------------------------------------------------------
# partitions

def partition_coefficients_mod(ell: int, index_bound: int) -> FourierExpansion:
    """eta^(-1) mod l in 24th-indexing below index_bound."""
    return eta_quotient_expansion([(1, -1)], index_bound, ell, label="eta^-1")


def f_ell_delta(ell: int, delta: int, precision: int, eta_inv: Optional[FourierExpansion] = None):
    """
    f_{l,delta} mod l in 24th-indexing below `precision`, with its weight and
    eta-character exponent: U_l(eta^-1), weight (l-2)/2, r = -l for delta = 0;
    the (-n/l) = -1 part of eta^-1, weight (l^2-2)/2, r = -1 for delta = -1.
    """
    if ell <= 3:
        raise InputError("l must exceed 3")
    if delta == 0:
        need = ell * (precision - 1) + 1
        src = eta_inv if eta_inv is not None and eta_inv.precision >= need else \
            partition_coefficients_mod(ell, need)
        f = U_operator(src.truncate(need), ell)
        k, r = Fraction(ell - 2, 2), -ell
    elif delta == -1:
        src = eta_inv if eta_inv is not None and eta_inv.precision >= precision else \
            partition_coefficients_mod(ell, precision)
        f = twist_projection(src.truncate(precision), ell, -1)
        k, r = Fraction(ell * ell - 2, 2), -1
    else:
        raise InputError("delta must be 0 or -1")
    char = CharacterSpec("eta", r % 24)
    return FourierExpansion(f.coeffs, f.start, f.step, f.precision, Indexing.TWENTYFOURTH, k,
                            char, ell, f"f_{{{ell},{delta}}}"), k, r


def scan_partition_progressions(eta_inv: FourierExpansion, modulus_part: int, ell: int,
                                delta: Optional[int] = None, min_terms: int = 3) -> list:
    """
    All beta (mod modulus_part) with p(modulus_part n + beta) = 0 mod l for every
    index below the precision of eta_inv, keeping only those with at least
    min_terms indices in range.  Filter by delta = ((1 - 24 beta)/l) if given.
    """
    a = np.asarray(eta_inv.coeffs, dtype=np.int64) % ell
    if eta_inv.start != -1 or eta_inv.step != 24:
        raise InputError("expected eta^-1 in 24th-indexing")
    W = modulus_part
    n_rows = len(a) // W
    if n_rows < min_terms:
        return []
    full = a[:n_rows * W].reshape(n_rows, W)
    zero_cols = np.flatnonzero(~full.any(axis=0))
    tail = a[n_rows * W:]
    found = []
    for b in zero_cols.tolist():
        if b < len(tail) and tail[b]:
            continue
        if delta is not None and kronecker_symbol(1 - 24 * b, ell) != delta:
            continue
        found.append(b)
    return found


@dataclass
class PipelineReport:
    ell: int
    delta: int
    q: int
    precision: int
    weight: str
    r: int
    degenerate: bool
    min_poly: Optional[str] = None
    eigenvalues: list = field(default_factory=list)
    nilpotent: Optional[bool] = None
    certified_window: Optional[int] = None
    cross_check: dict = field(default_factory=dict)
    partition_scan: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self):
        return asdict(self)


def partition_pipeline(ell: int, delta: int, q: int, precision: int,
                       max_degree: int = 6, scan_partitions: bool = True) -> PipelineReport:
    """
    Build f_{l,delta} mod l, decompose it under T_q, and compare the
    generalized eigenvalues with +-q^-1, +-q^-2 and nilpotency.  The cross
    check pairs "lambda^2 = q^-2" with the m = 1 vanishing criterion.
    """
    from .hecke import HeckeContext, KrylovWindowError, krylov_decompose
    from .lseries import criterion_eps_pm1
    from .arith import is_prime
    if not is_prime(q) or q <= 3 or q == ell:
        raise InputError("q must be a prime > 3 different from l")
    if delta not in (0, -1):
        raise InputError("delta must be 0 or -1")
    need = ell * precision if delta == 0 else precision
    eta_inv = partition_coefficients_mod(ell, need)
    f, k, r = f_ell_delta(ell, delta, precision, eta_inv)
    rep = PipelineReport(ell, delta, q, precision, str(k), r, f.is_zero())
    if rep.degenerate:
        rep.notes.append(f"f_{{{ell},{delta}}} vanishes mod {ell} below {precision}")
        return rep
    fld = CoefficientField(ell)
    ctx = HeckeContext(q, k, f.character, fld)
    try:
        mod = krylov_decompose(f, ctx, max_degree)
    except KrylovWindowError as exc:
        rep.notes.append(f"Krylov window exhausted: {exc} (rank {exc.achieved_rank})")
        return rep
    F = mod.field
    qi = F(q).inverse()
    rep.min_poly = mod.to_json()["min_poly"]
    rep.certified_window = mod.certified_window
    lam_info = []
    any_q2, any_pred = False, False
    for lam, e in mod.factors:
        lam2 = lam * lam
        sq2 = lam2 == qi ** 2
        sq4 = lam2 == qi ** 4
        pred = {}
        if lam.b == 0:
            for eps in (1, -1):
                pred[str(eps)] = criterion_eps_pm1(int(lam), q, k, r, eps, 1, ell)
        predicted = any(pred.values())
        any_q2 |= sq2
        any_pred |= predicted
        lam_info.append({
            "lambda": lam.to_json(), "multiplicity": e,
            "is_pm_q^-1": lam == qi or lam == -qi,
            "is_pm_q^-2": lam == qi ** 2 or lam == -(qi ** 2),
            "lambda^2=q^-2": sq2, "lambda^2=q^-4": sq4,
            "m1_criterion": pred,
        })
    rep.eigenvalues = lam_info
    rep.nilpotent = all(not lam for lam, _ in mod.factors)
    rep.cross_check = {"lambda^2=q^-2 detected": any_q2, "m1 criterion predicts": any_pred,
                       "agree": any_q2 == any_pred}
    if scan_partitions:
        out = {}
        for tag, qq in (("q^3", q ** 3), ("q^4", q ** 4)):
            W = ell * qq
            found = scan_partition_progressions(eta_inv, W, ell, delta)
            # beta_0 - 1 = (beta - 1)/q^2 with beta = 24 b must be integral
            b0 = {b: (24 * b - 1) // (q * q) + 1 for b in found[:20] if (24 * b - 1) % (q * q) == 0}
            out[tag] = {"modulus": 24 * ell * qq, "beta": found[:20], "count": len(found),
                        "terms_per_class": len(eta_inv.coeffs) // W,
                        "beta0": {str(b): v for b, v in b0.items()}}
        rep.partition_scan = out
    return rep


# ---------------------------------------------------------------------------
# coefficients far beyond the stored window

class EigenformCoefficients:
    """
    Coefficients of a normalized integral-weight newform with trivial
    character from its prime eigenvalues: a(mn) = a(m)a(n) for coprime m, n
    and a(p^(j+1)) = a_p a(p^j) - p^(w-1) a(p^(j-1)) (p not dividing the level).
    """

    def __init__(self, eigenvalues: dict, weight: int, level: int):
        self.eig = dict(eigenvalues)
        self.w = int(weight)
        self.level = level
        self._pp = {}

    @classmethod
    def from_form(cls, f: FourierExpansion, level: int, prime_bound: Optional[int] = None):
        from .arith import primes_below
        B = min(f.precision, prime_bound or f.precision)
        return cls({p: f[p] for p in primes_below(B)}, int(f.weight), level)

    def prime_power(self, p: int, e: int):
        key = (p, e)
        if key in self._pp:
            return self._pp[key]
        if p not in self.eig:
            raise PrecisionError(f"no eigenvalue stored at p = {p}")
        ap = self.eig[p]
        chi = 0 if self.level % p == 0 else p ** (self.w - 1)
        seq = [1, ap]
        for _ in range(2, e + 1):
            seq.append(ap * seq[-1] - chi * seq[-2])
        for j, v in enumerate(seq):
            self._pp[(p, j)] = v
        return seq[e]

    def __call__(self, n: int):
        if n < 1:
            return 0
        out = 1
        for p, e in factorint(n).items() if n > 1 else []:
            out *= self.prime_power(p, e)
            if not out:
                return 0
        return out


def scan_function(coef, claim: CongruenceClaim, n_terms: int) -> ScanResult:
    """
    Like scan, but for a coefficient callable (exact values, reduced mod l)
    over the first n_terms admissible n >= 0 (n prime to the gap primes).
    """
    M, beta, ell = claim.M, claim.beta, claim.ell
    checked, n = 0, 0
    while checked < n_terms:
        if all(n % p for p in claim.gap):
            idx = M * n + beta
            if idx > 0:
                v = coef(idx)
                checked += 1
                if Fraction(v).numerator % ell:
                    return ScanResult(False, idx, checked, M * n + beta + 1)
        n += 1
    return ScanResult(True, None, checked, M * n + beta)
