"""
Hecke operators on truncated expansions and the Krylov module they generate.

Half-integral weight uses the classical determinant-p^2 operator for theta-
and eta-type characters; integral weight uses the determinant-p operator.
The mod-l decomposition into generalized eigenforms is computed from the
iterates f, f|T, f|T^2, ... by row reduction on the window where each
iterate is determined.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .arith import (ArithmeticError_, CoefficientField, FieldElement, FiniteField,
                    default_extension_poly, is_prime, kronecker_symbol)
from .qseries import CharacterSpec, FourierExpansion, Indexing, PrecisionError


class KrylovWindowError(ArithmeticError_):
    """The precision window cannot certify a linear dependency."""

    def __init__(self, msg, achieved_rank=None):
        super().__init__(msg)
        self.achieved_rank = achieved_rank


MODES = ("half", "integral", "U")


@dataclass
class HeckeContext:
    """
    p, weight and character for T_p.  mode is "half" (determinant p^2),
    "integral" (determinant p) or "U" (the p = l degeneration U_{p^2} mod l,
    only ever used when asked for).  chi4_twist applies the chi_{-4}(p)
    normalization when r = 2k+2 (mod 4).
    """
    p: int
    weight: Fraction
    character: Optional[CharacterSpec] = None
    field: Optional[CoefficientField] = None
    mode: str = "half"
    chi4_twist: bool = True

    def __post_init__(self):
        self.weight = Fraction(self.weight)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.mode == "half":
            if self.weight.denominator != 2:
                raise ValueError("half-integral mode needs weight in 1/2 + Z")
            if self.p == 2:
                raise ValueError("p must be odd")
            ch = self.character
            if ch is not None and ch.kind == "eta" and self.p == 3:
                raise ValueError("eta-type characters need p coprime to 6")
        if self.mode == "integral" and self.weight.denominator != 1:
            raise ValueError("integral mode needs integral weight")
        if self.field is not None and self.mode != "U" and self.p == self.field.ell:
            raise ValueError(f"p = l = {self.p}: the Hecke formula degenerates; "
                             "use mode='U' for the U_{p^2} reduction")

    @classmethod
    def for_form(cls, f: FourierExpansion, p: int, ell: Optional[int] = None, **kw):
        mode = kw.pop("mode", "half" if f.weight.denominator == 2 else "integral")
        fld = CoefficientField(ell) if isinstance(ell, int) else ell
        return cls(p, f.weight, f.character, fld, mode, **kw)


def _char(ctx: HeckeContext, f: FourierExpansion) -> CharacterSpec:
    ch = ctx.character or f.character
    if ch is None:
        if f.indexing == Indexing.TWENTYFOURTH:
            raise ValueError(f"{f.label}: eta-type form without character data")
        return CharacterSpec()
    return ch


def _scalar(p: int, e: int, modulus: Optional[int]):
    if modulus:
        return pow(p, e, modulus)
    return p ** e if e >= 0 else Fraction(1, p ** -e)


def _as_step1_if_needed(f: FourierExpansion, mult: int) -> FourierExpansion:
    # output must stay on the input progression; fall back to step 1 otherwise
    if f.step == 1 or mult % f.step == 1:
        return f
    return f.restep(1)


def hecke_Tp(f: FourierExpansion, ctx: HeckeContext) -> FourierExpansion:
    """
    f | T_p.  Output precision is (B - 1) // p^2 + 1 (resp. // p), the range
    where every term of the formula is known.
    """
    p = ctx.p
    m = f.modulus
    if ctx.field is not None and m is not None and m != ctx.field.ell:
        raise ValueError(f"form is reduced mod {m}, context is mod {ctx.field.ell}")
    if m is not None and p % m == 0 and ctx.mode != "U":
        raise ValueError(f"p = l = {p}: use mode='U'")
    mult = p if ctx.mode == "integral" else p * p
    if f.precision < mult and f.coeffs:
        raise PrecisionError(f"precision {f.precision} is below {mult}")
    f = _as_step1_if_needed(f, mult)
    prec = (f.precision - 1) // mult + 1
    s, st = f.start, f.step
    start = s if s <= 0 else s % st
    n_out = max(0, -(-(prec - start) // st))

    def c(n):
        j, rem = divmod(n - s, st)
        if rem or j < 0:
            return 0
        return f.coeffs[j]

    vals = []
    if ctx.mode == "U":
        vals = [c(mult * (start + st * j)) for j in range(n_out)]
    elif ctx.mode == "integral":
        chi = _char(ctx, f)
        cp = chi.chi(p) * _scalar(p, int(ctx.weight) - 1, m)
        for j in range(n_out):
            n = start + st * j
            v = c(n * p)
            if n % p == 0:
                v = v + cp * c(n // p)
            vals.append(v)
    else:
        chi = _char(ctx, f)
        k = ctx.weight
        r = chi.r
        chip = chi.chi(p)
        if ctx.chi4_twist and (r - (2 * k + 2)) % 4 == 0:
            chip *= kronecker_symbol(-4, p)
        sign = -1 if ((r - 1) // 2) % 2 else 1
        base = sign * (12 if chi.kind == "eta" else 1)
        mid = chip * _scalar(p, int(k - Fraction(3, 2)), m)
        low = chi.chi(p * p) * _scalar(p, int(2 * k - 2), m)
        pp = p * p
        for j in range(n_out):
            n = start + st * j
            v = c(n * pp)
            cn = c(n)
            if cn:
                sym = kronecker_symbol(base * n, p)
                if sym:
                    v = v + sym * mid * cn
            if n % pp == 0:
                cl = c(n // pp)
                if cl:
                    v = v + low * cl
            vals.append(v)
    if m:
        vals = [v % m if isinstance(v, int) else v for v in vals]
    return FourierExpansion(tuple(vals), start, st, max(prec, start), f.indexing, f.weight,
                            f.character, m, f"{f.label}|T{p}")


def hecke_apply_poly(f: FourierExpansion, ctx: HeckeContext, poly) -> FourierExpansion:
    """P(T_p) f for P given by coefficients low to high (values mod l or exact)."""
    acc = None
    g = f
    for i, a in enumerate(poly):
        if i:
            g = hecke_Tp(g, ctx)
        if a:
            term = g.scale(a)
            acc = term if acc is None else _add_trunc(acc, term)
    if acc is None:
        g = f
        for _ in range(len(poly) - 1):
            g = hecke_Tp(g, ctx)
        return g.scale(0)
    return acc


def _add_trunc(a: FourierExpansion, b: FourierExpansion) -> FourierExpansion:
    w = min(a.precision, b.precision)
    return a.truncate(w) + b.truncate(w)


# ---------------------------------------------------------------------------
# polynomials over a finite field, coefficient lists low to high

def _ptrim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def _psub(a, b, F):
    n = max(len(a), len(b))
    a = list(a) + [F.zero] * (n - len(a))
    b = list(b) + [F.zero] * (n - len(b))
    return _ptrim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b, F):
    a = _ptrim(a)
    b = _ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by 0")
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        sh = len(a) - len(b)
        q[sh] = c
        for i, y in enumerate(b):
            a[sh + i] = a[sh + i] - c * y
        a = _ptrim(a)
    return _ptrim(q), a


def _pmod(a, b, F):
    return _pdivmod(a, b, F)[1]


def _pinv_mod(a, m, F):
    """a^(-1) mod m by the extended Euclidean algorithm."""
    r0, r1 = _ptrim(m), _pmod(a, m, F)
    s0, s1 = [], [F.one]
    while r1:
        q, r = _pdivmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, F), F)
    if len(r0) != 1:
        raise ArithmeticError_("polynomial is not invertible")
    inv = r0[0].inverse()
    return [x * inv for x in s0]


def _ppow(a, e, F):
    out = [F.one]
    for _ in range(e):
        out = _pmul(out, a, F)
    return out


def _peval_root(a, x, F):
    acc = F.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_str(a) -> str:
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        cs = str(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = "X" if i == 1 else f"X^{i}"
            terms.append(mono if cs == "1" else f"({cs})*{mono}" if "r" in cs else f"{cs}*{mono}")
    return " + ".join(reversed(terms)) or "0"


# ---------------------------------------------------------------------------
# linear algebra over a finite field

def _rank_and_solve(rows, target, F):
    """
    rows: list of vectors (lists of FieldElement), target: vector.
    Returns (rank of rows, coefficients a with sum a_i rows_i = target or None).
    """
    n = len(rows)
    width = len(target)
    # augmented columns: solve A^T a = target, A has the vectors as rows
    mat = [[rows[i][c] for i in range(n)] + [target[c]] for c in range(width)]
    piv_cols = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, width) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(width):
            if i != r and mat[i][col]:
                c = mat[i][col]
                row_r = mat[r]
                mat[i] = [x - c * y for x, y in zip(mat[i], row_r)]
        piv_cols.append(col)
        r += 1
    rank = r
    if any(mat[i][n] for i in range(rank, width)):
        return rank, None
    sol = [F.zero] * n
    for i, col in enumerate(piv_cols):
        sol[col] = mat[i][n]
    return rank, sol


def _window_vector(f: FourierExpansion, start: int, step: int, bound: int, F):
    return [F(f[n]) if not isinstance(f[n], FieldElement) else f[n]
            for n in range(start, bound, step)]


# ---------------------------------------------------------------------------
# Krylov module

@dataclass
class HeckeKrylovModule:
    generator: FourierExpansion
    context: HeckeContext
    iterates: list
    field: FiniteField
    min_poly: list                    # low to high, monic
    factors: list                     # [(lambda, multiplicity)]
    idempotents: dict                 # lambda -> polynomial
    components: dict                  # lambda -> FourierExpansion f_lambda
    ladders: dict                     # lambda -> [f_{lambda,0}, f_{lambda,1}, ...]
    certified_window: int
    component_window: int
    extended: bool = False

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def eigenvalues(self) -> list:
        return [lam for lam, _ in self.factors]

    def to_json(self) -> dict:
        return {
            "p": self.context.p,
            "ell": self.field.p,
            "field": repr(self.field),
            "extended": self.extended,
            "min_poly": poly_str(self.min_poly),
            "min_poly_coeffs": [c.to_json() for c in self.min_poly],
            "eigenvalues": [{"lambda": lam.to_json(), "multiplicity": e,
                             "nilpotency": nilpotency_index(self, lam)}
                            for lam, e in self.factors],
            "certified_window": self.certified_window,
            "component_window": self.component_window,
        }


def _roots_with_multiplicity(mu, F: FiniteField):
    """Factor a monic mu over F into linear factors by root search and deflation."""
    roots = []
    rest = list(mu)
    while len(rest) > 1:
        found = None
        if len(rest) == 3:
            # quadratic: closed form
            b, c = rest[1], rest[0]
            disc = b * b - c * 4
            sq = F.sqrt(disc)
            if sq is None:
                return roots, rest
            found = (-b + sq) / 2 if F.p != 2 else None
        if found is None:
            for x in F.elements():
                if not _peval_root(rest, x, F):
                    found = x
                    break
        if found is None:
            return roots, rest
        q, r = _pdivmod(rest, [-found, F.one], F)
        rest = q
        roots.append(found)
    out = {}
    for x in roots:
        out[x] = out.get(x, 0) + 1
    return sorted(out.items(), key=lambda t: (t[0].b, t[0].a)), rest


def _factor_min_poly(mu, F: FiniteField, fld: Optional[CoefficientField]):
    """Split mu into linear factors, extending F_l to F_l^2 if needed."""
    if F.degree == 1 and len(mu) > 1:
        import sympy
        x = sympy.Symbol("x")
        poly = sympy.Poly([int(c) for c in reversed(mu)], x, modulus=F.p)
        _, facs = poly.factor_list()
        if any(fac.degree() > 2 for fac, _ in facs):
            raise ArithmeticError_("minimal polynomial has an irreducible factor of degree > 2")
        if any(fac.degree() == 2 for fac, _ in facs):
            ext = fld.extension_field() if fld is not None else \
                FiniteField(F.p, default_extension_poly(F.p))
            mu = [ext(c) for c in mu]
            F = ext
    roots, rest = _roots_with_multiplicity(mu, F)
    if len(rest) > 1:
        raise ArithmeticError_("minimal polynomial does not split over the working field")
    return roots, F, [F(c) for c in mu]


def krylov_decompose(f: FourierExpansion, ctx: HeckeContext, max_degree: int = 8,
                     min_window: int = 1) -> HeckeKrylovModule:
    """
    Minimal polynomial of T_p on the span of f mod l, its primary
    decomposition and the nilpotent ladders of every component.

    The test "T^e f is a combination of lower iterates" is made on the full
    window of T^e f; it is only accepted when the lower iterates are
    independent on that window (otherwise KrylovWindowError reports the rank
    reached).
    """
    if f.modulus is None:
        if ctx.field is None:
            raise ValueError("need a coefficient field to work mod l")
        f = f.reduce(ctx.field)
    ell = f.modulus
    fld = ctx.field or CoefficientField(ell)
    vals = [v for v in f.coeffs if v]
    F = vals[0].field if vals and isinstance(vals[0], FieldElement) else FiniteField(ell)
    iterates = [f]
    start, step = f.start, f.step
    mu = None
    for e in range(0, max_degree + 1):
        ge = iterates[e]
        if ge.step != step or (ge.start - start) % step:
            step = 1
        W = ge.precision
        if W <= start or (W - start) // max(step, 1) < min_window:
            raise KrylovWindowError(f"window {W} exhausted at degree {e}", e)
        # lower iterates restricted to the window of T^e f
        base = _base(iterates, step)
        target = _window_vector(ge, base, step, W, F)
        rows = [_window_vector(g, base, step, W, F) for g in iterates[:e]]
        if e == 0:
            if not any(target):
                mu = [F.one]
                break
        else:
            rank, sol = _rank_and_solve(rows, target, F)
            if rank < e:
                raise KrylovWindowError(
                    f"window {W} shows only rank {rank} for {e} iterates", rank)
            if sol is not None:
                mu = [-a for a in sol] + [F.one]
                break
        if e == max_degree:
            raise KrylovWindowError(f"no dependency up to degree {max_degree}", e + 1)
        iterates.append(hecke_Tp(ge, ctx))
    d = len(mu) - 1
    certified = iterates[d].precision
    comp_window = iterates[max(d - 1, 0)].precision
    if d == 0:
        return HeckeKrylovModule(f, ctx, iterates, F, mu, [], {}, {}, {}, certified,
                                 comp_window, False)
    factors, F2, mu = _factor_min_poly(mu, F, fld)
    extended = F2.degree > F.degree
    idem = {}
    for lam, e in factors:
        local = _ppow([-lam, F2.one], e, F2)
        others = [F2.one]
        for lam2, e2 in factors:
            if lam2 != lam:
                others = _pmul(others, _ppow([-lam2, F2.one], e2, F2), F2)
        u = _pmod(_pmul(others, _pinv_mod(others, local, F2), F2), mu, F2)
        idem[lam] = u
    base = _base(iterates, step)
    vecs = [_window_vector(g, base, step, comp_window, F2) for g in iterates[:d]]
    components, ladders = {}, {}
    for lam, e in factors:
        ladder = []
        for t in range(e + 1):
            poly = _pmod(_pmul(_ppow([-lam, F2.one], t, F2), idem[lam], F2), mu, F2)
            ladder.append(_combine(poly, vecs, base, step, comp_window, f, F2, ell,
                                   f"{f.label}_({lam},{t})"))
        components[lam] = ladder[0]
        ladders[lam] = ladder
    return HeckeKrylovModule(f, ctx, iterates, F2, mu, factors, idem, components, ladders,
                             certified, comp_window, extended)


def _base(iterates, step):
    return min(g.start for g in iterates)


def _combine(poly, vecs, base, step, window, f, F, ell, label):
    n = len(vecs[0]) if vecs else 0
    acc = [F.zero] * n
    for c, v in zip(poly, vecs):
        if c:
            acc = [a + c * x for a, x in zip(acc, v)]
    if F.degree == 1:
        out = tuple(int(x) for x in acc)
    else:
        out = tuple(x if x.b else int(x) for x in acc)
    return FourierExpansion(out, base, step, max(window, base), f.indexing, f.weight,
                            f.character, ell, label)


def nilpotency_index(module: HeckeKrylovModule, lam) -> int:
    """Least d with (T_p - lambda)^(d+1) f_lambda = 0 on the component window."""
    lam = module.field(lam) if not isinstance(lam, FieldElement) else lam
    for key, ladder in module.ladders.items():
        if key == lam:
            for d in range(len(ladder) - 1):
                if ladder[d + 1].is_zero():
                    return d
            raise KrylovWindowError("ladder did not terminate on the window")
    raise ValueError(f"{lam} is not an eigenvalue of the module")
