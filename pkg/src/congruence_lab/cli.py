"""
Command-line entry point: ``congruence-lab <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 an analysis report found
an implied congruence that fails its scan.

Partition-style progressions (``--partition``) are converted to the
24th-indexing of eta^(-1): p(Mn + beta) sits at index 24(Mn + beta) - 1,
i.e. the claim on (24M)Z + (24 beta - 1).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import ArithmeticError_, CoefficientField, FiniteField, kloosterman_K2
from .qseries import (PrecisionError, eta_quotient_expansion, fixture_to_json, load_fixture,
                      partition_series_mod, validate_fixture)

log = logging.getLogger("congruence_lab")

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers

def _weight(s: str) -> Fraction:
    return Fraction(s)


def _int_list(s: str) -> tuple:
    return tuple(int(x) for x in s.split(",") if x.strip())


def _field(args) -> CoefficientField:
    """Field spec from --ell / --ext-poly / --sqrt-image / --d, validated up front."""
    if args.ell is None:
        raise UsageError("--ell is required")
    ext = _int_list(args.ext_poly) if args.ext_poly else None
    if ext is not None and len(ext) != 2:
        raise UsageError("--ext-poly takes b,c for X^2 + bX + c")
    reduction = None
    if args.sqrt_image is not None:
        if args.d is None:
            raise UsageError("--sqrt-image needs --d")
        reduction = (args.d, args.sqrt_image)
    try:
        if reduction:
            from .arith import QuadraticReduction
            return CoefficientField(args.ell, ext, QuadraticReduction(*reduction))
        return CoefficientField(args.ell, ext)
    except ArithmeticError_ as exc:
        raise UsageError(str(exc)) from exc


def _load_form(args):
    if getattr(args, "eta_spec", None):
        spec = [tuple(int(x) for x in part.split(":")) for part in args.eta_spec.split(",")]
        if args.precision is None:
            raise UsageError("--precision is required with --eta-spec")
        return eta_quotient_expansion(spec, args.precision, args.ell, label=args.eta_spec)
    if not args.form:
        raise UsageError("--form or --eta-spec is required")
    try:
        return load_fixture(args.form, getattr(args, "precision", None))
    except FileNotFoundError as exc:
        raise UsageError(f"no fixture {args.form!r}") from exc


def _emit(args, payload, human=None, tsv=None):
    fmt = args.format
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    elif fmt == "tsv" and tsv is not None:
        text = "".join("\t".join(str(c) for c in row) + "\n" for row in tsv)
    elif human is not None:
        text = human if human.endswith("\n") else human + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_eta(args):
    spec = [tuple(int(x) for x in part.split(":")) for part in args.spec.split(",")]
    f = eta_quotient_expansion(spec, args.precision, args.ell, label=args.spec)
    obj = fixture_to_json(f)
    _emit(args, obj, tsv=[[n, v] for n, v in f.items()])
    return EXIT_OK


def cmd_partition(args):
    vals = partition_series_mod(args.ell, args.nmax)
    _emit(args, {"ell": args.ell, "nmax": args.nmax, "p": vals},
          human=" ".join(map(str, vals)), tsv=list(enumerate(vals)))
    return EXIT_OK


def cmd_hecke(args):
    from .hecke import HeckeContext, hecke_Tp, krylov_decompose
    f = _load_form(args)
    fld = _field(args)
    ctx = HeckeContext.for_form(f, args.p, fld, **({"mode": args.mode} if args.mode else {}))
    if args.action == "apply":
        g = hecke_Tp(f.reduce(fld) if not f.modulus else f, ctx)
        _emit(args, fixture_to_json(g), tsv=[[n, v] for n, v in g.items()])
        return EXIT_OK
    red = f.reduce(fld) if not f.modulus else f
    mod = krylov_decompose(red, ctx, args.max_degree)
    _emit(args, mod.to_json())
    return EXIT_OK


def _lpoly(args):
    from .lseries import LPolynomial
    k = _weight(args.weight)
    base = args.ell
    if k.denominator == 2:
        return LPolynomial.from_half_integral(args.p, args.lam, k, base, args.chi_p), k
    return LPolynomial.from_weight(args.p, args.lam, int(k), base, args.chi_p), k


def cmd_lpoly(args):
    from .lseries import (criterion_eps0, criterion_eps_pm1, criterion_orders, factor_lpoly,
                          lpoly_inverse_coeffs, zero_coefficient_exponents)
    if args.ell is None:
        raise UsageError("--ell is required")
    L, k = _lpoly(args)
    if args.action == "invert":
        cs = lpoly_inverse_coeffs(L, args.e, args.twist, args.shift, args.m_max)
        vals = [c.to_json() for c in cs]
        _emit(args, {"coefficients": vals}, human=" ".join(map(str, vals)),
              tsv=list(enumerate(vals)))
    elif args.action == "zeros":
        cs = lpoly_inverse_coeffs(L, args.e, args.twist, args.shift, args.bound - 1)
        zs = zero_coefficient_exponents(cs, args.bound)
        _emit(args, {"zeros": zs}, human=", ".join(map(str, zs)) or "none")
    elif args.action == "factor":
        fld = _field(args)
        a, b = factor_lpoly(L, fld)
        _emit(args, {"alpha": a.to_json(), "beta": b.to_json()}, human=f"alpha = {a}\nbeta = {b}")
    elif args.action == "orders":
        fld = _field(args)
        rep = criterion_orders(args.lam, args.p, k, args.r, args.ell, args.chi_p, args.D, fld=fld)
        _emit(args, rep.to_json())
    else:
        out = {}
        for m in range(args.m_max + 1):
            out[m] = {"eps0": criterion_eps0(args.lam, args.p, k, m, args.ell, args.chi_p),
                      "eps+1": criterion_eps_pm1(args.lam, args.p, k, args.r, 1, m, args.ell,
                                                 args.chi_p, args.D),
                      "eps-1": criterion_eps_pm1(args.lam, args.p, k, args.r, -1, m, args.ell,
                                                 args.chi_p, args.D)}
        _emit(args, {str(m): v for m, v in out.items()})
    return EXIT_OK


def _claim_args(args):
    from .congruence import CongruenceClaim, partition_claim
    if args.partition:
        c = partition_claim(args.M, args.beta, args.ell, args.bound)
    else:
        c = CongruenceClaim(args.M, args.beta, args.ell, bound=args.bound,
                            gap=_int_list(args.gap) if args.gap else ())
    return c


def _partition_form(args, claim):
    from .congruence import partition_coefficients_mod
    B = claim.bound or 24 * 100000
    return partition_coefficients_mod(args.ell, B)


def cmd_scan(args):
    from .congruence import certify_maximal, scan
    claim = _claim_args(args)
    f = _partition_form(args, claim) if args.partition else _load_form(args)
    fld = _field(args)
    res = scan(f, claim, fld)
    out = {"claim": claim.describe(), **res.to_json()}
    if args.maximal and res.verified and not claim.gap:
        out["maximality"] = certify_maximal(f, claim, fld).to_json()
    human = (f"{claim.describe()} mod {claim.ell}: "
             + ("verified" if res.verified else f"fails at index {res.counterexample}")
             + f" ({res.checked} indices below {res.bound})")
    mx = out.get("maximality")
    if mx:
        human += "\nmaximal: " + ("yes" if mx["maximal"] else f"no, extends to {mx['extends_to']}")
        if mx["support_forced"]:
            human += f" (divisors forced by support: {mx['support_forced']})"
    _emit(args, out, human=human)
    return EXIT_OK


def cmd_analyze(args):
    from .congruence import analyze
    claim = _claim_args(args)
    f = _partition_form(args, claim) if args.partition else _load_form(args)
    fld = _field(args)
    rep = analyze(f, claim.M, claim.beta, claim.ell, claim.bound, args.level, fld)
    _emit(args, rep.to_json())
    return EXIT_OK if rep.consistent else EXIT_INCONSISTENT


def cmd_pipeline(args):
    from .congruence import partition_pipeline
    rep = partition_pipeline(args.ell, args.delta, args.q, args.precision, args.max_degree,
                             not args.no_scan)
    _emit(args, rep.to_json())
    return EXIT_OK


def cmd_disc(args):
    from .congruence import enumerate_discriminants
    ds = enumerate_discriminants(args.kind, _weight(args.k), args.M, args.beta, args.ell or 0,
                                 args.bound, args.explicit)
    _emit(args, ds.to_json(), human=" ".join(map(str, ds.members)))
    return EXIT_OK


def cmd_fixtures(args):
    path = Path(args.path)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    bad = 0
    report = {}
    for fp in files:
        try:
            errs = validate_fixture(json.loads(fp.read_text()))
        except json.JSONDecodeError as exc:
            errs = [f"invalid JSON: {exc}"]
        report[fp.name] = errs
        bad += bool(errs)
    lines = [f"{name}: {'ok' if not e else '; '.join(e)}" for name, e in report.items()]
    lines.append(f"{len(files)} fixtures, {bad} invalid")
    _emit(args, {"fixtures": report, "count": len(files), "invalid": bad}, human="\n".join(lines))
    return EXIT_OK if not bad else EXIT_USAGE


def cmd_kloosterman(args):
    vals = {}
    for a in range(1, args.p):
        for b in range(1, args.p):
            vals[f"{a},{b}"] = not kloosterman_K2(args.p, a, b, args.ell).is_zero()
    _emit(args, {"p": args.p, "ell": args.ell, "nonzero": vals})
    return EXIT_OK


def cmd_reproduce(args):
    from . import reproduce
    fn = {"weight9half-mod433": reproduce.weight9half_report, "weight2-mod3": reproduce.weight2_report,
          "ramanujan": reproduce.ramanujan}[args.target]
    text, ok = fn()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global")
    g.add_argument("--ell", type=int, help="residue characteristic l")
    g.add_argument("--ext-poly", help="b,c: generator r of the quadratic extension, r^2 + b r + c = 0")
    g.add_argument("--sqrt-image", type=int, help="image of sqrt(d) in F_l (split reduction)")
    g.add_argument("--d", type=int, help="discriminant of the real quadratic coefficient field")
    g.add_argument("--format", choices=("json", "tsv", "human"), default="json")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--out", help="write output here instead of stdout")
    g.add_argument("-v", "--verbose", action="store_true")

    form = argparse.ArgumentParser(add_help=False)
    form.add_argument("--form", help="fixture path or bundled fixture name")
    form.add_argument("--eta-spec", help="eta quotient m:e,... instead of a fixture")
    form.add_argument("--precision", type=int)

    claim = argparse.ArgumentParser(add_help=False)
    claim.add_argument("--M", type=int, required=True)
    claim.add_argument("--beta", type=int, required=True)
    claim.add_argument("--bound", type=int)
    claim.add_argument("--gap", help="comma-separated primes p: only n prime to p")
    claim.add_argument("--partition", action="store_true",
                       help="(M, beta) refers to p(Mn + beta); scans eta^-1 mod l")

    ap = argparse.ArgumentParser(prog="congruence-lab",
                                 description="Ramanujan-type congruences of modular forms mod l")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eta", parents=[common], help="eta-quotient expansion")
    p.add_argument("--spec", required=True, help="m:e,... e.g. 1:-1 for eta^-1")
    p.add_argument("--precision", type=int, required=True)
    p.set_defaults(fn=cmd_eta)

    p = sub.add_parser("partition", parents=[common], help="p(n) mod l")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("hecke", parents=[common, form], help="Hecke operators")
    p.add_argument("action", choices=("apply", "eigen"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mode", choices=("half", "integral", "U"))
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(fn=cmd_hecke)

    p = sub.add_parser("lpoly", parents=[common], help="L-polynomials and their inverses")
    p.add_argument("action", choices=("invert", "zeros", "factor", "orders", "criteria"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)
    p.add_argument("--weight", default="2", help="2, 9/2, ...")
    p.add_argument("--chi-p", type=int, default=1)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--twist", type=int)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--m-max", type=int, default=11)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--r", type=int, default=1, help="character exponent r")
    p.add_argument("--D", type=int, default=1)
    p.set_defaults(fn=cmd_lpoly)

    p = sub.add_parser("scan", parents=[common, form, claim], help="scan a progression")
    p.add_argument("--maximal", action="store_true", help="also certify maximality")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("analyze", parents=[common, form, claim], help="full congruence report")
    p.add_argument("--level", type=int, default=1, help="level N of the character")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("partition-pipeline", parents=[common], help="f_{l,delta} under T_q")
    p.add_argument("--delta", type=int, choices=(0, -1), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--precision", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--no-scan", action="store_true")
    p.set_defaults(fn=cmd_pipeline)

    p = sub.add_parser("disc", parents=[common], help="fundamental discriminant sets")
    p.add_argument("--kind", choices=("dk", "dktilde"), required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--explicit", action="store_true")
    p.set_defaults(fn=cmd_disc)

    p = sub.add_parser("fixtures", parents=[common], help="fixture checks")
    p.add_argument("action", choices=("validate",))
    p.add_argument("path")
    p.set_defaults(fn=cmd_fixtures)

    p = sub.add_parser("kloosterman", parents=[common], help="K_2 nonvanishing table")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_kloosterman)

    p = sub.add_parser("reproduce", parents=[common], help="worked examples")
    p.add_argument("target", choices=("weight9half-mod433", "weight2-mod3", "ramanujan"))
    p.set_defaults(fn=cmd_reproduce)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (UsageError, PrecisionError, ArithmeticError_, ValueError) as exc:
        print(f"congruence-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
