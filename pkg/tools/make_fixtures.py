#!/usr/bin/env python3
"""
Regenerate the bundled JSON fixtures in src/congruence_lab/data.

Weight-2 newforms of level 17 and 33 are stored as prime Hecke eigenvalues
obtained by counting points on the matching elliptic curves (17a1, 33a1).
The level-11 form is the eta quotient eta(t)^2 eta(11t)^2; its eigenvalues
are cross-checked here against point counts on 11a1.

    python tools/make_fixtures.py [--bound 100000]
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from congruence_lab.arith import primes_below  # noqa: E402
from congruence_lab.qseries import (eta_quotient_expansion, integral_from_24,  # noqa: E402
                                    validate_fixture)

DATA = ROOT / "src" / "congruence_lab" / "data"

CURVES = {
    "11a1": (0, -1, 1, -10, -20),
    "17a1": (1, -1, 1, -1, -14),
    "33a1": (1, 1, 0, -11, 0),
}


def ap_curve(ainv, p: int) -> int:
    """a_p = p - #{affine points}, valid at good and bad primes alike."""
    a1, a2, a3, a4, a6 = ainv
    if p == 2:
        count = sum(1 for x in range(2) for y in range(2)
                    if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0)
        return p - count
    x = np.arange(p, dtype=np.int64)
    lin = (a1 * x + a3) % p
    cub = (((x * x % p) * x) + a2 * (x * x % p) + a4 * x + a6) % p
    rhs = (lin * lin + 4 * cub) % p
    sq = np.zeros(p, dtype=np.int8)
    sq[(x * x) % p] = 1
    leg = np.where(rhs == 0, 0, np.where(sq[rhs] == 1, 1, -1))
    count = int(p + leg.sum())
    return p - count


def eigenvalues(ainv, bound):
    return [[p, ap_curve(ainv, p)] for p in primes_below(bound)]


def weight2_fixture(label, level, ainv, bound, note):
    return {
        "label": label,
        "indexing": "integral",
        "weight": [2, 1],
        "character": {"kind": "integral", "r": 0, "N": level, "dirichlet": "trivial"},
        "coefficients": [],
        "precision": bound,
        "hecke": {"level": level, "eigenvalues": eigenvalues(ainv, bound)},
        "source": note,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=100000)
    args = ap.parse_args(argv)
    B = args.bound
    DATA.mkdir(parents=True, exist_ok=True)
    out = {}

    # level 11: the eta quotient is the definition, point counts are the check
    f11 = integral_from_24(eta_quotient_expansion([(1, 2), (11, 2)], 24 * B), 2)
    for p, a in eigenvalues(CURVES["11a1"], min(B, 5000)):
        if f11[p] != a:
            raise SystemExit(f"level 11: eta quotient gives a({p}) = {f11[p]}, curve gives {a}")
    out["level11"] = {
        "label": "level11",
        "indexing": "integral",
        "weight": [2, 1],
        "character": {"kind": "integral", "r": 0, "N": 11, "dirichlet": "trivial"},
        "coefficients": [],
        "precision": B,
        "eta_quotient": [[1, 2], [11, 2]],
        "rescale": True,
        "source": "eta(t)^2 eta(11t)^2; a(p) agrees with point counts on 11a1",
    }
    out["level17"] = weight2_fixture("level17", 17, CURVES["17a1"], B,
                                     "point counts on 17a1: y^2+xy+y = x^3-x^2-x-14")
    out["level33"] = weight2_fixture("level33", 33, CURVES["33a1"], B,
                                     "point counts on 33a1: y^2+xy = x^3+x^2-11x")

    # weight 9/2, level 52 theta-type forms and the weight-8 level-26 eigenvalue data
    theta = {"kind": "theta", "r": 1, "N": 52, "dirichlet": "trivial"}
    out["maeda_f1"] = {
        "label": "maeda_f1", "indexing": "integral", "weight": [9, 2], "character": theta,
        "field": {"d": 2305, "reduction": {"ell": 433, "sqrt_image": 172}},
        "coefficients": [[2, 13], [5, 76], [6, -29]], "precision": 7,
        "source": "printed initial expansion (Maeda's form f(-87))",
    }
    out["maeda_f2"] = {
        "label": "maeda_f2", "indexing": "integral", "weight": [9, 2], "character": theta,
        "field": {"d": 2305, "reduction": {"ell": 433, "sqrt_image": 172}},
        "coefficients": [[2, 240], [5, [-650, 1, 10, 1]], [6, [-20, 1, 52, 1]]], "precision": 7,
        "source": "printed initial expansion (Maeda's form f((87+sqrt d)/2))",
    }
    trivial26 = {"kind": "integral", "r": 0, "N": 26, "dirichlet": "trivial"}
    out["maeda_ftilde1"] = {
        "label": "maeda_ftilde1", "indexing": "integral", "weight": [8, 1],
        "character": trivial26, "coefficients": [], "precision": 8,
        "hecke": {"level": 26, "eigenvalues": [[2, 8], [3, -87], [5, 321], [7, -181]]},
        "source": "Maeda's eigenvalues of F(-87)",
    }
    out["maeda_ftilde2"] = {
        "label": "maeda_ftilde2", "indexing": "integral", "weight": [8, 1],
        "character": trivial26, "field": {"d": 2305, "reduction": {"ell": 433, "sqrt_image": 172}},
        "coefficients": [], "precision": 8,
        "hecke": {"level": 26, "eigenvalues": [
            [2, 8], [3, [87, 2, 1, 2]], [5, [215, 2, 5, 2]], [7, [705, 2, -49, 2]]]},
        "source": "Maeda's eigenvalues of F((87+sqrt d)/2)",
    }

    for name, obj in out.items():
        errs = validate_fixture(obj)
        if errs:
            raise SystemExit("\n".join(errs))
        with open(DATA / f"{name}.json", "w") as fh:
            json.dump(obj, fh, separators=(",", ":"))
            fh.write("\n")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
