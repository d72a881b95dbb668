from fractions import Fraction

import pytest

from congruence_lab.arith import CoefficientField, FiniteField, kronecker_symbol
from congruence_lab.congruence import f_ell_delta
from congruence_lab.hecke import (HeckeContext, KrylovWindowError, hecke_Tp, krylov_decompose,
                                  nilpotency_index)
from congruence_lab.qseries import eta_expansion, load_fixture


@pytest.fixture(scope="module")
def f13():
    f, k, r = f_ell_delta(13, 0, 100000)
    return f


def test_eta_is_T5_eigenform_exactly():
    f = eta_expansion(24 * 25 * 200)
    g = hecke_Tp(f, HeckeContext(5, Fraction(1, 2), f.character))
    # eigenvalue (12/p)(1 + 1/p) with the Kronecker symbol (12/5) = -1
    lam = kronecker_symbol(12, 5) * Fraction(6, 5)
    assert g.precision == (f.precision - 1) // 25 + 1
    for n, v in g.items():
        assert v == lam * f[n]
    assert any(v for _, v in g.items())


def test_p_equal_ell_is_rejected(f13):
    with pytest.raises(ValueError):
        HeckeContext(13, f13.weight, f13.character, CoefficientField(13))
    with pytest.raises(ValueError):
        HeckeContext(3, f13.weight, f13.character, CoefficientField(13))


def test_hecke_commutativity_half_integral(f13):
    c5 = HeckeContext(5, f13.weight, f13.character, CoefficientField(13))
    c7 = HeckeContext(7, f13.weight, f13.character, CoefficientField(13))
    a = hecke_Tp(hecke_Tp(f13, c5), c7)
    b = hecke_Tp(hecke_Tp(f13, c7), c5)
    assert a.equal_on(b)
    assert not a.is_zero()


def test_hecke_commutativity_integral(f11):
    ctx = {p: HeckeContext(p, 2, f11.character, CoefficientField(7), "integral")
           for p in (2, 3, 5)}
    red = f11.truncate(20000).reduce(CoefficientField(7))
    for p, q in ((2, 3), (3, 5), (2, 5)):
        assert hecke_Tp(hecke_Tp(red, ctx[p]), ctx[q]).equal_on(
            hecke_Tp(hecke_Tp(red, ctx[q]), ctx[p]))


def test_f13_is_eigenform(f13):
    mod = krylov_decompose(f13, HeckeContext(5, f13.weight, f13.character, CoefficientField(13)))
    assert mod.degree == 1
    assert [int(x) for x in mod.eigenvalues] == [10]
    assert mod.certified_window == 4000


def test_two_component_reconstruction():
    fld = CoefficientField(5)
    a = load_fixture("level11", 20000)
    b = load_fixture("level17", 20000)
    f = (a + b).reduce(fld)
    ctx = HeckeContext(3, 2, a.character, fld, "integral")
    mod = krylov_decompose(f, ctx)
    assert sorted(int(x) for x in mod.eigenvalues) == sorted({a[3] % 5, b[3] % 5})
    total = None
    for lam, comp in mod.components.items():
        total = comp if total is None else total + comp
        # each component is the newform with that eigenvalue
        src = a if a[3] % 5 == int(lam) else b
        assert comp.equal_on(src.reduce(fld).truncate(comp.precision))
    assert total.equal_on(f.truncate(total.precision))


def test_idempotent_algebra():
    fld = CoefficientField(5)
    a = load_fixture("level11", 20000)
    b = load_fixture("level17", 20000)
    f = (a + b).reduce(fld)
    mod = krylov_decompose(f, HeckeContext(3, 2, a.character, fld, "integral"))
    from congruence_lab.hecke import _pmod, _pmul, _psub, _ptrim
    F = mod.field
    es = list(mod.idempotents.values())
    s = [F.zero]
    for e in es:
        assert _ptrim(_pmod(_pmul(e, e, F), mod.min_poly, F)) == _ptrim(e)
        s = _psub(s, [-c for c in e], F)
    assert _ptrim(_pmod(s, mod.min_poly, F)) == [F.one]
    assert _ptrim(_pmod(_pmul(es[0], es[1], F), mod.min_poly, F)) in ([], [F.zero])


def test_generalized_eigenform_ladder(g_mod3, f11):
    fld = CoefficientField(3)
    g = g_mod3.truncate(30000)
    for p, scalar in ((5, 1), (7, -2)):
        mod = krylov_decompose(g.reduce(fld), HeckeContext(p, 2, g.character, fld, "integral"))
        assert mod.factors == [(FiniteField(3)(1), 2)]
        assert nilpotency_index(mod, 1) == 1
        step1 = mod.ladders[mod.eigenvalues[0]][1]
        assert step1.equal_on((f11 * scalar).reduce(fld).truncate(step1.precision))


def test_window_exhaustion_reported(f13):
    small = f13.truncate(60)
    with pytest.raises(KrylovWindowError) as exc:
        krylov_decompose(small, HeckeContext(5, f13.weight, f13.character, CoefficientField(13)))
    assert exc.value.achieved_rank >= 0


def test_module_json(f13):
    mod = krylov_decompose(f13, HeckeContext(5, f13.weight, f13.character, CoefficientField(13)))
    js = mod.to_json()
    assert js["min_poly"] == "X + 3"
    assert js["eigenvalues"] == [{"lambda": 10, "multiplicity": 1, "nilpotency": 0}]
