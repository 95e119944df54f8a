import pytest

from qvertex.families import TwistedAffine, abelian, negation, sl2, sl2_involution
from qvertex.fields import (CompatibilityWitness, IdentityField, ZeroField, commutator_formula_check,
                            fields_equal, find_annihilator, r_alpha, y_alpha_product)
from qvertex.polys import BiPoly
from qvertex.scalars import ONE, GroupElement

T2 = [GroupElement(), GroupElement(1, 2)]


@pytest.fixture(scope="module")
def heis():
    return TwistedAffine(abelian(1), negation(1), 2, 2, 5)


@pytest.fixture(scope="module")
def sl2_fam():
    return TwistedAffine(sl2(), sl2_involution(), 2, 2, 4)


def test_witness_of_twisted_heisenberg(heis):
    a = heis.fields()[0]
    w = find_annihilator(a, a, candidates=heis.gamma)
    assert dict(w.factors) == {GroupElement(): 2, GroupElement(1, 2): 2}
    assert w.f == BiPoly({(4, 0): 1, (2, 2): -2, (0, 4): 1})


def test_identity_commutes_with_everything(heis):
    one = IdentityField(heis.module)
    w = find_annihilator(one, heis.fields()[0], candidates=heis.gamma)
    assert w.f.degree() == 0


def test_witness_mode_validation(heis):
    a = heis.fields()[0]
    with pytest.raises(ValueError):
        find_annihilator(a, a, mode="nonsense")


def test_zero_witness_rejected():
    with pytest.raises(ValueError):
        CompatibilityWitness(BiPoly())


def test_products_match_closed_forms(heis):
    a = heis.fields()[0]
    w = find_annihilator(a, a, candidates=heis.gamma)
    want = heis.expected_products({0: ONE}, {0: ONE})
    for n in range(3):
        got = y_alpha_product(a, a, GroupElement(), w, n)
        assert fields_equal(got, want.get(n, ZeroField(heis.module, 1 - n)))[0]


def test_commutator_formula(sl2_fam):
    F = sl2_fam.fields()
    for a in F:
        for b in F:
            w = find_annihilator(a, b, candidates=sl2_fam.gamma)
            assert commutator_formula_check(a, b, w).passed


def test_r_alpha_on_odd_generator(heis):
    # R_{-1} is an involution on fields
    a = heis.fields()[0]
    twice = r_alpha(r_alpha(a, GroupElement(1, 2)), GroupElement(1, 2))
    assert fields_equal(twice, a)[0]
