import pytest

from qvertex.families import TwistedAffine, abelian, negation, sl2, sl2_involution
from qvertex.fields import IdentityField, fields_equal
from qvertex.identities import (conjugation_check, d_rules_check, vacuum_creation_check,
                                witness_independence_check)
from qvertex.scalars import GroupElement
from qvertex.verifier import (WitnessBook, d_property_check, generate_closure, inject_product, minimal_polynomial,
                              perturb_field, subgroup_closure_check, verify_gamma_jacobi, verify_gamma_va_equivalence,
                              verify_quasi_module)
from qvertex.fields import CompatibilityWitness

ONE_G, MINUS = GroupElement(), GroupElement(1, 2)


@pytest.fixture(scope="module")
def heis():
    fam = TwistedAffine(abelian(1), negation(1), 2, 2, 5)
    return fam, fam.fields()[0], WitnessBook(fam.gamma)


def test_derived_witness_is_factored(heis):
    fam, a, book = heis
    p = book.product(a, a, ONE_G, -2)
    r = book.roots(a, p)
    assert r is not None and set(r) <= {ONE_G, MINUS}
    # capped at wt(a) + wt(p) and confirmed
    assert all(k <= a.weight + p.weight for k in r.values())
    assert book.uncapped == []


def test_witness_of_vacuum_pairs_is_trivial(heis):
    fam, a, book = heis
    one = IdentityField(fam.module)
    assert book(a, one).f.degree() == 0


def test_calculus_identities(heis):
    fam, a, book = heis
    gam = [ONE_G, MINUS]
    assert vacuum_creation_check(book, a, gam, max_degree=2).passed
    assert d_rules_check(book, a, a, gam, max_degree=2).passed
    assert conjugation_check(book, a, a, gam, max_degree=2).passed
    assert witness_independence_check(book, a, a, gam, max_degree=2).passed


def test_injected_product_breaks_vacuum_check():
    fam = TwistedAffine(abelian(1), negation(1), 2, 2, 5)
    a = fam.fields()[0]
    book = WitnessBook(fam.gamma)
    inject_product(book, a, IdentityField(fam.module), ONE_G, -1)
    rep = vacuum_creation_check(book, a, [ONE_G], max_degree=2)
    assert not rep.passed and rep.counterexample


def test_perturbed_field_differs(heis):
    fam, a, book = heis
    ok, where, _ = fields_equal(a, perturb_field(a))
    assert not ok and where


def test_jacobi_sl2_small_box():
    fam = TwistedAffine(sl2(), sl2_involution(), 2, 2, 4)
    F = fam.fields()
    book = WitnessBook(fam.gamma)
    for al in (ONE_G, MINUS):
        assert verify_gamma_jacobi(book, F[0], F[1], F[2], al, ONE_G, box=1, max_degree=2).passed


def test_jacobi_control_fails():
    fam = TwistedAffine(sl2(), sl2_involution(), 2, 2, 4)
    F = fam.fields()
    book = WitnessBook(fam.gamma)
    bad = perturb_field(F[0])
    rep = verify_gamma_jacobi(book, bad, bad, bad, ONE_G, ONE_G, box=1, max_degree=2)
    assert not rep.passed
    assert "modes" in rep.counterexample


def test_quasi_module_and_d_property(heis):
    fam, a, book = heis
    f = CompatibilityWitness.from_factors([(ONE_G, 2), (MINUS, 2)])
    assert verify_quasi_module(book, a, a, f, ONE_G).passed
    assert d_property_check(book, a, 2).passed


def test_closure_and_gamma_va(heis):
    fam, a, _ = heis
    book = WitnessBook(fam.gamma)
    C = generate_closure([a], fam.gamma, 3, 2, book, 2)
    assert len(C.elements) > 2
    assert all(e.weight <= 3 for e in C.elements)
    assert verify_gamma_va_equivalence(C, 2).passed
    assert subgroup_closure_check([a], fam.gamma, 3, 2, WitnessBook(fam.gamma), 2).passed


def test_closure_needs_generators():
    with pytest.raises(ValueError):
        generate_closure([], [ONE_G], 2, 2)


def test_minimal_polynomial_twisted(heis):
    fam, a, _ = heis
    p, rep = minimal_polynomial([a], fam.gamma, labels=fam.module.basis_upto(2))
    assert rep.passed
    assert p.to_text() == "x^2 - 1"
