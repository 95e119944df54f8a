import pytest

from qvertex.families import (QuantumHeisenberg, TwistedAffine, complex_numbers, defining_relations_check,
                              group_algebra_z2, omega_averaging_check, relabel_isomorphism_check, sl2,
                              sl2_involution, star_algebra_check, sublattice_field)
from qvertex.fields import fields_equal, find_annihilator
from qvertex.scalars import ONE, GroupElement


def test_lie_data():
    g = sl2()
    assert g.dim == 3
    # Jacobi identity of the structure constants
    for i in range(3):
        for j in range(3):
            assert g.bracket({i: ONE}, {j: ONE}) == {k: -v for k, v in g.bracket({j: ONE}, {i: ONE}).items()}


def test_sl2_twisted_relations():
    fam = TwistedAffine(sl2(), sl2_involution(), 2, 2, 4)
    assert defining_relations_check(fam, 2).passed
    assert relabel_isomorphism_check(fam).passed


@pytest.mark.parametrize("T,r", [(2, 0), (2, 1), (3, 2)])
def test_omega_averaging(T, r):
    assert omega_averaging_check(T, r).passed


def test_star_algebra_and_assoc_data():
    assert star_algebra_check(3).passed
    assert complex_numbers().check().passed
    assert group_algebra_z2().check().passed


def test_heisenberg_witness_formula():
    fam = QuantumHeisenberg(1, 1, 5, range(-1, 2))
    for m in (-1, 1):
        for n in (-1, 0):
            w = find_annihilator(fam.field(0, m), fam.field(0, n), candidates=fam.gamma)
            assert dict(w.factors) == {GroupElement(0, 1, n - m + 1): 2, GroupElement(0, 1, n - m - 1): 2}


def test_sublattice_periodic_in_residue():
    from qvertex.families import untwisted_affine
    fam = untwisted_affine(sl2(), 1, 4)
    v = {0: ONE}
    assert fields_equal(sublattice_field(fam, v, 1, 2), sublattice_field(fam, v, 3, 2), 2)[0]
