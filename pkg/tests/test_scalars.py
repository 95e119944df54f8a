import pytest

from qvertex.scalars import (ONE, ZERO, GroupElement, Scalar, as_scalar, cyclotomic_poly, parse_group_element,
                             parse_scalar, phi, roots_of_unity)


def test_cyclotomic_basics():
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert phi(12) == 4
    z = Scalar.zeta(3)
    assert z ** 3 == ONE
    assert z * z + z + 1 == ZERO


def test_zeta_reduction_across_orders():
    # zeta_4^2 = -1 and zeta_6^3 = -1, even though they live in different fields
    assert Scalar.zeta(4) ** 2 == -ONE
    assert Scalar.zeta(6, 3) == -ONE
    assert Scalar.zeta(4, 2) == Scalar.zeta(2)


def test_rational_functions_in_q():
    x = parse_scalar("(q^2+z)/(q-1)", 4)
    assert x * x.inverse() == ONE
    assert parse_scalar("q") ** -1 == parse_scalar("1/q")
    assert (parse_scalar("q^2-1") / parse_scalar("q-1")) == parse_scalar("q+1")


def test_scalar_text_roundtrip():
    for text in ("3/4", "z + q^2", "(1 + q)/(-1 + q)"):
        s = parse_scalar(text, 5)
        assert parse_scalar(s.to_text(), 5) == s


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_as_scalar_rejects_junk():
    with pytest.raises(TypeError):
        as_scalar(object())


def test_group_elements_are_canonical():
    assert GroupElement(2, 4) == GroupElement(1, 2)
    assert hash(GroupElement(2, 4)) == hash(GroupElement(1, 2))
    g = parse_group_element("zeta4*q^2")
    assert (g * g.inverse()).is_one()
    assert g ** 4 == GroupElement(0, 1, 8)
    assert (g / g).is_one()
    assert g.value() == Scalar.zeta(4) * Scalar.q(2)


def test_group_element_parsing():
    assert parse_group_element("-1") == GroupElement(1, 2)
    assert parse_group_element("q^-1") == GroupElement(0, 1, -1)
    with pytest.raises(ValueError):
        parse_group_element("pi")


def test_roots_of_unity_form_a_group():
    g = roots_of_unity(3)
    assert len(g) == 3
    for a in g:
        for b in g:
            assert a * b in g
