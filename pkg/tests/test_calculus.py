import random

import pytest

from qvertex import delta
from qvertex.laurent import Binomial, LaurentData, iota_expand, series_invert, taylor_shift
from qvertex.scalars import ONE, Scalar, as_scalar

Z3 = Scalar.zeta(3)


def test_laurent_arithmetic_is_exact():
    x = LaurentData.polynomial(("x",), {(1,): 1, (-1,): 2})
    assert (x * x).coefficient((0,)) == 4
    assert (x - x).terms == {}
    assert x.derivative("x").coefficient((-2,)) == -2


def test_iota_directions_differ():
    # (x1 - x2)^-1 expanded both ways, then multiplied back
    w = ((-6, 0), (0, 6))
    left = iota_expand([Binomial(1, "x1", -1, "x2", -1)], ("x1", "x2"), w, ("x1", "x2"))
    assert left.coefficient((-1, 0)) == 1 and left.coefficient((-3, 2)) == 1
    right = iota_expand([Binomial(1, "x1", -1, "x2", -1)], ("x2", "x1"), ((0, 6), (-6, 0)), ("x1", "x2"))
    assert right.coefficient((0, -1)) == -1
    assert right.coefficient((2, -3)) == -1


@pytest.mark.parametrize("alpha", [ONE, Z3, Scalar.q()])
def test_iota_binomial_coefficients(alpha):
    for n in (-3, 0, 2):
        assert delta.iota_check(n, alpha, 12).passed


def test_series_invert_times_f_is_one():
    f = LaurentData.polynomial(("x1", "x2"), {(1, 0): 1, (0, 1): -Z3})
    inv = series_invert(f, "x1", "x2", ((-8, 8), (0, 8)))
    prod = f * inv
    bad, n = prod.compare(LaurentData.polynomial(("x1", "x2"), {(0, 0): 1}), ((-5, 5), (0, 5)))
    assert bad is None and n > 0


def test_series_invert_zero_raises():
    with pytest.raises(ValueError):
        series_invert(LaurentData(("x1", "x2")), "x1", "x2", ((-2, 2), (0, 2)))


def test_taylor_shift_of_monomial():
    s = LaurentData.polynomial(("x",), {(2,): 1})
    got = taylor_shift(s, "x", "y", ONE, ((-4, 4), (0, 4)))
    # (x + y)^2
    assert got.coefficient((2, 0)) == 1 and got.coefficient((1, 1)) == 2 and got.coefficient((0, 2)) == 1


@pytest.mark.parametrize("alpha", [ONE, -ONE, Z3, Scalar.zeta(4)])
def test_delta_identity(alpha):
    assert delta.verify_delta_identity(alpha, ((-5, 5),) * 3).passed


def test_delta_identity_control_fails_with_location():
    rep = delta.verify_delta_identity(ONE, ((-5, 5),) * 3, perturb=(-1, 0, 0))
    assert not rep.passed
    assert rep.counterexample["exponent"] == [-1, 0, 0]


def test_iota_control_fails():
    rep = delta.iota_check(-2, Z3, 10, perturb=(1, 4))
    assert not rep.passed and rep.counterexample["direction"] == ["x2", "x1"]


def test_decomposition_roundtrip_and_control():
    roots = {ONE: 1, Z3: 2}
    assert delta.decomposition_roundtrip(roots, random.Random(5), support=(-3, 3)).passed
    bad = delta.decomposition_roundtrip(roots, random.Random(5), support=(-3, 3), perturb=(0, 0))
    assert not bad.passed and bad.counterexample


def test_substitution_and_annihilation():
    g = LaurentData(("x0", "x1", "x2"), {(1, 0, -1): as_scalar(2), (0, 2, 0): as_scalar(-1)})
    assert delta.substitution_check(Z3, g).passed
    assert delta.annihilation_check(Scalar.zeta(4)).passed
