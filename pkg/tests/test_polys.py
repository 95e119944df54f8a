import functools
import operator

import pytest

from qvertex.linalg import nullspace, rank, solve
from qvertex.polys import BiPoly, Poly, bezout_partition, poly_extended_gcd
from qvertex.scalars import ONE, ZERO, Scalar, as_scalar


def test_from_roots_and_multiplicity():
    p = Poly.from_roots({ONE: 2, as_scalar(2): 1})
    assert p.to_text() == "x^3 - 4*x^2 + 5*x - 2"
    assert p.multiplicity(1) == 2
    assert p.multiplicity(2) == 1
    assert p.multiplicity(3) == 0


def test_divmod_identity():
    f = Poly([1, 2, 3, 4])
    g = Poly([1, 1])
    q, r = f.divmod(g)
    assert q * g + r == f
    with pytest.raises(ZeroDivisionError):
        f.divmod(Poly())


def test_extended_gcd_bezout_identity():
    z = Scalar.zeta(3)
    f = Poly.from_roots({ONE: 1, z: 2})
    g = Poly.from_roots({z: 1, z * z: 1})
    d, u, v = poly_extended_gcd(f, g)
    assert d == Poly.linear_root(z)
    assert u * f + v * g == d


def test_bezout_partition_sums_to_one():
    z = Scalar.zeta(3)
    fs = [Poly.from_roots({ONE: 1}), Poly.from_roots({z: 2}), Poly.from_roots({z * z: 1})]
    qs = bezout_partition(fs)
    total = Poly()
    for i, q in enumerate(qs):
        total = total + q * functools.reduce(operator.mul, [f for j, f in enumerate(fs) if j != i])
    assert total == Poly([ONE])


def test_bezout_partition_rejects_common_factor():
    with pytest.raises(ValueError):
        bezout_partition([Poly.from_roots({ONE: 1}), Poly.from_roots({ONE: 2})])


def test_bipoly_homogenize_and_shift():
    p = Poly.from_roots({ONE: 2})
    f = BiPoly.homogenize(p)
    assert f.is_homogeneous()
    assert f.dehomogenize() == p
    assert f.diagonal_order(1) == 2
    # f(x0 + x, x) = x0^2 for f = (x1 - x2)^2
    assert f.shifted(1) == Poly([ZERO, ZERO, ONE])


def test_bipoly_from_factors():
    f = BiPoly.from_factors([(ONE, 1), (-ONE, 1)])
    assert f == BiPoly({(2, 0): 1, (0, 2): -1})


def test_linear_solve_and_kernel():
    rows = [{0: as_scalar(1), 1: as_scalar(1)}, {0: as_scalar(1), 1: as_scalar(-1)}]
    sol, status = solve([(rows[0], as_scalar(3)), (rows[1], as_scalar(1))], [0, 1])
    assert status == "ok" and sol[0] == 2 and sol[1] == 1
    assert rank(rows) == 2
    ker = nullspace([{0: ONE, 1: -ONE}], 2)
    assert len(ker) == 1
