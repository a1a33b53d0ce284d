from fractions import Fraction

import pytest

from antiprelie import (GF, QQ, Matrix, NotInvertibleError,
                        ShapeMismatchError, poly_ring)


def M(rows, field=QQ):
    return Matrix.from_rows(field, rows)


def test_matmul_and_apply():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert a @ b == M([[2, 1], [4, 3]])
    v = a.apply([QQ.scalar(1), QQ.scalar(-1)])
    assert [x.value for x in v] == [-1, -1]


def test_rref_and_rank():
    a = M([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    rr, pivots = a.rref()
    assert pivots == [0, 1]
    assert a.rank() == 2


def test_nullspace_members_annihilate():
    a = M([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    for vec in a.nullspace():
        assert all(x.is_zero() for x in a.apply(vec))
    assert len(a.nullspace()) == 1


def test_solve_consistent_and_inconsistent():
    a = M([[1, 1], [2, 2]])
    sol = a.solve([QQ.scalar(3), QQ.scalar(6)])
    assert sol is not None and all(
        x == y for x, y in zip(a.apply(sol), [QQ.scalar(3), QQ.scalar(6)]))
    assert a.solve([QQ.scalar(3), QQ.scalar(7)]) is None


def test_det_inverse_rational():
    a = M([[Fraction(1, 2), 1], [0, 3]])
    assert a.det() == QQ.scalar(Fraction(3, 2))
    inv = a.inverse()
    assert a @ inv == Matrix.identity(QQ, 2)


def test_det_gf():
    f = GF(7)
    a = M([[3, 1], [5, 2]], f)
    assert a.det() == f.scalar(1)
    assert a @ a.inverse() == Matrix.identity(f, 2)


def test_singular_inverse_raises():
    with pytest.raises(NotInvertibleError):
        M([[1, 2], [2, 4]]).inverse()


def test_poly_det_and_unit_inverse():
    ring = poly_ring(["a", "b"], units=["a"])
    theta = Matrix(ring, [[ring.parse("a"), ring.zero()],
                          [ring.parse("b"), ring.parse("a^2")]])
    assert theta.det() == ring.parse("a^3")
    inv = theta.inverse()
    assert theta @ inv == Matrix.identity(ring, 2)


def test_poly_inverse_non_unit_det_raises():
    ring = poly_ring(["b"])
    m = Matrix(ring, [[ring.parse("b"), ring.zero()],
                      [ring.zero(), ring.one()]])
    with pytest.raises(NotInvertibleError):
        m.inverse()


def test_shape_checks():
    with pytest.raises(ShapeMismatchError):
        M([[1, 2], [3, 4]]) @ M([[1, 2, 3]])
    with pytest.raises(ShapeMismatchError):
        M([[1, 2], [3]])


def test_json_round_trip():
    a = M([[Fraction(1, 2), -1], [0, 3]])
    assert Matrix.from_json(a.to_json(), QQ) == a
