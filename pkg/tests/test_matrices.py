import pytest

from algebroids import matrices
from algebroids.errors import ShapeMismatch
from algebroids.scalars import CoordinateRing

RING = CoordinateRing(['x', 'y'])


def test_determinant_is_exact():
    M = matrices.coerce_matrix(RING, [["x", 1], [1, "x"]])
    assert matrices.determinant(RING, M) == RING.parse("x^2 - 1")


def test_unit_inverse_of_unipotent_matrix():
    M = matrices.coerce_matrix(RING, [[1, "y"], [0, 1]])
    inverse = matrices.unit_inverse(RING, M)
    assert matrices.equal(inverse, matrices.coerce_matrix(RING, [[1, "-y"], [0, 1]]))
    assert matrices.equal(matrices.matmul(RING, M, inverse), matrices.identity(RING, 2))


def test_unit_inverse_needs_constant_determinant():
    M = matrices.coerce_matrix(RING, [["x", 0], [0, 1]])
    assert matrices.unit_inverse(RING, M) is None


def test_pointwise_rank():
    M = matrices.coerce_matrix(RING, [["x", "y"], ["2*x", "2*y"]])
    assert matrices.exact_rank(matrices.evaluate(M, {'x': 1, 'y': 3})) == 1
    assert matrices.exact_rank(matrices.evaluate(M, {'x': 0, 'y': 0})) == 0


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        matrices.coerce_matrix(RING, [1, 2, 3])
    with pytest.raises(ShapeMismatch):
        matrices.matmul(RING, matrices.identity(RING, 2), matrices.identity(RING, 3))


def test_text_rendering():
    M = matrices.coerce_matrix(RING, [["x + 1", 0], [0, "-y"]])
    assert matrices.to_text(M) == [["x + 1", "0"], ["0", "-y"]]


CIRCLE = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])


def test_determinant_is_reduced_modulo_relations():
    M = matrices.coerce_matrix(CIRCLE, [["y", "x"], ["x", "y"]])
    assert matrices.determinant(CIRCLE, M) == CIRCLE.parse("1 - 2*x^2")


def test_rotation_inverts_on_the_circle():
    M = matrices.coerce_matrix(CIRCLE, [["x", "-y"], ["y", "x"]])
    inverse = matrices.unit_inverse(CIRCLE, M)
    assert matrices.equal(inverse, matrices.coerce_matrix(CIRCLE, [["x", "y"], ["-y", "x"]]))
    assert matrices.equal(matrices.matmul(CIRCLE, inverse, M), matrices.identity(CIRCLE, 2))


def test_constant_complex_inverse():
    M = matrices.coerce_matrix(RING, [[1, "i"], [0, 2]])
    assert matrices.determinant(RING, M) == 2
    inverse = matrices.unit_inverse(RING, M)
    assert matrices.equal(inverse, matrices.coerce_matrix(RING, [[1, "-i/2"], [0, "1/2"]]))


def test_singular_constant_matrix_has_no_inverse():
    M = matrices.coerce_matrix(RING, [[1, 2], [2, 4]])
    assert matrices.unit_inverse(RING, M) is None
    assert matrices.determinant(RING, matrices.zeros(RING, 0, 0)) == 1
