import pytest
import sympy
from sympy.polys.domains import QQ, QQ_I

from algebroids.errors import (
    NonTerminatingRelationSet,
    ParseError,
    RelationViolatedAtPoint,
    UnknownVariable,
    UnsupportedRelation,
)
from algebroids.scalars import ONE, CoordinateRing, coefficient_text, gaussian, gaussian_from_sympy

I = QQ_I(0, 1)


def test_circle_relation_eliminates_last_square():
    ring = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    y = ring.variable('y')
    assert (y * y).to_text() == "-x^2 + 1"
    assert ring.parse("x^2 + y^2") == 1


def test_relation_leads_with_its_square():
    ring = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    assert ring.relations[0].LM == (0, 2)
    assert ring.poly_ring.domain == QQ_I


def test_normal_form_is_unique_on_the_three_sphere():
    ring = CoordinateRing(['x1', 'x2', 'x3', 'x4'], ['x1^2 + x2^2 + x3^2 + x4^2 - 1'])
    x4 = ring.variable('x4')
    assert x4 ** 3 == ring.parse("x4 - x1^2*x4 - x2^2*x4 - x3^2*x4")
    assert x4 ** 4 == ring.parse("(1 - x1^2 - x2^2 - x3^2)^2")
    assert ring.parse("x4^2*x1 + x1^3 + x1*x2^2 + x1*x3^2") == ring.variable('x1')


def test_two_relations_reduce_independently():
    ring = CoordinateRing(['a', 'b', 'c', 'd'], ['a^2 + b^2 - 1', 'c^2 + d^2 - 1'])
    assert ring.parse("b^2*d^2") == ring.parse("(1 - a^2)*(1 - c^2)")
    assert [r.LM for r in ring.relations] == [(0, 2, 0, 0), (0, 0, 0, 2)]


def test_text_is_graded_lex_descending():
    ring = CoordinateRing(['x', 'y'])
    assert ring.parse("1 + 2*y*x").to_text() == "2*x*y + 1"
    assert ring.parse("x - x").to_text() == "0"


def test_coefficient_text():
    assert coefficient_text(QQ_I(0, 1)) == "i"
    assert coefficient_text(QQ_I(0, -1)) == "-i"
    assert coefficient_text(QQ_I(1, -1)) == "(1-i)"
    assert coefficient_text(QQ_I(1, 1)) == "(1+i)"
    assert coefficient_text(QQ_I(QQ(1, 2), 0)) == "1/2"
    assert coefficient_text(QQ_I(2, QQ(-3, 2))) == "(2-3/2*i)"


def test_gaussian_arithmetic():
    assert I * I == -ONE
    assert QQ_I(1, 1) / QQ_I(1, -1) == I
    with pytest.raises(ZeroDivisionError):
        ONE / QQ_I.zero
    assert gaussian(3) == QQ_I(3, 0)
    with pytest.raises(TypeError):
        gaussian("x")


def test_sympy_coefficients_outside_gaussian_rationals():
    assert gaussian_from_sympy(sympy.Rational(1, 2) + sympy.I / 3) == QQ_I(QQ(1, 2), QQ(1, 3))
    with pytest.raises(ParseError):
        gaussian_from_sympy(sympy.sqrt(2))


def test_complex_coefficients_parse():
    ring = CoordinateRing(['x'])
    p = ring.parse("i*x + 1")
    assert p.conjugate() == ring.parse("-i*x + 1")
    assert not p.is_real()
    assert (p * I).to_text() == "-x + i"


def test_non_polynomial_text_is_a_parse_error():
    ring = CoordinateRing(['x', 'y'])
    with pytest.raises(ParseError):
        ring.parse("sqrt(2)*x")
    with pytest.raises(ParseError):
        ring.parse("x/y")


def test_derivative_of_normal_form():
    ring = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    p = ring.parse("x*y^2")
    # x*y^2 reduces to x - x^3 first
    assert p.derivative(0) == ring.parse("1 - 3*x^2")
    assert p.derivative(1) == 0


def test_coordinate_named_i_is_rejected():
    with pytest.raises(ParseError):
        CoordinateRing(['i'])


def test_unknown_variable():
    ring = CoordinateRing(['x'])
    with pytest.raises(UnknownVariable):
        ring.parse("x + z")
    with pytest.raises(UnknownVariable):
        ring.variable('z')


def test_relation_without_square_is_unsupported():
    with pytest.raises(UnsupportedRelation):
        CoordinateRing(['x', 'y'], ['x*y - 1'])


def test_circular_relations_do_not_terminate():
    with pytest.raises(NonTerminatingRelationSet):
        CoordinateRing(['x', 'y'], ['x^2 - x*y', 'y^2 - 1'])


def test_sample_points_satisfy_relation(rng):
    ring = CoordinateRing(['x1', 'x2', 'x3'], ['x1^2 + x2^2 + x3^2 - 1'])
    for point in ring.sample_points(10, rng):
        assert all(not point[name].y for name in ring.coordinates)
        assert sum(point[name].x ** 2 for name in ring.coordinates) == 1
        ring.check_point(point)


def test_check_point_rejects_off_relation():
    ring = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    with pytest.raises(RelationViolatedAtPoint):
        ring.check_point({'x': 1, 'y': 1})
    with pytest.raises(RelationViolatedAtPoint):
        ring.check_point({'x': 1})


def test_evaluate():
    ring = CoordinateRing(['x', 'y'])
    assert ring.parse("x*y + 1/2").evaluate({'x': 2, 'y': 3}) == QQ_I(QQ(13, 2), 0)
    assert ring.parse("i*x").evaluate({'x': I}) == -ONE


def test_equal_rings_share_scalars():
    first = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    second = CoordinateRing(['x', 'y'], ['x^2 + y^2 - 1'])
    assert first == second
    assert first.variable('x') + second.variable('y') == first.parse("x + y")
