import pytest

from algebroids import catalogue
from algebroids.calculus import (
    anchor_apply,
    anchor_homomorphism_residuals,
    bracket_sections,
    d_e,
    lie_derivative,
    schouten,
    schouten_jacobi_residual,
    schouten_leibniz_residual,
    schouten_skew_residual,
)
from algebroids.sampling import random_form, random_multivector, random_scalar, random_section
from algebroids.tensors import Form, coframe, frame

DIFFERENTIAL_CASES = ['abelian4', 'so3', 'sl2', 'h3', 'tangent2', 'sphere1', 'sphere2']
FORMS_PER_ALGEBROID = 50
SCHOUTEN_TRIPLES = 30


def test_chevalley_eilenberg_on_so3(so3):
    assert d_e(so3, coframe(so3, 2)) == -Form.basis(so3, [0, 1])


def test_differential_of_function_is_anchor(tangent2):
    f = tangent2.ring.parse("x1^2*x2")
    df = d_e(tangent2, f)
    assert df.component(0) == tangent2.ring.parse("2*x1*x2")
    assert df.component(1) == tangent2.ring.parse("x1^2")


@pytest.mark.parametrize("name", DIFFERENTIAL_CASES)
def test_d_squared_vanishes(name, rng):
    A = catalogue.build(name)
    for k in range(FORMS_PER_ALGEBROID):
        degree = k % A.rank
        omega = random_form(A, degree, rng, coefficient_degree=2)
        assert d_e(A, d_e(A, omega)).is_zero()


def test_bracket_leibniz_rule(tangent2, rng):
    for _ in range(10):
        s, t = random_section(tangent2, rng), random_section(tangent2, rng)
        f = random_scalar(tangent2.ring, rng)
        assert bracket_sections(tangent2, s, t * f) == \
            bracket_sections(tangent2, s, t) * f + t * anchor_apply(tangent2, s, f)


@pytest.mark.parametrize("name", ['tangent2', 'sphere1', 'sphere2'])
def test_anchor_is_a_homomorphism(name, rng):
    A = catalogue.build(name)
    for _ in range(8):
        s = random_section(A, rng, coefficient_degree=1)
        t = random_section(A, rng, coefficient_degree=1)
        assert all(not r for r in anchor_homomorphism_residuals(A, s, t))


def test_schouten_extends_sections_and_functions(sphere1, rng):
    for _ in range(6):
        s, t = random_section(sphere1, rng), random_section(sphere1, rng)
        f = random_scalar(sphere1.ring, rng)
        assert schouten(sphere1, s, t) == bracket_sections(sphere1, s, t)
        assert schouten(sphere1, s, f).to_scalar() == anchor_apply(sphere1, s, f)


@pytest.mark.parametrize("name", ['so3', 'h3', 'tangent2', 'sphere1'])
def test_schouten_graded_identities(name, rng):
    A = catalogue.build(name)
    top = min(A.rank, 2)
    for k in range(SCHOUTEN_TRIPLES):
        p, q, r = 1 + k % top, 1 + (k // 2) % top, 1 + (k + 1) % top
        S = random_multivector(A, p, rng, coefficient_degree=1)
        T = random_multivector(A, q, rng, coefficient_degree=1)
        U = random_multivector(A, r, rng, coefficient_degree=1)
        assert schouten_skew_residual(A, S, T).is_zero()
        assert schouten_leibniz_residual(A, S, T, U).is_zero()
        assert schouten_jacobi_residual(A, S, T, U).is_zero()


def test_lie_derivative_commutes_with_d(sphere1, rng):
    for k in range(6):
        s = random_section(sphere1, rng, coefficient_degree=1)
        omega = random_form(sphere1, k % 2, rng, coefficient_degree=1)
        assert d_e(sphere1, lie_derivative(sphere1, s, omega)) == lie_derivative(sphere1, s, d_e(sphere1, omega))


def test_lie_derivative_of_multivector_is_schouten(so3):
    e1, e2, e3 = (frame(so3, a) for a in range(3))
    assert lie_derivative(so3, e1, e2) == e3
