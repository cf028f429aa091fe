from collections import Counter

import pytest

from algebroids import catalogue
from algebroids.acp import real_parts
from algebroids.algebroid import verify_algebroid
from algebroids.calculus import anchor_apply, bracket_sections, d_e
from algebroids.errors import Degenerate, NotPoisson, SkewViolation
from algebroids.poisson import (
    GeneralBisection,
    dual_algebroid,
    form_bracket,
    general_bracket,
    ie_inverse,
    ie_map,
    is_poisson,
    lichnerowicz_d,
    poisson_bracket,
    rank_survey,
    sharp,
)
from algebroids.sampling import random_form, random_multivector, random_scalar
from algebroids.tensors import Form, Multivector, transport


def test_so3_bivector_is_not_poisson(so3):
    check = is_poisson(so3, Multivector.basis(so3, [0, 1]))
    assert not check.ok
    assert check.residual.to_text() == "2*e1^e2^e3"


def test_abelian_bivectors_are_poisson(abelian4, rng):
    for _ in range(5):
        assert is_poisson(abelian4, random_multivector(abelian4, 2, rng)).ok


def test_central_bivector_on_heisenberg(h3):
    assert is_poisson(h3, Multivector.basis(h3, [0, 2])).ok


def test_bracket_of_coordinates(tangent2):
    pi = Multivector.basis(tangent2, [0, 1])
    x1, x2 = tangent2.ring.variable('x1'), tangent2.ring.variable('x2')
    assert poisson_bracket(tangent2, pi, x1, x2) == 1
    assert poisson_bracket(tangent2, pi, x2, x1) == -1


def test_bivector_needs_skew_matrix(so3):
    F = GeneralBisection(so3, [[0, 1, 0], [0, 0, 0], [0, 0, 0]], name="F")
    assert not F.is_skew()
    with pytest.raises(SkewViolation):
        F.bivector()


def test_matrix_and_bivector_agree(so3):
    pi = Multivector.basis(so3, [0, 2]) * 3
    assert GeneralBisection.from_multivector(pi).bivector() == pi


def test_dual_algebroid_is_a_lie_algebroid(h3, tangent2):
    dual = dual_algebroid(h3, Multivector.basis(h3, [0, 2]))
    assert verify_algebroid(dual).ok
    pi = Multivector(tangent2, 2, {(0, 1): "x1"})
    assert verify_algebroid(dual_algebroid(tangent2, pi)).ok


def test_dual_needs_poisson(so3):
    with pytest.raises(NotPoisson):
        dual_algebroid(so3, Multivector.basis(so3, [0, 1]))


def test_lichnerowicz_differential_squares_to_zero(tangent2, rng):
    pi = Multivector(tangent2, 2, {(0, 1): "x1"})
    for degree in (0, 1):
        S = random_multivector(tangent2, degree, rng, coefficient_degree=2)
        assert lichnerowicz_d(tangent2, pi, lichnerowicz_d(tangent2, pi, S)).is_zero()


def test_exterior_power_of_sharp_is_invertible(abelian4, rng):
    pi = Multivector.basis(abelian4, [0, 1]) + Multivector.basis(abelian4, [2, 3])
    for degree in (1, 2):
        omega = random_form(abelian4, degree, rng)
        assert ie_inverse(pi, ie_map(pi, omega)) == omega


def test_degenerate_bisection_has_no_inverse(abelian4):
    with pytest.raises(Degenerate):
        ie_inverse(Multivector.basis(abelian4, [0, 1]), Multivector.basis(abelian4, [0, 1]))


def test_rank_survey_of_symplectic_plane(tangent2):
    survey = rank_survey(tangent2, Multivector.basis(tangent2, [0, 1]), count=5, seed=3)
    assert survey['distribution'] == Counter({2: 5})
    assert survey['sharp_image'] == Counter({2: 5})


def _random_skew_bisection(A, rng):
    matrix = [[A.ring.zero] * A.rank for _ in range(A.rank)]
    for a in range(A.rank):
        for b in range(a + 1, A.rank):
            value = random_scalar(A.ring, rng, 1)
            matrix[a][b], matrix[b][a] = value, -value
    return GeneralBisection(A, matrix, name="F")


def _poisson_pairs():
    tangent = catalogue.tangent(2)
    heisenberg = catalogue.heisenberg()
    instance = catalogue.acp_tangent()
    return [
        (tangent, Multivector(tangent, 2, {(0, 1): "x1"})),
        (heisenberg, Multivector.basis(heisenberg, [0, 2])),
        (instance.algebroid, real_parts(instance.pi20)[0]),
    ]


@pytest.mark.parametrize("name", ['so3', 'tangent2', 'sphere1'])
def test_skew_general_bracket_is_the_form_bracket(name, rng):
    A = catalogue.build(name)
    for _ in range(5):
        F = _random_skew_bisection(A, rng)
        omega, theta = random_form(A, 1, rng, coefficient_degree=1), random_form(A, 1, rng, coefficient_degree=1)
        assert form_bracket(A, F.bivector(), omega, theta) == general_bracket(A, F, omega, theta)
        assert general_bracket(A, F, omega, theta) == -general_bracket(A, F, theta, omega)


@pytest.mark.parametrize("case", range(3))
def test_form_bracket_leibniz_rule(case, rng):
    A, pi = _poisson_pairs()[case]
    for _ in range(5):
        omega, theta = random_form(A, 1, rng, coefficient_degree=1), random_form(A, 1, rng, coefficient_degree=1)
        f = random_scalar(A.ring, rng, 2)
        derivative = anchor_apply(A, sharp(pi, omega), f)
        assert form_bracket(A, pi, omega, theta * f) == form_bracket(A, pi, omega, theta) * f + theta * derivative


@pytest.mark.parametrize("case", range(3))
def test_sharp_is_a_bracket_homomorphism(case, rng):
    A, pi = _poisson_pairs()[case]
    for _ in range(5):
        omega, theta = random_form(A, 1, rng, coefficient_degree=1), random_form(A, 1, rng, coefficient_degree=1)
        image = sharp(pi, form_bracket(A, pi, omega, theta))
        assert image == bracket_sections(A, sharp(pi, omega), sharp(pi, theta))


@pytest.mark.parametrize("case", range(3))
def test_lichnerowicz_differential_is_the_dual_differential(case, rng):
    A, pi = _poisson_pairs()[case]
    dual = dual_algebroid(A, pi)
    for degree in range(A.rank):
        S = random_multivector(A, degree, rng, coefficient_degree=1)
        expected = d_e(dual, transport(S, dual, Form))
        assert transport(lichnerowicz_d(A, pi, S), dual, Form) == expected
