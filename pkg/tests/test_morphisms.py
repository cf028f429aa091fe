import pytest

from algebroids import catalogue, matrices
from algebroids.calculus import d_e
from algebroids.errors import NotAnchored, ParentMismatch
from algebroids.morphisms import Morphism, check_la_morphism, compose, identity_morphism
from algebroids.sampling import random_form, random_section
from algebroids.tensors import pairing


def test_rotation_is_an_automorphism_of_so3():
    assert check_la_morphism(catalogue.so3_rotation()).ok


def test_scaling_breaks_the_bracket(so3):
    doubled = Morphism(so3, so3, [[2, 0, 0], [0, 2, 0], [0, 0, 2]], name="doubled")
    check = check_la_morphism(doubled)
    assert not check.ok
    assert check.witness == (1, 2)
    assert check.residual.to_text() == "-2*e3"


def test_fourth_power_of_quarter_turn_is_identity():
    rot = catalogue.so3_rotation()
    power = compose(rot, compose(rot, compose(rot, rot)))
    assert matrices.equal(power.matrix, identity_morphism(rot.source).matrix)


def test_pullback_commutes_with_d(rng):
    rot = catalogue.so3_rotation()
    A = rot.source
    for degree in (0, 1, 2):
        omega = random_form(A, degree, rng)
        assert d_e(A, rot.pullback(omega)) == rot.pullback(d_e(A, omega))


def test_pullback_is_dual_to_push(rng):
    rot = catalogue.so3_rotation()
    for _ in range(5):
        omega = random_form(rot.target, 1, rng)
        s = random_section(rot.source, rng)
        assert pairing(rot.pullback(omega), s) == pairing(omega, rot.push(s))


def test_anchor_mismatch_is_rejected(tangent2):
    with pytest.raises(NotAnchored):
        Morphism(tangent2, tangent2, [[0, 1], [1, 0]], name="swap")


def test_bases_must_agree(so3, tangent2):
    with pytest.raises(ParentMismatch):
        Morphism(so3, tangent2, [[1, 0, 0], [0, 1, 0]])
