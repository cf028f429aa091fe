import pytest

from algebroids import catalogue
from algebroids.acp import real_parts
from algebroids.compatibility import (
    compatibility_conditions,
    composite_bisection,
    concomitant,
    is_compatible,
    sign_flip_residuals,
)
from algebroids.complexification import Endo
from algebroids.errors import PreconditionFailed
from algebroids.poisson import GeneralBisection
from algebroids.tensors import Multivector, coframe


def test_real_part_of_acp_bivector_is_compatible():
    instance = catalogue.acp_abelian()
    A = instance.algebroid
    F = GeneralBisection.from_multivector(real_parts(instance.pi20)[0], name="pi_R")
    report = is_compatible(A, F, instance.J)
    assert report.compatible
    assert report.poisson and report.nijenhuis_free


def test_noncommuting_pair_is_not_compatible():
    instance = catalogue.acp_abelian()
    A = instance.algebroid
    F = GeneralBisection.from_multivector(Multivector.basis(A, [0, 1]), name="pi12")
    report = is_compatible(A, F, instance.J)
    assert not report.commutes
    assert not report.compatible


def test_constant_data_on_abelian_has_no_concomitant():
    instance = catalogue.acp_abelian()
    A = instance.algebroid
    F = GeneralBisection.from_multivector(Multivector.basis(A, [0, 1]))
    assert all(not value for value in concomitant(A, F, instance.J).values())


def test_poisson_precondition(so3):
    F = GeneralBisection.from_multivector(Multivector.basis(so3, [0, 1]))
    identity = Endo(so3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="id")
    with pytest.raises(PreconditionFailed) as excinfo:
        is_compatible(so3, F, identity)
    assert excinfo.value.detail == "poisson"


def test_nijenhuis_precondition():
    A, J = catalogue.nonintegrable_heisenberg_line()
    F = GeneralBisection.from_multivector(Multivector.basis(A, [2, 3]))
    with pytest.raises(PreconditionFailed) as excinfo:
        is_compatible(A, F, J)
    assert excinfo.value.detail == "nijenhuis"
    # the conditions themselves are still computable
    compatibility_conditions(A, F, J)


def test_composite_bisection_sharp(abelian4):
    J = Endo(abelian4, catalogue.BLOCK_J, name="J")
    F = GeneralBisection.from_multivector(Multivector.basis(abelian4, [0, 2]))
    FG = composite_bisection(F, J)
    for a in range(4):
        alpha = coframe(abelian4, a)
        assert FG.sharp(alpha) == F.sharp(J.dual_apply(alpha))


def test_sign_flip_is_trivial_for_zero_bracket():
    instance = catalogue.acp_abelian()
    A = instance.algebroid
    F = GeneralBisection.from_multivector(real_parts(instance.pi20)[0])
    for sign in (1, -1):
        assert all(not v for v in sign_flip_residuals(A, F, instance.J, sign).values())
