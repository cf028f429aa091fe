import numpy as np
import pytest

from algebroids import acp, catalogue
from algebroids.acp import (
    acp_function_bracket,
    dolbeault_parts,
    hamiltonian_closure_residual,
    hamiltonian_section,
    is_acp,
    nondegenerate,
    poisson_to_symplectic,
    real_parts,
    sigma,
    sigma_split,
    symplectic_to_poisson,
)
from algebroids.calculus import d_e, schouten
from algebroids.complexification import TensorField12, bigrade, is_pure, pure_basis
from algebroids.errors import InternalInconsistency, NotACP, NotPure
from algebroids.poisson import ie_map, is_poisson
from algebroids.sampling import random_multivector
from algebroids.tensors import Form, Multivector, wedge

FORM_BIDEGREES = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
DEGREE_PAIRS = [(0, 1), (1, 1), (1, 2), (2, 1), (0, 2), (2, 2)]


@pytest.mark.parametrize("name", sorted(catalogue.ACP_INSTANCES))
def test_catalogue_instances_are_acp(name):
    instance = catalogue.acp_instance(name)
    check = is_acp(instance.algebroid, instance.J, instance.pi20)
    assert check.ok
    assert check.self_bracket.is_zero() and check.mixed_bracket.is_zero()


@pytest.mark.parametrize("name", sorted(catalogue.ACP_INSTANCES))
def test_real_parts_are_poisson(name):
    instance = catalogue.acp_instance(name)
    for part in real_parts(instance.pi20):
        assert part.is_real()
        assert is_poisson(instance.algebroid, part).ok


def test_mixed_bivector_is_rejected():
    instance = catalogue.acp_abelian()
    with pytest.raises(NotPure):
        is_acp(instance.algebroid, instance.J, Multivector.basis(instance.algebroid, [0, 1]))


def test_function_bracket_on_tangent_instance():
    instance = catalogue.acp_tangent()
    ring = instance.algebroid.ring
    x1, x3 = ring.variable('x1'), ring.variable('x3')
    assert acp_function_bracket(instance.algebroid, instance.J, instance.pi20, x1, x3) == 1


def test_dolbeault_parts_split_d():
    instance = catalogue.acp_tangent()
    A, J = instance.algebroid, instance.J
    f = A.ring.parse("x1*x3 + x2^2")
    holomorphic, antiholomorphic = dolbeault_parts(A, J, f)
    assert holomorphic + antiholomorphic == d_e(A, f)
    assert is_pure(J, holomorphic, 1, 0)
    assert is_pure(J, antiholomorphic, 0, 1)


def test_hamiltonian_sections_close(rng):
    instance = catalogue.acp_tangent()
    A = instance.algebroid
    f, g = A.ring.parse("x1*x2"), A.ring.parse("x3^2 + x4")
    assert is_pure(instance.J, hamiltonian_section(A, instance.J, instance.pi20, f), 1, 0)
    assert hamiltonian_closure_residual(A, instance.J, instance.pi20, f, g).is_zero()


def test_sigma11_squares_to_zero():
    instance = catalogue.acp_heisenberg_line()
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    for S in pure_basis(J, Multivector, 1, 0) + pure_basis(J, Multivector, 0, 1):
        once = sigma_split(A, J, pi20, S)
        assert not once.outer
        assert sigma_split(A, J, pi20, once.sigma11).sigma11.is_zero()


def test_sigma_is_minus_schouten_with_pi():
    instance = catalogue.acp_heisenberg_line()
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    S = pure_basis(J, Multivector, 1, 0)[0]
    assert sigma(A, J, pi20, S, 'sigma') == sigma(A, J, pi20, S, 'sigma1') + sigma(A, J, pi20, S, 'sigma2')
    with pytest.raises(ValueError):
        sigma(A, J, pi20, S, 'sigma3')


@pytest.mark.parametrize("name", ['abelian4', 'TR4'])
def test_symplectic_correspondence(name):
    instance = catalogue.acp_instance(name)
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    assert nondegenerate(pi20)
    omega20 = poisson_to_symplectic(A, J, pi20)
    assert is_pure(J, omega20, 2, 0)
    assert symplectic_to_poisson(A, J, omega20) == pi20


def test_symplectic_form_needs_acp():
    A, J = catalogue.nonintegrable_heisenberg_line()
    pi20 = catalogue.holomorphic_wedge(J, (1, 2))
    with pytest.raises(NotACP):
        poisson_to_symplectic(A, J, pi20)


def test_nonzero_nijenhuis_tensor_on_a_symplectic_pair_is_inconsistent(monkeypatch):
    instance = catalogue.acp_instance('abelian4')
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    components = np.empty((A.rank,) * 3, dtype=object)
    for index in np.ndindex(*components.shape):
        components[index] = A.ring.zero
    components[0, 1, 2] = A.ring.one
    components[1, 0, 2] = -A.ring.one
    calls = []

    def torsion(algebroid, endo, check_tensorial=True):
        calls.append(endo.name)
        return TensorField12(algebroid, components)

    monkeypatch.setattr(acp, 'nijenhuis', torsion)
    with pytest.raises(InternalInconsistency) as excinfo:
        poisson_to_symplectic(A, J, pi20)
    assert excinfo.value.detail == [(1, 2)]
    assert calls == [J.name]


@pytest.mark.parametrize("name", ['TR4', 'h3xR'])
def test_ie_intertwines_dolbeault_and_sigma(name, random_pure):
    instance = catalogue.acp_instance(name)
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    pi = pi20 + pi20.conjugate()
    for p, q in FORM_BIDEGREES:
        for _ in range(3):
            phi = random_pure(J, Form, p, q)
            sign = (-1) ** (p + q)
            image = ie_map(pi, phi)
            table = bigrade(J, d_e(A, phi))
            assert ie_map(pi, table.get(p + 1, q, A)) == sigma(A, J, pi20, image, 'sigma1') * sign
            assert ie_map(pi, table.get(p, q + 1, A)) == sigma(A, J, pi20, image, 'sigma2') * sign


@pytest.mark.parametrize("name", ['TR4', 'h3xR'])
def test_sigma1_squares_to_zero_and_conjugates_to_sigma2(name, rng):
    instance = catalogue.acp_instance(name)
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20
    for degree in (0, 1, 2, 3):
        S = random_multivector(A, degree, rng, coefficient_degree=1)
        once = sigma(A, J, pi20, S, 'sigma1')
        assert sigma(A, J, pi20, once, 'sigma1').is_zero()
        assert once.conjugate() == sigma(A, J, pi20, S.conjugate(), 'sigma2')


@pytest.mark.parametrize("name", ['TR4', 'h3xR'])
def test_sigma1_is_a_derivation_of_wedge_and_bracket(name, rng):
    instance = catalogue.acp_instance(name)
    A, J, pi20 = instance.algebroid, instance.J, instance.pi20

    def s1(S):
        return sigma(A, J, pi20, S, 'sigma1')

    for p, q in DEGREE_PAIRS:
        S = random_multivector(A, p, rng, coefficient_degree=1)
        T = random_multivector(A, q, rng, coefficient_degree=1)
        assert s1(wedge(S, T)) == wedge(s1(S), T) * (-1) ** q + wedge(S, s1(T))
        assert s1(schouten(A, S, T)) == schouten(A, S, s1(T)) - schouten(A, s1(S), T) * (-1) ** q
