import pytest

from algebroids import catalogue, complexification
from algebroids.calculus import schouten
from algebroids.catalogue import BLOCK_J, PAIRED_J
from algebroids.complexification import (
    Endo,
    bigrade,
    check_ac_morphism,
    de_components,
    holomorphic_frame,
    integrability_report,
    is_integrable,
    is_pure,
    make_ac_structure,
    nijenhuis,
    nijenhuis_torsion,
    pure_basis,
    pure_bidegree,
)
from algebroids.errors import NotAlmostComplex, NotPure
from algebroids.morphisms import Morphism
from algebroids.sampling import random_multivector
from algebroids.tensors import Form, Multivector, frame


def test_odd_rank_has_no_almost_complex_structure(so3):
    with pytest.raises(NotAlmostComplex):
        make_ac_structure(so3, [[0, -1, 0], [1, 0, 0], [0, 0, 1]])


def test_square_must_be_minus_identity(abelian4):
    with pytest.raises(NotAlmostComplex) as excinfo:
        make_ac_structure(abelian4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert excinfo.value.detail[:2] == (1, 1)


def test_holomorphic_frame_is_pure(abelian4):
    J = make_ac_structure(abelian4, BLOCK_J)
    for z in holomorphic_frame(J):
        assert is_pure(J, z, 1, 0)
        assert is_pure(J, z.conjugate(), 0, 1)


def test_bigrade_components_add_up(abelian4, rng):
    J = make_ac_structure(abelian4, PAIRED_J)
    for degree in (1, 2, 3):
        X = random_multivector(abelian4, degree, rng)
        table = bigrade(J, X)
        assert table.total(abelian4) == X
        assert all(p + q == degree for p, q in table.nonzero())


def test_real_section_is_not_pure(abelian4):
    J = make_ac_structure(abelian4, BLOCK_J)
    with pytest.raises(NotPure):
        pure_bidegree(J, frame(abelian4, 0))


@pytest.mark.parametrize("name", sorted(catalogue.ACP_INSTANCES))
def test_catalogue_structures_are_integrable(name):
    instance = catalogue.acp_instance(name)
    report = integrability_report(instance.algebroid, instance.J)
    assert report.integrable
    assert all(report.items.values())
    assert set(report.items) == {'i', 'ii', 'iii', 'iv', 'v'}


def test_block_structure_on_heisenberg_line_is_not_integrable():
    A, J = catalogue.nonintegrable_heisenberg_line()
    report = integrability_report(A, J)
    assert not report.integrable
    assert not any(report.items.values())
    assert not is_integrable(A, J)
    assert nijenhuis(A, J).nonzero_pairs()


def test_integrable_d_has_no_outer_parts():
    instance = catalogue.acp_heisenberg_line()
    for omega in pure_basis(instance.J, Form, 1, 0):
        parts = de_components(instance.algebroid, instance.J, omega)
        assert not parts.partial_prime
        assert not parts.partial_double_prime


def test_nijenhuis_torsion_of_identity_vanishes(so3):
    identity = Endo(so3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="id")
    assert nijenhuis_torsion(so3, identity).is_zero()


def test_complex_linear_shear_is_almost_complex():
    instance = catalogue.acp_abelian()
    shear = catalogue.abelian_acp_automorphism(instance)
    assert check_ac_morphism(shear, instance.J, instance.J).ok


def test_stretch_is_not_almost_complex():
    instance = catalogue.acp_abelian()
    A = instance.algebroid
    stretched = Morphism(A, A, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], name="stretched")
    check = check_ac_morphism(stretched, instance.J, instance.J)
    assert not check.ok
    assert not check.pullback_purity


def test_pure_basis_spans_the_bidegree(abelian4):
    J = make_ac_structure(abelian4, PAIRED_J)
    basis = pure_basis(J, Multivector, 1, 1)
    assert basis
    assert all(is_pure(J, X, 1, 1) for X in basis)


BRACKET_BIDEGREES = [
    ((1, 0), (1, 0)), ((1, 0), (0, 1)), ((0, 1), (0, 1)), ((1, 0), (2, 0)),
    ((1, 1), (0, 1)), ((2, 0), (0, 1)), ((0, 0), (1, 1)), ((0, 0), (2, 0)),
]


def _bracket_parts(p, q, r, s):
    inner = {(p + r - 1, q + s), (p + r, q + s - 1)}
    outer = {(p + r + 1, q + s - 2), (p + r - 2, q + s + 1)}
    return inner, outer


@pytest.mark.parametrize("name", ['TR4', 'h3xR'])
def test_schouten_of_pure_multivectors_keeps_inner_bidegrees(name, random_pure):
    instance = catalogue.acp_instance(name)
    A, J = instance.algebroid, instance.J
    for (p, q), (r, s) in BRACKET_BIDEGREES:
        inner, _ = _bracket_parts(p, q, r, s)
        S = random_pure(J, Multivector, p, q)
        T = random_pure(J, Multivector, r, s)
        assert set(bigrade(J, schouten(A, S, T)).nonzero()) <= inner


def test_schouten_without_integrability_spreads_over_four_bidegrees(random_pure):
    A, J = catalogue.nonintegrable_heisenberg_line()
    for (p, q), (r, s) in BRACKET_BIDEGREES:
        inner, outer = _bracket_parts(p, q, r, s)
        S = random_pure(J, Multivector, p, q)
        T = random_pure(J, Multivector, r, s)
        assert set(bigrade(J, schouten(A, S, T)).nonzero()) <= inner | outer
    z = pure_basis(J, Multivector, 1, 0)
    found = set()
    for S in z:
        for T in z:
            found.update(bigrade(J, schouten(A, S, T)).nonzero())
    assert (0, 1) in found


@pytest.mark.parametrize("name", sorted(catalogue.ACP_INSTANCES))
def test_dolbeault_operators_square_to_zero(name, random_pure):
    instance = catalogue.acp_instance(name)
    A, J = instance.algebroid, instance.J
    for p, q in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]:
        parts = de_components(A, J, random_pure(J, Form, p, q))
        after_partial = de_components(A, J, parts.partial)
        after_partial_bar = de_components(A, J, parts.partial_bar)
        assert after_partial.partial.is_zero()
        assert after_partial_bar.partial_bar.is_zero()
        assert (after_partial.partial_bar + after_partial_bar.partial).is_zero()


def test_integrability_degree_defaults_to_rank(monkeypatch):
    seen = []
    original = complexification.pure_basis

    def recording(J, kind, p, q):
        if kind is Form:
            seen.append(p + q)
        return original(J, kind, p, q)

    monkeypatch.setattr(complexification, 'pure_basis', recording)
    instance = catalogue.acp_abelian()
    assert integrability_report(instance.algebroid, instance.J).integrable
    assert max(seen) == 2

    seen.clear()
    A = catalogue.abelian(6)
    J = make_ac_structure(A, [[0, -1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 0, -1, 0, 0],
                              [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, -1], [0, 0, 0, 0, 1, 0]])
    assert integrability_report(A, J).integrable
    assert max(seen) == 1

    seen.clear()
    integrability_report(A, J, max_degree=2)
    assert max(seen) == 2
