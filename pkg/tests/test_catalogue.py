import pytest

from algebroids import catalogue
from algebroids.complexification import is_pure
from algebroids.errors import UnknownName


def test_build_by_name():
    assert catalogue.build('h3').rank == 3
    assert catalogue.build('sphere2').ring.coordinates == ('x1', 'x2', 'x3', 'x4')
    with pytest.raises(UnknownName):
        catalogue.build('so4')


def test_acp_instances_carry_pure_bivectors():
    for name in catalogue.ACP_INSTANCES:
        instance = catalogue.acp_instance(name)
        assert instance.name == name
        assert is_pure(instance.J, instance.pi20, 2, 0)
        assert not instance.pi20.is_zero()
    with pytest.raises(UnknownName):
        catalogue.acp_instance('sl2')


def test_holomorphic_wedge_is_one_based():
    instance = catalogue.acp_abelian()
    assert catalogue.holomorphic_wedge(instance.J, (1, 2)) == instance.pi20
    assert catalogue.holomorphic_wedge(instance.J, (1, 1)).is_zero()


def test_graph_triples_carry_expectations():
    triples = catalogue.graph_triples()
    assert {name for name, t in triples.items() if t.expected} == {
        'abelian4-identity', 'abelian4-shear', 'h3xR-identity'}
    assert all(t.phi.source is t.source[0].parent for t in triples.values())
