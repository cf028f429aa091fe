import pytest

from algebroids import catalogue, matrices
from algebroids.algebroid import Algebroid, verify_algebroid
from algebroids.calculus import frame_sections
from algebroids.complexification import make_ac_structure
from algebroids.errors import ParentMismatch
from algebroids.prolongation import (
    Connection,
    clift,
    clift_endo,
    complete_lift_laws,
    curvature_nijenhuis_check,
    example_pi_on_prolongation,
    hlift_endo,
    horizontal_lift_laws,
    j1_structure,
    lifted_nijenhuis_check,
    prolong,
    vlift,
)
from algebroids.sampling import random_connection, random_section
from algebroids.scalars import CoordinateRing


def test_prolongation_doubles_the_rank(so3):
    P = prolong(so3)
    assert P.total.rank == 6
    assert P.ring.coordinates == ('y1', 'y2', 'y3')
    assert verify_algebroid(P.total).ok


def test_fiber_names_avoid_base_coordinates():
    ring = CoordinateRing(['y1'])
    A = Algebroid(ring, 1, matrices.identity(ring, 1), catalogue.structure_from_brackets(ring, 1, {}), "line")
    P = prolong(A)
    assert P.ring.coordinates == ('y1', 'u1')


@pytest.mark.parametrize("name", ['so3', 'h3', 'tangent2', 'sphere1'])
def test_complete_lift_laws_on_frames(name):
    P = prolong(catalogue.build(name))
    assert complete_lift_laws(P).ok


def test_complete_lift_laws_on_random_sections(tangent2, rng):
    P = prolong(tangent2)
    sections = [random_section(tangent2, rng, coefficient_degree=2) for _ in range(3)]
    assert complete_lift_laws(P, sections).ok


def test_lift_of_a_function(tangent2):
    P = prolong(tangent2)
    f = tangent2.ring.parse("x1*x2")
    lifted = clift(P, f).to_scalar()
    assert lifted == P.ring.parse("x2*y1 + x1*y2")
    assert vlift(P, f).to_scalar() == P.ring.parse("x1*x2")


def test_lifts_reject_foreign_sections(so3, h3):
    P = prolong(so3)
    with pytest.raises(ParentMismatch):
        clift(P, frame_sections(h3)[0])


def test_horizontal_laws_for_random_connections(so3, rng):
    P = prolong(so3)
    connections = [Connection.zero(so3)] + [random_connection(so3, rng) for _ in range(10)]
    for connection in connections:
        assert horizontal_lift_laws(P, connection).ok
        assert curvature_nijenhuis_check(P, connection).ok


def test_horizontal_laws_on_tangent_bundle(tangent2, rng):
    P = prolong(tangent2)
    for _ in range(3):
        connection = random_connection(tangent2, rng)
        assert horizontal_lift_laws(P, connection).ok
        assert not connection.tensoriality_residuals(tangent2.ring.variable('x1'))


def test_flat_connection_torsion_is_minus_bracket(so3):
    flat = Connection.zero(so3)
    e1, e2, e3 = frame_sections(so3)
    assert flat.torsion(e1, e2) == -e3
    assert flat.torsion_tensor().at(0, 1) == -e3


@pytest.mark.parametrize("integrable", [True, False])
def test_lifted_nijenhuis_laws(integrable):
    if integrable:
        instance = catalogue.acp_heisenberg_line()
        A, J = instance.algebroid, instance.J
    else:
        A, J = catalogue.nonintegrable_heisenberg_line()
    P = prolong(A)
    make_ac_structure(P.total, clift_endo(P, J))
    assert lifted_nijenhuis_check(P, J).ok


def test_horizontal_structures_are_almost_complex(rng):
    A = catalogue.abelian(2)
    J = make_ac_structure(A, [[0, -1], [1, 0]])
    P = prolong(A)
    connection = random_connection(A, rng, density=1.0)
    j1_structure(P, connection)
    hlift_endo(P, connection, J)


def test_prolongation_example_on_flat_plane():
    A = catalogue.abelian(2)
    P = prolong(A)
    e1, e2 = frame_sections(A)
    certificate = example_pi_on_prolongation(P, Connection.zero(A), e1, e2)
    assert certificate.sufficient
    assert certificate.acp.ok


def test_prolongation_example_reports_failed_conditions(so3):
    P = prolong(so3)
    e1, e2, _ = frame_sections(so3)
    certificate = example_pi_on_prolongation(P, Connection.zero(so3), e1, e2)
    assert not certificate.conditions['bracket']
    assert not certificate.conditions['torsion']
    assert not certificate.sufficient
