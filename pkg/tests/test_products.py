import pytest

from algebroids import catalogue, matrices
from algebroids.algebroid import verify_algebroid
from algebroids.calculus import bracket_sections, frame_sections
from algebroids.errors import NoAnnihilator, NotMorphism, PreconditionFailed
from algebroids.morphisms import Morphism, identity_morphism
from algebroids.products import (
    Subalgebroid,
    direct_product,
    graph,
    graph_theorem_check,
    is_acp_morphism,
    is_coisotropic,
    is_lagrangian,
)
from algebroids.tensors import pairing


def test_product_of_lie_algebras(so3, h3):
    product = direct_product(so3, h3)
    assert product.total.rank == 6
    assert verify_algebroid(product.total).ok
    e = frame_sections(product.total)
    assert bracket_sections(product.total, e[3], e[4]) == e[5]
    assert bracket_sections(product.total, e[0], e[3]).is_zero()


def test_repeated_coordinates_are_renamed(tangent2):
    product = direct_product(tangent2, tangent2)
    assert product.ring.coordinates == ('x1', 'x2', 'x1_2', 'x2_2')
    assert product.embed(1, tangent2.ring.variable('x1')) == product.ring.variable('x1_2')


def test_product_of_sphere_algebroids_verifies(sphere1, tangent2):
    product = direct_product(sphere1, tangent2)
    assert verify_algebroid(product.total).ok


def test_graph_of_rotation_is_closed():
    rot = catalogue.so3_rotation()
    _, sub = graph(rot)
    assert sub.closure() == (True, "symbolic")
    for alpha in sub.annihilating_forms():
        assert all(not pairing(alpha, s) for s in sub.sections)


def test_graph_needs_a_morphism(so3):
    doubled = Morphism(so3, so3, matrices.scale(matrices.identity(so3.ring, 3), 2), name="doubled")
    with pytest.raises(NotMorphism):
        graph(doubled)


def test_graph_needs_point_base(tangent2):
    with pytest.raises(PreconditionFailed):
        graph(identity_morphism(tangent2))


def test_span_membership_with_solved_annihilator(tangent2):
    sub = Subalgebroid(tangent2, [[1], ["x2"]], name="line")
    (alpha,) = sub.annihilating_forms()
    assert pairing(alpha, sub.sections[0]).is_zero()
    ok, method = sub.contains([sub.sections[0] * tangent2.ring.parse("x1 + 3")])
    assert ok and method == "symbolic"


def test_no_annihilator_without_unit_block(tangent2):
    sub = Subalgebroid(tangent2, [["x1"], ["x2"]], name="radial")
    with pytest.raises(NoAnnihilator):
        sub.annihilating_forms()
    ok, method = sub.contains([sub.sections[0] * 2], count=4, seed=1)
    assert ok and method == "pointwise-certified"


@pytest.mark.parametrize("name", sorted(catalogue.graph_triples()))
def test_graph_criterion_agrees(name):
    triple = catalogue.graph_triples()[name]
    report = graph_theorem_check(triple.phi, triple.source, triple.target)
    assert report.agree
    assert report.morphism.ok == triple.expected


def test_identity_graph_is_lagrangian():
    instance = catalogue.acp_abelian()
    phi = identity_morphism(instance.algebroid)
    product, sub = graph(phi)
    J = product.endo(instance.J, instance.J)
    pi = product.bivector(instance.pi20, -instance.pi20)
    assert is_coisotropic(sub, J, pi).ok
    assert is_lagrangian(sub, J, pi, count=2, seed=0).ok


def test_acp_morphism_checks_relatedness():
    instance = catalogue.acp_abelian()
    data = (instance.J, instance.pi20)
    shear = catalogue.abelian_acp_automorphism(instance)
    check = is_acp_morphism(shear, data, data)
    assert check.ok and check.related_as_maps and check.related_on_forms
