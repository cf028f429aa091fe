import pytest

from algebroids import catalogue
from algebroids.algebroid import verify_algebroid
from algebroids.document import dump_algebroid, load_document, parse_algebroid, parse_document
from algebroids.errors import NameCollision, ParseError, ShapeMismatch, UnknownName, UnknownVariable
from algebroids.tensors import Multivector

SO3 = {
    'name': 'so3',
    'rank': 3,
    'structure': {'C^3_{1,2}': '1', 'C^1_{2,3}': '1', 'C^2_{1,3}': '-1'},
    'multivectors': {'pi12': [{'indices': [1, 2], 'coeff': '1'}]},
    'bisections': {'F': [[0, 0, 0], [0, 0, -1], [0, 1, 0]]},
    'morphisms': {'rot': [[0, -1, 0], [1, 0, 0], [0, 0, 1]]},
}

CIRCLE = {
    'coordinates': ['x', 'y'],
    'relations': ['x^2 + y^2 - 1'],
    'rank': 1,
    'anchor': [['-y', 'x']],
}


def test_parse_so3_matches_catalogue():
    doc = parse_document(SO3)
    reference = catalogue.so3()
    assert (doc.algebroid.structure == reference.structure).all()
    assert verify_algebroid(doc.algebroid).ok


def test_short_structure_keys():
    data = dict(SO3, structure={'C^3_12': '1', 'C^1_23': '1', 'C^2_13': '-1'})
    assert (parse_algebroid(data).structure == catalogue.so3().structure).all()


def test_named_structures_resolve():
    doc = parse_document(SO3)
    A = doc.algebroid
    assert doc.multivector('pi12') == Multivector.basis(A, [0, 1])
    assert doc.bisection('pi12').bivector() == Multivector.basis(A, [0, 1])
    assert doc.multivector('F') == Multivector.basis(A, [1, 2])
    assert doc.morphism('rot').matrix.shape == (3, 3)


def test_unknown_name_lists_known_ones():
    doc = parse_document(SO3)
    with pytest.raises(UnknownName) as excinfo:
        doc.endomorphism('J')
    assert excinfo.value.detail == 'J'


def test_name_collision_across_sections():
    data = dict(SO3, endomorphisms={'pi12': [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    with pytest.raises(NameCollision):
        parse_document(data)


@pytest.mark.parametrize("structure", [
    {'C^3_{2,1}': '1'},
    {'C3_{1,2}': '1'},
])
def test_bad_structure_keys(structure):
    with pytest.raises(ParseError):
        parse_algebroid(dict(SO3, structure=structure))


def test_index_out_of_range():
    with pytest.raises(ShapeMismatch):
        parse_algebroid(dict(SO3, structure={'C^4_{1,2}': '1'}))


def test_anchor_shape_is_checked():
    with pytest.raises(ShapeMismatch):
        parse_algebroid(dict(CIRCLE, anchor=[['-y']]))


def test_unknown_variable_in_anchor():
    with pytest.raises(UnknownVariable):
        parse_algebroid(dict(CIRCLE, anchor=[['-z', 'x']]))


def test_missing_rank():
    with pytest.raises(ParseError):
        parse_algebroid({'coordinates': ['x']})


def test_load_and_dump(write_document):
    path = write_document(CIRCLE, "circle.json")
    doc = load_document(path)
    assert doc.algebroid.name == "circle"
    dumped = dump_algebroid(doc.algebroid)
    assert dumped['relations'] == ['x^2 + y^2 - 1']
    assert dumped['anchor'] == [['-y', 'x']]
    assert verify_algebroid(parse_algebroid(dumped)).ok


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding='utf-8')
    with pytest.raises(ParseError):
        load_document(path)
    with pytest.raises(ParseError):
        load_document(tmp_path / "missing.json")


def test_connection_entries(write_document):
    data = dict(SO3, connections={'nabla': {'Gamma^3_{1,2}': '1/2'}})
    doc = load_document(write_document(data))
    connection = doc.connection('nabla')
    assert connection.gamma[0, 1, 2] == doc.algebroid.ring.constant(1) / 2
