import json

import pytest

from algebroids import catalogue
from algebroids.complexification import pure_basis
from algebroids.sampling import make_rng, random_scalar


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture(scope="session")
def so3():
    return catalogue.so3()


@pytest.fixture(scope="session")
def h3():
    return catalogue.heisenberg()


@pytest.fixture(scope="session")
def abelian4():
    return catalogue.abelian(4)


@pytest.fixture(scope="session")
def tangent2():
    return catalogue.tangent(2)


@pytest.fixture(scope="session")
def sphere1():
    return catalogue.sphere_algebroid(1)


@pytest.fixture
def write_document(tmp_path):
    """Write a definition document and return its path as a string."""
    def write(data, name="doc.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)
    return write


@pytest.fixture
def random_pure(rng):
    """Random (p,q)-tensor: the pure basis of J with random degree-1 coefficients."""
    def build(J, kind, p, q):
        A = J.parent
        value = kind(A, p + q)
        for basis in pure_basis(J, kind, p, q):
            value = value + basis * random_scalar(A.ring, rng, 1)
        return value
    return build
