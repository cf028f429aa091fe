"""Seeded random functions and tensors for the property suites."""
import random
from itertools import combinations
from typing import Optional

from sympy.polys.domains import QQ, QQ_I

from . import config
from .algebroid import Algebroid
from .prolongation import Connection
from .scalars import CoordinateRing, Scalar
from .tensors import Form, Multivector

COEFFICIENTS = (
    QQ_I(1, 0), QQ_I(-1, 0),
    QQ_I(QQ(1, 2), 0), QQ_I(QQ(-1, 2), 0),
    QQ_I(0, 1), QQ_I(0, -1),
)
REAL_COEFFICIENTS = COEFFICIENTS[:4]


def make_rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(config.SEED if seed is None else seed)


def random_scalar(ring: CoordinateRing, rng: random.Random, degree: Optional[int] = None,
                  terms: int = 3, real: bool = False) -> Scalar:
    degree = config.RANDOM_DEGREE if degree is None else degree
    pool = REAL_COEFFICIENTS if real else COEFFICIENTS
    n = len(ring.coordinates)
    raw = {}
    for _ in range(rng.randint(1, terms)):
        mono = [0] * n
        for _ in range(rng.randint(0, degree) if n else 0):
            mono[rng.randrange(n)] += 1
        mono = tuple(mono)
        raw[mono] = raw.get(mono, QQ_I.zero) + rng.choice(pool)
    return Scalar(ring, raw)


def _random_tensor(cls, A: Algebroid, degree: int, rng: random.Random, density: float,
                   coefficient_degree: Optional[int], real: bool):
    coeffs = {}
    for index in combinations(range(A.rank), degree):
        if rng.random() < density:
            coeffs[index] = random_scalar(A.ring, rng, coefficient_degree, real=real)
    return cls(A, degree, coeffs)


def random_form(A: Algebroid, degree: int, rng: random.Random, density: float = 0.6,
                coefficient_degree: Optional[int] = None, real: bool = False) -> Form:
    return _random_tensor(Form, A, degree, rng, density, coefficient_degree, real)


def random_multivector(A: Algebroid, degree: int, rng: random.Random, density: float = 0.6,
                       coefficient_degree: Optional[int] = None, real: bool = False) -> Multivector:
    return _random_tensor(Multivector, A, degree, rng, density, coefficient_degree, real)


def random_section(A: Algebroid, rng: random.Random, **kwargs) -> Multivector:
    return random_multivector(A, 1, rng, **kwargs)


def random_connection(A: Algebroid, rng: random.Random, density: float = 0.4, real: bool = True) -> Connection:
    """Connection with constant coefficients drawn from the coefficient pool."""
    pool = REAL_COEFFICIENTS if real else COEFFICIENTS
    m = A.rank
    gamma = [[[A.ring.constant(rng.choice(pool)) if rng.random() < density else A.ring.zero
               for _ in range(m)] for _ in range(m)] for _ in range(m)]
    return Connection(A, gamma, name="nabla_rand")
