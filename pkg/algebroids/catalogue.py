"""Named algebroids and almost complex Poisson instances used by the CLI and the property suites."""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import matrices
from .algebroid import Algebroid, ensure_verified
from .complexification import Endo, holomorphic_frame, make_ac_structure
from .errors import UnknownName
from .morphisms import Morphism, identity_morphism
from .scalars import CoordinateRing
from .sphere import sphere
from .tensors import Multivector, wedge

logger = logging.getLogger(__name__)

POINT = CoordinateRing([])

# pairs (e1, e2) and (e3, e4)
PAIRED_J = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
# J e_a = e_(a+2)
BLOCK_J = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]


def structure_from_brackets(ring: CoordinateRing, rank: int,
                            brackets: Mapping[Tuple[int, int], Mapping[int, object]]) -> np.ndarray:
    """C[a, b, c] from {(a, b): {c: coefficient}} with 1-based a < b."""
    structure = np.empty((rank, rank, rank), dtype=object)
    for index in np.ndindex(rank, rank, rank):
        structure[index] = ring.zero
    for (a, b), image in brackets.items():
        for c, value in image.items():
            coefficient = ring.coerce(value)
            structure[a - 1, b - 1, c - 1] = coefficient
            structure[b - 1, a - 1, c - 1] = -coefficient
    return structure


def point_algebra(rank: int, brackets: Mapping[Tuple[int, int], Mapping[int, object]], name: str) -> Algebroid:
    A = Algebroid(POINT, rank, matrices.zeros(POINT, rank, 0), structure_from_brackets(POINT, rank, brackets), name)
    return ensure_verified(A)


def abelian(m: int) -> Algebroid:
    return point_algebra(m, {}, f"abelian{m}")


def heisenberg() -> Algebroid:
    """[e1, e2] = e3."""
    return point_algebra(3, {(1, 2): {3: 1}}, "h3")


def heisenberg_line() -> Algebroid:
    """h3 x R, with e4 central."""
    return point_algebra(4, {(1, 2): {3: 1}}, "h3xR")


def so3() -> Algebroid:
    return point_algebra(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}}, "so3")


def sl2() -> Algebroid:
    """Basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    return point_algebra(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}, "sl2")


def tangent(n: int) -> Algebroid:
    """T R^n with the coordinate frame."""
    ring = CoordinateRing([f"x{k}" for k in range(1, n + 1)])
    A = Algebroid(ring, n, matrices.identity(ring, n), structure_from_brackets(ring, n, {}), f"TR{n}")
    return ensure_verified(A)


def sphere_algebroid(n: int) -> Algebroid:
    return sphere(n).algebroid


CATALOGUE: Dict[str, Callable[[], Algebroid]] = {
    'abelian2': lambda: abelian(2),
    'abelian4': lambda: abelian(4),
    'h3': heisenberg,
    'h3xR': heisenberg_line,
    'so3': so3,
    'sl2': sl2,
    'tangent2': lambda: tangent(2),
    'tangent4': lambda: tangent(4),
    'sphere1': lambda: sphere_algebroid(1),
    'sphere2': lambda: sphere_algebroid(2),
}


def build(name: str) -> Algebroid:
    if name not in CATALOGUE:
        raise UnknownName(f"no catalogue algebroid named '{name}'", detail=name)
    return CATALOGUE[name]()


# --- almost complex Poisson instances ---

@dataclass
class ACPInstance:
    name: str
    algebroid: Algebroid
    J: Endo
    pi20: Multivector


def holomorphic_wedge(J: Endo, indices: Sequence[int]) -> Multivector:
    """z_(i1) ^ z_(i2) ^ ... with z_a = e_a - iJe_a, 1-based indices."""
    frame = holomorphic_frame(J)
    value = Multivector.scalar(J.parent, 1)
    for a in indices:
        value = wedge(value, frame[a - 1])
    return value


def acp_abelian() -> ACPInstance:
    A = abelian(4)
    J = make_ac_structure(A, BLOCK_J)
    return ACPInstance("abelian4", A, J, holomorphic_wedge(J, (1, 2)))


def acp_heisenberg_line() -> ACPInstance:
    """Integrable paired J on h3 x R with pi20 = z1 ^ z3."""
    A = heisenberg_line()
    J = make_ac_structure(A, PAIRED_J)
    return ACPInstance("h3xR", A, J, holomorphic_wedge(J, (1, 3)))


def acp_tangent() -> ACPInstance:
    A = tangent(4)
    J = make_ac_structure(A, PAIRED_J)
    return ACPInstance("TR4", A, J, holomorphic_wedge(J, (1, 3)))


def nonintegrable_heisenberg_line() -> Tuple[Algebroid, Endo]:
    """h3 x R with J e1 = e3, J e2 = e4; [z1, z2] = e3 leaves E^{1,0}."""
    A = heisenberg_line()
    return A, make_ac_structure(A, BLOCK_J, name="Jblock")


ACP_INSTANCES: Dict[str, Callable[[], ACPInstance]] = {
    'abelian4': acp_abelian,
    'h3xR': acp_heisenberg_line,
    'TR4': acp_tangent,
}


def acp_instance(name: str) -> ACPInstance:
    if name not in ACP_INSTANCES:
        raise UnknownName(f"no almost complex Poisson instance named '{name}'", detail=name)
    return ACP_INSTANCES[name]()


def abelian_acp_automorphism(instance: ACPInstance) -> Morphism:
    """Complex-linear map with complex determinant 1 on the abelian rank-4 instance."""
    A = instance.algebroid
    matrix = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    return Morphism(A, A, matrix, name="shear")


def so3_rotation() -> Morphism:
    """Quarter turn about e3, an automorphism of so(3)."""
    A = so3()
    return Morphism(A, A, [[0, -1, 0], [1, 0, 0], [0, 0, 1]], name="rot3")


# --- morphisms for the graph criterion ---

@dataclass
class GraphTriple:
    phi: Morphism
    source: Tuple[Endo, Multivector]
    target: Tuple[Endo, Multivector]
    expected: Optional[bool] = None


def _self_triple(instance: ACPInstance, phi: Morphism, expected: bool) -> GraphTriple:
    data = (instance.J, instance.pi20)
    return GraphTriple(phi, data, data, expected)


def graph_triples() -> Dict[str, GraphTriple]:
    """Endomorphisms of ACP instances, with whether each is an ACP morphism."""
    flat = acp_abelian()
    heis = acp_heisenberg_line()
    A = flat.algebroid
    doubled: List[List[int]] = [[2 if a == b else 0 for b in range(4)] for a in range(4)]
    stretched = [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return {
        'abelian4-identity': _self_triple(flat, identity_morphism(A), True),
        'abelian4-shear': _self_triple(flat, abelian_acp_automorphism(flat), True),
        'abelian4-doubled': _self_triple(flat, Morphism(A, A, doubled, name="doubled"), False),
        'abelian4-stretched': _self_triple(flat, Morphism(A, A, stretched, name="stretched"), False),
        'h3xR-identity': _self_triple(heis, identity_morphism(heis.algebroid), True),
    }
