"""The sphere family E = S^(2n-1) x R^(2n) with J0 as complex structure and as bisection."""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import config, matrices
from .algebroid import Algebroid, verify_algebroid
from .calculus import bracket_sections, lie_derivative
from .compatibility import (
    CompatibilityReport,
    composite_bisection,
    compatibility_conditions,
    concomitant,
    deformed_bracket,
    sign_flip_residuals,
)
from .complexification import Endo, make_ac_structure, nijenhuis
from .errors import InternalInconsistency, PreconditionFailed
from .poisson import GeneralBisection, general_bracket, is_poisson, rank_survey
from .scalars import CoordinateRing
from .tensors import Form, Multivector, SkewTensor, coframe, frame

logger = logging.getLogger(__name__)

GOLDEN_FILE = 'sphere_golden.json'

N2_MATRIX = (
    ("0", "y*z - t*x", "x^2 + z^2 - 1"),
    ("t*x - y*z", "0", "t*z + x*y"),
    ("-x^2 - z^2 + 1", "-t*z - x*y", "0"),
)


def sphere_ring(coordinates) -> CoordinateRing:
    relation = " + ".join(f"{c}^2" for c in coordinates) + " - 1"
    return CoordinateRing(coordinates, [relation])


def j0(ring: CoordinateRing, n: int) -> np.ndarray:
    """[[0, -I], [I, 0]]."""
    identity = matrices.identity(ring, n)
    zero = matrices.zeros(ring, n, n)
    return matrices.block([[zero, matrices.scale(identity, -1)], [identity, zero]])


def projection(ring: CoordinateRing) -> np.ndarray:
    """I - x x^T on the ambient coordinates."""
    x = [ring.variable(c) for c in ring.coordinates]
    size = len(x)
    R = matrices.identity(ring, size)
    for a in range(size):
        for b in range(size):
            R[a, b] = R[a, b] - x[a] * x[b]
    return R


@dataclass
class SphereInstance:
    n: int
    algebroid: Algebroid
    J: Endo
    Jtilde: GeneralBisection

    @property
    def coordinates(self) -> Tuple[str, ...]:
        return self.algebroid.ring.coordinates


@lru_cache(maxsize=None)
def sphere(n: int) -> SphereInstance:
    """Orthogonal-projection anchor with [e_a, e_b] = -x^b e_a + x^a e_b."""
    if n < 1:
        raise PreconditionFailed(f"the sphere family starts at n = 1, got {n}")
    ring = sphere_ring([f"x{k}" for k in range(1, 2 * n + 1)])
    m = 2 * n
    x = [ring.variable(c) for c in ring.coordinates]
    structure = np.empty((m, m, m), dtype=object)
    for a, b, c in np.ndindex(m, m, m):
        value = ring.zero
        if c == a:
            value = value - x[b]
        if c == b:
            value = value + x[a]
        structure[a, b, c] = value
    A = Algebroid(ring, m, projection(ring), structure, name=f"S{2 * n - 1}")
    report = verify_algebroid(A)
    if not report.ok:
        raise InternalInconsistency(f"{A.name} fails {report.failed_identities()}", detail=report)
    J0 = j0(ring, n)
    # J^* has matrix J0 on coframes, so J itself is stored as J0^T
    J = make_ac_structure(A, matrices.transpose(J0), name="J")
    Jtilde = GeneralBisection(A, J0, name="Jt")
    logger.info(f"sphere n={n}: rank {m} over {list(ring.coordinates)}")
    return SphereInstance(n, A, J, Jtilde)


def reproduce_n2_matrix() -> np.ndarray:
    """A J0 A^T for A the first three rows of I - v v^T, v = (x, y, z, t)."""
    ring = sphere_ring(['x', 'y', 'z', 't'])
    R = projection(ring)
    A = R[:3, :]
    return matrices.matmul(ring, matrices.matmul(ring, A, j0(ring, 2)), matrices.transpose(A))


def n2_matrix_matches() -> bool:
    result = reproduce_n2_matrix()
    ring = result[0, 0].ring
    return matrices.equal(result, matrices.coerce_matrix(ring, [list(row) for row in N2_MATRIX]))


# --- golden formulas ---

@lru_cache(maxsize=1)
def golden_families() -> Tuple[dict, ...]:
    path = config.DATA_DIR / GOLDEN_FILE
    with open(path, encoding='utf-8') as handle:
        return tuple(json.load(handle)['families'])


def _index(expression: str, env: Dict[str, int]) -> int:
    return sum(env[token.strip()] for token in expression.split('+'))


def _range(text: str, n: int) -> range:
    low, high = text.split('..')
    top = n * int(high[:-1] or 1) if high.endswith('n') else int(high)
    return range(int(low), top + 1)


def _assignments(family: dict, n: int) -> List[Dict[str, int]]:
    names = sorted(family['ranges'])
    envs = [{'n': n}]
    for name in names:
        envs = [dict(env, **{name: value}) for env in envs for value in _range(family['ranges'][name], n)]
    where = family.get('where')
    if where:
        left, right = where.split('<')
        envs = [env for env in envs if _index(left, env) < _index(right, env)]
    return envs


def _expected(instance: SphereInstance, family: dict, env: Dict[str, int]) -> SkewTensor:
    A = instance.algebroid
    kind = Multivector if family['kind'] == 'bracket' else Form
    result = kind(A, 1)
    for term in family['terms']:
        delta = term.get('delta')
        if delta and _index(delta[0], env) != _index(delta[1], env):
            continue
        summed = [None] if 'sum' not in term else list(range(1, instance.n + 1))
        for value in summed:
            local = env if value is None else dict(env, **{term['sum']: value})
            coeff = A.ring.variable(f"x{_index(term['coeff'], local)}") * term['factor']
            basis = _index(term['basis'], local) - 1
            result = result + kind(A, 1, {(basis,): coeff})
    return result


def _computed(instance: SphereInstance, family: dict, env: Dict[str, int]) -> SkewTensor:
    A, J, Jt = instance.algebroid, instance.J, instance.Jtilde
    left = _index(family['left'], env) - 1
    right = _index(family['right'], env) - 1
    kind = family['kind']
    if kind == 'bracket':
        return bracket_sections(A, frame(A, left), frame(A, right))
    if kind == 'lie':
        return lie_derivative(A, frame(A, left), coframe(A, right))
    if kind == 'form_bracket':
        return general_bracket(A, Jt, coframe(A, left), coframe(A, right))
    if kind == 'deformed':
        return deformed_bracket(A, Jt, J, coframe(A, left), coframe(A, right))
    if kind == 'composite':
        return general_bracket(A, composite_bisection(Jt, J), coframe(A, left), coframe(A, right))
    raise ValueError(f"unknown golden family kind '{kind}'")


@dataclass
class GoldenCheck:
    family: str
    label: str
    ok: bool
    computed: str
    expected: str

    def to_dict(self) -> dict:
        return {'family': self.family, 'label': self.label, 'ok': self.ok,
                'computed': self.computed, 'expected': self.expected}


def check_golden(n: int, names: Optional[List[str]] = None) -> List[GoldenCheck]:
    """Every stored family expanded for this n and compared by normal form."""
    instance = sphere(n)
    checks = []
    for family in golden_families():
        if names is not None and family['name'] not in names:
            continue
        for env in _assignments(family, n):
            computed = _computed(instance, family, env)
            expected = _expected(instance, family, env)
            label = f"{family['left']},{family['right']} @ " + ",".join(
                f"{k}={v}" for k, v in sorted(env.items()) if k != 'n')
            check = GoldenCheck(family['name'], label, computed == expected, computed.to_text(), expected.to_text())
            if not check.ok:
                logger.warning(f"sphere n={n}: {family['name']} {label} gives {check.computed}, "
                               f"expected {check.expected}")
            checks.append(check)
    logger.info(f"sphere n={n}: {sum(c.ok for c in checks)}/{len(checks)} golden formulas reproduced")
    return checks


@dataclass
class SphereReport:
    n: int
    verified: bool
    nijenhuis_zero: bool
    poisson: bool
    golden: List[GoldenCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verified and self.nijenhuis_zero and all(check.ok for check in self.golden)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'ok': self.ok,
            'verified': self.verified,
            'nijenhuis_zero': self.nijenhuis_zero,
            'poisson': self.poisson,
            'golden': [check.to_dict() for check in self.golden],
        }


def sphere_report(n: int, golden: bool = True) -> SphereReport:
    instance = sphere(n)
    A = instance.algebroid
    report = SphereReport(
        n=n,
        verified=verify_algebroid(A).ok,
        nijenhuis_zero=nijenhuis(A, instance.J).is_zero(),
        poisson=is_poisson(A, instance.Jtilde).ok,
    )
    if golden:
        report.golden = check_golden(n)
    return report


# --- compatibility of J and Jtilde ---

def mixed_pairs(n: int) -> List[Tuple[int, int]]:
    """(alpha, beta + n) coframe pairs, 0-based."""
    return [(a, b + n) for a in range(n) for b in range(n)]


def delta_defect(instance: SphereInstance) -> Form:
    """2 sum_g (x^g e^(g+n) - x^(g+n) e^g)."""
    A, n = instance.algebroid, instance.n
    coeffs = {}
    for g in range(n):
        coeffs[(g + n,)] = A.ring.variable(f"x{g + 1}") * 2
        coeffs[(g,)] = A.ring.variable(f"x{g + n + 1}") * -2
    return Form(A, 1, coeffs)


@dataclass
class SphereCompatibility:
    n: int
    poisson: Dict[int, bool]
    nijenhuis_zero: bool
    conditions: Dict[int, CompatibilityReport]
    flip_vanishes: Dict[int, bool]
    defect: Form
    defect_matches: bool
    golden: List[GoldenCheck] = field(default_factory=list)

    @property
    def compatible(self) -> Dict[int, bool]:
        return {sign: self.poisson[sign] and self.nijenhuis_zero and self.conditions[sign].compatible
                for sign in self.conditions}

    def to_dict(self) -> dict:
        label = {1: '+Jt', -1: '-Jt'}
        return {
            'n': self.n,
            'nijenhuis_zero': self.nijenhuis_zero,
            'poisson': {label[s]: v for s, v in sorted(self.poisson.items(), reverse=True)},
            'compatible': {label[s]: v for s, v in sorted(self.compatible.items(), reverse=True)},
            'conditions': {label[s]: r.to_dict() for s, r in sorted(self.conditions.items(), reverse=True)},
            'flip_residual_vanishes': {label[s]: v for s, v in sorted(self.flip_vanishes.items(), reverse=True)},
            'defect_1_1+n': self.defect.to_text(),
            'defect_matches': self.defect_matches,
            'golden': [check.to_dict() for check in self.golden],
        }


def compat_report(n: int) -> SphereCompatibility:
    """Compatibility of J with +Jt and -Jt, with the mixed-pair sign-flip comparison."""
    instance = sphere(n)
    A, J, Jt = instance.algebroid, instance.J, instance.Jtilde
    poisson, conditions, flips = {}, {}, {}
    for sign in (1, -1):
        F = Jt.scaled(sign, name="Jt" if sign > 0 else "-Jt")
        poisson[sign] = is_poisson(A, F).ok
        conditions[sign] = compatibility_conditions(A, F, J)
        residuals = sign_flip_residuals(A, Jt, J, sign, mixed_pairs(n))
        flips[sign] = all(not value for value in residuals.values())
    defect = concomitant(A, Jt, J)[(0, n)]
    expected = delta_defect(instance)
    report = SphereCompatibility(
        n=n,
        poisson=poisson,
        nijenhuis_zero=nijenhuis(A, J).is_zero(),
        conditions=conditions,
        flip_vanishes=flips,
        defect=defect,
        defect_matches=defect == expected,
        golden=check_golden(n, names=['form_bracket_first_first', 'form_bracket_first_second',
                                      'form_bracket_second_first', 'form_bracket_second_second',
                                      'deformed_bracket', 'composite_bracket']),
    )
    logger.info(f"sphere n={n}: compatible {report.compatible}, sign-flip residual vanishes {flips}")
    return report


# --- characteristic foliation ---

@dataclass
class FoliationSurvey:
    n: int
    distribution: Counter
    sharp_image: Counter
    status: str = "sampled"

    @property
    def expected(self) -> int:
        return 2 * self.n - 2

    @property
    def constant(self) -> bool:
        return set(self.distribution) == {self.expected}

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'expected_rank': self.expected,
            'distribution': {str(k): v for k, v in sorted(self.distribution.items())},
            'sharp_image': {str(k): v for k, v in sorted(self.sharp_image.items())},
            'constant': self.constant,
            'status': self.status,
        }


def foliation_rank_survey(n: int, count: Optional[int] = None, seed: Optional[int] = None) -> FoliationSurvey:
    instance = sphere(n)
    if count is not None and count < 1:
        raise PreconditionFailed(f"need at least one sample point, got {count}")
    survey = rank_survey(instance.algebroid, instance.Jtilde, count, seed)
    return FoliationSurvey(n, survey['distribution'], survey['sharp_image'])
