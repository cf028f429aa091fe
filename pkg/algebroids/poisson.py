"""Bisections, Poisson structures and the dual (cotangent-type) algebroid."""
import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from . import config, matrices
from .algebroid import Algebroid, ensure_verified, verify_algebroid
from .calculus import chevalley_eilenberg, d_e, lie_derivative, schouten
from .errors import (
    Degenerate,
    InternalInconsistency,
    NotPoisson,
    ParentMismatch,
    ShapeMismatch,
    SkewViolation,
)
from .scalars import Scalar
from .tensors import Form, Multivector, pairing, wedge

logger = logging.getLogger(__name__)


class GeneralBisection:
    """Map F^#: E^* -> E with ``(F^# omega)^a = matrix[a, b] omega_b``; skewness is not assumed."""

    def __init__(self, parent: Algebroid, matrix, name: str = "F"):
        matrix = matrices.coerce_matrix(parent.ring, matrix)
        if matrix.shape != (parent.rank, parent.rank):
            raise ShapeMismatch(f"{name} has shape {matrix.shape}, expected {(parent.rank,) * 2}")
        self.parent = parent
        self.matrix = matrix
        self.name = name

    @classmethod
    def from_multivector(cls, pi: Multivector, name: str = "pi") -> 'GeneralBisection':
        """The skew bisection whose sharp map is omega -> iota_omega pi."""
        if pi.degree != 2 and pi.coeffs:
            raise ShapeMismatch(f"a bisection needs a degree-2 multivector, got degree {pi.degree}")
        A = pi.parent
        matrix = matrices.zeros(A.ring, A.rank, A.rank)
        for (a, b), value in pi.coeffs.items():
            matrix[b, a] = value
            matrix[a, b] = -value
        return cls(A, matrix, name)

    def is_skew(self) -> bool:
        m = self.parent.rank
        return all(self.matrix[a, b] == -self.matrix[b, a] for a in range(m) for b in range(a, m))

    def bivector(self) -> Multivector:
        """pi with coefficient of e_a ^ e_b (a < b) equal to matrix[b, a]; requires skewness."""
        if not self.is_skew():
            raise SkewViolation(f"{self.name} is not skew-symmetric")
        return bivector_of(self.matrix, self.parent)

    def sharp(self, omega: Form) -> Multivector:
        if omega.parent is not self.parent:
            raise ParentMismatch(f"{self.name} does not act on forms over {omega.parent.name}")
        if omega.degree != 1 and omega.coeffs:
            raise ShapeMismatch(f"sharp acts on 1-forms, got degree {omega.degree}")
        m = self.parent.rank
        out = {}
        for a in range(m):
            total = self.parent.ring.zero
            for (b,), value in omega.coeffs.items():
                if self.matrix[a, b]:
                    total = total + self.matrix[a, b] * value
            if total:
                out[(a,)] = total
        return Multivector(self.parent, 1, out)

    def __call__(self, omega: Form, theta: Form) -> Scalar:
        """F(omega, theta) = <theta, F^# omega>."""
        return pairing(theta, self.sharp(omega))

    def scaled(self, factor, name: Optional[str] = None) -> 'GeneralBisection':
        return GeneralBisection(self.parent, matrices.scale(self.matrix, factor), name or self.name)

    def conjugate(self) -> 'GeneralBisection':
        return GeneralBisection(self.parent, matrices.conjugate(self.matrix), f"conj({self.name})")

    def __repr__(self):
        return f"GeneralBisection({self.name} on {self.parent.name})"


def bivector_of(matrix: np.ndarray, parent: Algebroid) -> Multivector:
    m = parent.rank
    return Multivector(parent, 2, {(a, b): matrix[b, a] for a in range(m) for b in range(a + 1, m)})


def as_bisection(pi: Union[GeneralBisection, Multivector]) -> GeneralBisection:
    return pi if isinstance(pi, GeneralBisection) else GeneralBisection.from_multivector(pi)


def sharp(pi: Union[GeneralBisection, Multivector], omega: Form) -> Multivector:
    return as_bisection(pi).sharp(omega)


def hamiltonian_real(A: Algebroid, pi: Union[GeneralBisection, Multivector], f: Scalar) -> Multivector:
    """pi^#(d_E f)."""
    return sharp(pi, d_e(A, f))


# --- Poisson condition ---

@dataclass
class PoissonCheck:
    ok: bool
    residual: Multivector

    def to_dict(self) -> dict:
        return {'ok': self.ok, 'residual': self.residual.to_text()}


def _cyclic_residual(A: Algebroid, P: np.ndarray) -> Multivector:
    """Half of [pi,pi] from the coordinate expression, P[a, b] being the e_a ^ e_b coefficient."""
    m = A.rank
    C = A.structure
    out = {}

    def term(a: int, e: int, d: int) -> Scalar:
        total = A.ring.zero
        for b in range(m):
            if not P[a, b]:
                continue
            derivative = A.rho(b, P[e, d])
            if derivative:
                total = total + P[a, b] * derivative
            for c in range(m):
                if P[c, d] and C[b, c, e]:
                    total = total + P[a, b] * P[c, d] * C[b, c, e]
        return total

    for a in range(m):
        for e in range(a + 1, m):
            for d in range(e + 1, m):
                value = term(a, e, d) + term(e, d, a) + term(d, a, e)
                if value:
                    out[(a, e, d)] = value
    return Multivector(A, 3, out)


def is_poisson(A: Algebroid, pi: Union[GeneralBisection, Multivector]) -> PoissonCheck:
    """[pi, pi]_E = 0, computed by the Schouten bracket and by the coordinate formula."""
    ensure_verified(A)
    F = as_bisection(pi)
    if F.parent is not A:
        raise ParentMismatch(f"{F.name} is not a bisection of {A.name}")
    bivector = F.bivector()
    bracket = schouten(A, bivector, bivector)
    coefficients = matrices.transpose(F.matrix)
    cyclic = _cyclic_residual(A, coefficients)
    if bracket != cyclic * 2:
        raise InternalInconsistency(
            f"[{F.name},{F.name}] = {bracket.to_text()} but the coordinate formula gives "
            f"2*({cyclic.to_text()})")
    ok = bracket.is_zero()
    logger.info(f"{F.name} on {A.name}: Poisson = {ok}")
    return PoissonCheck(ok, bracket)


def poisson_bracket(A: Algebroid, pi: Union[GeneralBisection, Multivector], f: Scalar, g: Scalar) -> Scalar:
    """{f, g} = pi(d_E f, d_E g)."""
    F = as_bisection(pi)
    return F(d_e(A, f), d_e(A, g))


# --- brackets of forms ---

def general_bracket(A: Algebroid, F: GeneralBisection, omega: Form, theta: Form) -> Form:
    """[omega, theta]_F = L_{F^# omega} theta - L_{F^# theta} omega - d_E F(omega, theta)."""
    return (lie_derivative(A, F.sharp(omega), theta)
            - lie_derivative(A, F.sharp(theta), omega)
            - d_e(A, F(omega, theta)))


def form_bracket(A: Algebroid, pi: Union[GeneralBisection, Multivector], omega: Form, theta: Form) -> Form:
    return general_bracket(A, as_bisection(pi), omega, theta)


def _coframe(A: Algebroid, a: int) -> Form:
    return Form(A, 1, {(a,): A.ring.one})


def _dual_structure(A: Algebroid, F: GeneralBisection) -> np.ndarray:
    key = ('dual-structure', id(F))
    cached = A.cache.get(key)
    if cached is not None and cached[0] is F:
        return cached[1]
    m = A.rank
    structure = np.empty((m, m, m), dtype=object)
    for index in np.ndindex(m, m, m):
        structure[index] = A.ring.zero
    for a in range(m):
        for b in range(a + 1, m):
            value = general_bracket(A, F, _coframe(A, a), _coframe(A, b))
            for c in range(m):
                structure[a, b, c] = value.component(c)
                structure[b, a, c] = -value.component(c)
    A.cache[key] = (F, structure)
    return structure


def dual_anchor(A: Algebroid, F: GeneralBisection) -> np.ndarray:
    """rho o F^# on the coframe: row a is the vector field of e^a."""
    return matrices.matmul(A.ring, matrices.transpose(F.matrix), A.anchor)


def dual_algebroid(A: Algebroid, pi: Union[GeneralBisection, Multivector]) -> Algebroid:
    F = as_bisection(pi)
    if not is_poisson(A, F).ok:
        raise NotPoisson(f"{F.name} is not a Poisson bisection of {A.name}")
    dual = Algebroid(A.ring, A.rank, dual_anchor(A, F), _dual_structure(A, F), name=f"{A.name}*[{F.name}]")
    report = verify_algebroid(dual)
    if not report.ok:
        raise InternalInconsistency(f"dual of {A.name} fails {report.failed_identities()}", detail=report)
    return dual


def lichnerowicz_d(A: Algebroid, pi: Union[GeneralBisection, Multivector], S: Union[Multivector, Scalar],
                   check_poisson: bool = True) -> Multivector:
    """d_pi on multivectors: the differential of the dual algebroid written with rho o pi^# and [.,.]_pi."""
    F = as_bisection(pi)
    if check_poisson and not is_poisson(A, F).ok:
        raise NotPoisson(f"{F.name} is not a Poisson bisection of {A.name}")
    if not isinstance(S, Multivector):
        S = Multivector.scalar(A, S)
    anchor = dual_anchor(A, F)
    structure = _dual_structure(A, F)
    zero = A.ring.zero

    def rho(a: int, f: Scalar) -> Scalar:
        total = zero
        for i in range(A.n):
            if anchor[a, i]:
                derivative = f.derivative(i)
                if derivative:
                    total = total + anchor[a, i] * derivative
        return total

    def bracket(a: int, b: int) -> Dict[int, Scalar]:
        return {c: structure[a, b, c] for c in range(A.rank) if structure[a, b, c]}

    coeffs = chevalley_eilenberg(A.ring, A.rank, S.degree, lambda I: S.coeffs.get(I, zero), rho, bracket)
    return Multivector(A, S.degree + 1, coeffs)


# --- the Grassmann extension of pi^# ---

def ie_map(pi: Union[GeneralBisection, Multivector], X: Union[Form, Scalar]) -> Multivector:
    """I_E: Omega^p -> V^p, the exterior power of pi^#."""
    F = as_bisection(pi)
    A = F.parent
    if not isinstance(X, Form):
        X = Form.scalar(A, X)
    images = [F.sharp(_coframe(A, a)) for a in range(A.rank)]
    result = Multivector(A, X.degree)
    for index, coeff in X.coeffs.items():
        value = Multivector.scalar(A, coeff)
        for a in index:
            value = wedge(value, images[a])
        result = result + value
    return result


def ie_inverse(pi: Union[GeneralBisection, Multivector], S: Multivector) -> Form:
    """Inverse of I_E for a bisection whose determinant is a nonzero constant."""
    F = as_bisection(pi)
    A = F.parent
    inverse = matrices.unit_inverse(A.ring, F.matrix)
    if inverse is None:
        raise Degenerate(f"{F.name} has no inverse over the coordinate ring")
    columns = [Form(A, 1, {(b,): inverse[b, a] for b in range(A.rank)}) for a in range(A.rank)]
    result = Form(A, S.degree)
    for index, coeff in S.coeffs.items():
        value = Form.scalar(A, coeff)
        for a in index:
            value = wedge(value, columns[a])
        result = result + value
    return result


# --- characteristic distribution ---

def _base_bivector(A: Algebroid, F: GeneralBisection) -> np.ndarray:
    """rho(pi) on the base, as the n x n matrix anchor^T F anchor."""
    return matrices.matmul(A.ring, matrices.matmul(A.ring, matrices.transpose(A.anchor), F.matrix), A.anchor)


def distribution_rank(A: Algebroid, pi: Union[GeneralBisection, Multivector],
                      points: Sequence[Mapping[str, object]]) -> List[int]:
    """Rank of the characteristic distribution of rho(pi) at each point."""
    F = as_bisection(pi)
    base = _base_bivector(A, F)
    ranks = []
    for point in points:
        A.ring.check_point(point)
        ranks.append(matrices.exact_rank(matrices.evaluate(base, point)))
    return ranks


def sharp_image_rank(A: Algebroid, pi: Union[GeneralBisection, Multivector],
                     points: Sequence[Mapping[str, object]]) -> List[int]:
    """Rank of rho o pi^#: E^* -> TM at each point."""
    F = as_bisection(pi)
    matrix = matrices.matmul(A.ring, matrices.transpose(A.anchor), F.matrix)
    ranks = []
    for point in points:
        A.ring.check_point(point)
        ranks.append(matrices.exact_rank(matrices.evaluate(matrix, point)))
    return ranks


def rank_survey(A: Algebroid, pi: Union[GeneralBisection, Multivector], count: Optional[int] = None,
                seed: Optional[int] = None) -> Dict[str, Counter]:
    count = config.SAMPLE_POINTS if count is None else count
    rng = random.Random(config.SEED if seed is None else seed)
    points = A.ring.sample_points(count, rng) if A.ring.coordinates else [{}] * count
    return {
        'distribution': Counter(distribution_rank(A, pi, points)),
        'sharp_image': Counter(sharp_image_rank(A, pi, points)),
    }
