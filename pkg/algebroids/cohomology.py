"""Complex Lichnerowicz-Poisson cohomology of constant-coefficient ACP data."""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Tuple

import sympy
from sympy.polys.domains import QQ_I

from . import matrices
from .acp import is_acp, sigma_split
from .algebroid import Algebroid, ensure_verified
from .complexification import Endo, holomorphic_frame, is_integrable, make_ac_structure
from .errors import InternalInconsistency, NotACP, NotConstantCoefficient, NotIntegrable
from .scalars import gaussian_from_sympy
from .tensors import Multivector, basis_indices, wedge

logger = logging.getLogger(__name__)


@dataclass
class CohomologyResult:
    bidegree: Tuple[int, int]
    dimension: int
    basis: List[Multivector] = field(default_factory=list)
    cochain_dimension: int = 0
    kernel_dimension: int = 0
    image_dimension: int = 0

    def to_dict(self) -> dict:
        return {
            'bidegree': list(self.bidegree),
            'dimension': self.dimension,
            'cochains': self.cochain_dimension,
            'kernel': self.kernel_dimension,
            'image': self.image_dimension,
            'basis': [S.to_text() for S in self.basis],
        }


def _check_constant(A: Algebroid, J: Endo, pi20: Multivector):
    if not A.is_constant_coefficient():
        raise NotConstantCoefficient(f"{A.name} has non-constant structure functions")
    if A.n and not matrices.is_zero(A.anchor):
        raise NotConstantCoefficient(f"{A.name} has a nonzero anchor; only point-like data is supported")
    if not J.is_constant():
        raise NotConstantCoefficient(f"{J.name} has non-constant entries")
    if any(not value.is_constant() for value in pi20.coeffs.values()):
        raise NotConstantCoefficient("the bivector has non-constant coefficients")


class PureBasis:
    """Basis z_I ^ conj(z)_K of the (p,q)-multivectors over the constants."""

    def __init__(self, J: Endo, p: int, q: int):
        A = J.parent
        self.parent = A
        self.p, self.q = p, q
        holomorphic = holomorphic_frame(J)
        columns = matrices.to_sympy(matrices.block([[_column(s) for s in holomorphic]]))
        _, pivots = columns.rref()
        frame = [holomorphic[c] for c in pivots]
        conjugates = [z.conjugate() for z in frame]
        self.elements: List[Multivector] = []
        for I in combinations(range(len(frame)), p):
            for K in combinations(range(len(frame)), q):
                value = Multivector.scalar(A, 1)
                for a in I:
                    value = wedge(value, frame[a])
                for b in K:
                    value = wedge(value, conjugates[b])
                self.elements.append(value)
        self.rows = list(basis_indices(A.rank, p + q))
        self.matrix = sympy.Matrix(len(self.rows), len(self.elements),
                                   lambda r, c: self._entry(self.elements[c], self.rows[r]))

    def __len__(self):
        return len(self.elements)

    @staticmethod
    def _entry(S: Multivector, index) -> sympy.Expr:
        value = S.coeffs.get(index)
        return QQ_I.to_sympy(value.constant_value()) if value is not None else sympy.Integer(0)

    def coordinates(self, S: Multivector) -> sympy.Matrix:
        if not self.elements:
            return sympy.zeros(0, 1)
        vector = sympy.Matrix(len(self.rows), 1, lambda r, _: self._entry(S, self.rows[r]))
        try:
            solution, parameters = self.matrix.gauss_jordan_solve(vector)
        except ValueError as e:
            raise InternalInconsistency(
                f"{S.to_text()} is not a ({self.p},{self.q})-multivector") from e
        return solution.subs({t: 0 for t in parameters})

    def element(self, vector: sympy.Matrix) -> Multivector:
        result = Multivector(self.parent, self.p + self.q)
        for c, S in enumerate(self.elements):
            entry = sympy.expand(vector[c])
            if entry != 0:
                result = result + S * gaussian_from_sympy(entry)
        return result


def _column(s: Multivector):
    A = s.parent
    return matrices.scalar_matrix(A.ring, [[s.component(a)] for a in range(A.rank)])


def sigma11_matrix(A: Algebroid, J: Endo, pi20: Multivector, source: PureBasis, target: PureBasis) -> sympy.Matrix:
    """sigma11 from the (p,q)- to the (p+1,q)-multivectors in the pure bases."""
    columns = []
    for S in source.elements:
        columns.append(target.coordinates(sigma_split(A, J, pi20, S).sigma11))
    if not columns:
        return sympy.zeros(len(target), 0)
    if not len(target):
        return sympy.zeros(0, len(columns))
    return sympy.Matrix.hstack(*columns)


def clp_cohomology(A: Algebroid, J: Endo, pi20: Multivector, p: int, q: int) -> CohomologyResult:
    ensure_verified(A)
    make_ac_structure(A, J)
    _check_constant(A, J, pi20)
    if not is_integrable(A, J):
        raise NotIntegrable(f"{J.name} is not integrable on {A.name}")
    if not is_acp(A, J, pi20).ok:
        raise NotACP(f"the bivector is not almost complex Poisson for {J.name}")

    half = A.rank // 2
    if not (0 <= p <= half and 0 <= q <= half):
        return CohomologyResult((p, q), 0)
    here = PureBasis(J, p, q)
    outgoing = sigma11_matrix(A, J, pi20, here, PureBasis(J, p + 1, q)) if p < half else sympy.zeros(0, len(here))
    if p > 0:
        previous = PureBasis(J, p - 1, q)
        incoming = sigma11_matrix(A, J, pi20, previous, here)
        if outgoing.rows and incoming.cols and any(sympy.expand(entry) != 0 for entry in outgoing * incoming):
            raise InternalInconsistency(f"sigma11 o sigma11 does not vanish into bidegree ({p + 1},{q})")
    else:
        incoming = sympy.zeros(len(here), 0)

    rank_out = matrices.exact_rank(outgoing)
    rank_in = matrices.exact_rank(incoming)
    kernel = len(here) - rank_out
    dimension = kernel - rank_in

    representatives = []
    span = incoming
    kernel_vectors = outgoing.nullspace() if outgoing.rows else [sympy.eye(len(here))[:, c] for c in range(len(here))]
    for vector in kernel_vectors:
        if len(representatives) == dimension:
            break
        candidate = vector if span.cols == 0 else sympy.Matrix.hstack(span, vector)
        if matrices.exact_rank(candidate) > matrices.exact_rank(span):
            representatives.append(here.element(vector))
            span = candidate
    if len(representatives) != dimension:
        raise InternalInconsistency(f"found {len(representatives)} representatives for a {dimension}-dimensional group")
    logger.info(f"H^({p},{q}) of ({J.name}, pi20) on {A.name}: dimension {dimension}")
    return CohomologyResult((p, q), dimension, representatives, len(here), kernel, rank_in)
