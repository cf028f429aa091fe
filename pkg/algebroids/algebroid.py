"""Lie algebroids given by structure functions in a local frame."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .errors import PreconditionFailed, ShapeMismatch
from .scalars import CoordinateRing, Scalar

logger = logging.getLogger(__name__)


class Algebroid:
    """Anchor ``anchor[a, i] = rho^i_a`` and structure ``structure[a, b, c] = C^c_{ab}``."""

    def __init__(self, ring: CoordinateRing, rank: int, anchor: np.ndarray, structure: np.ndarray,
                 name: str = "algebroid"):
        anchor = np.asarray(anchor, dtype=object)
        structure = np.asarray(structure, dtype=object)
        n = len(ring.coordinates)
        if anchor.shape != (rank, n):
            raise ShapeMismatch(f"anchor has shape {anchor.shape}, expected {(rank, n)}", detail=anchor.shape)
        if structure.shape != (rank, rank, rank):
            raise ShapeMismatch(f"structure has shape {structure.shape}, expected {(rank,) * 3}",
                                detail=structure.shape)
        self.ring = ring
        self.rank = rank
        self.anchor = anchor
        self.structure = structure
        self.name = name
        self.verified = False
        # memoized frame data, filled by the calculus layer
        self.cache: Dict[object, object] = {}

    @property
    def m(self) -> int:
        return self.rank

    @property
    def n(self) -> int:
        return len(self.ring.coordinates)

    def rho(self, a: int, f: Scalar) -> Scalar:
        """rho(e_a) applied to a function."""
        total = self.ring.zero
        for i in range(self.n):
            coeff = self.anchor[a, i]
            if coeff:
                derivative = f.derivative(i)
                if derivative:
                    total = total + coeff * derivative
        return total

    def is_constant_coefficient(self) -> bool:
        return all(self.structure[idx].is_constant() for idx in np.ndindex(*self.structure.shape)) and \
            all(self.anchor[idx].is_constant() for idx in np.ndindex(*self.anchor.shape))

    def __repr__(self):
        return f"Algebroid({self.name!r}, rank={self.rank}, coordinates={list(self.ring.coordinates)})"


@dataclass
class IdentityFailure:
    identity: str
    indices: Tuple[int, ...]  # 1-based, as displayed
    residual: Scalar

    def to_text(self) -> str:
        return f"{self.identity}{self.indices}: residual {self.residual.to_text()}"


@dataclass
class VerificationReport:
    algebroid: str
    failures: List[IdentityFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_identities(self) -> List[str]:
        return sorted({f.identity for f in self.failures})

    def to_dict(self) -> dict:
        return {
            'algebroid': self.algebroid,
            'ok': self.ok,
            'failures': [
                {'identity': f.identity, 'indices': list(f.indices), 'residual': f.residual.to_text()}
                for f in self.failures
            ],
        }


def verify_algebroid(A: Algebroid) -> VerificationReport:
    """Check skewness, anchor compatibility, Jacobi and tangency of the anchor to the relations."""
    report = VerificationReport(A.name)
    m, n = A.rank, A.n
    C = A.structure

    for a in range(m):
        for b in range(a, m):
            for c in range(m):
                residual = C[a, b, c] + C[b, a, c]
                if residual:
                    report.failures.append(IdentityFailure("antisymmetry", (a + 1, b + 1, c + 1), residual))

    for a in range(m):
        for b in range(a + 1, m):
            for i in range(n):
                lhs = A.rho(a, A.anchor[b, i]) - A.rho(b, A.anchor[a, i])
                rhs = A.ring.zero
                for c in range(m):
                    if C[a, b, c]:
                        rhs = rhs + A.anchor[c, i] * C[a, b, c]
                residual = lhs - rhs
                if residual:
                    report.failures.append(IdentityFailure("anchor", (a + 1, b + 1, i + 1), residual))

    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                for d in range(m):
                    residual = A.ring.zero
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        residual = residual + A.rho(x, C[y, z, d])
                        for e in range(m):
                            if C[y, z, e] and C[x, e, d]:
                                residual = residual + C[y, z, e] * C[x, e, d]
                    if residual:
                        report.failures.append(
                            IdentityFailure("jacobi", (a + 1, b + 1, c + 1, d + 1), residual))

    for r, relation in enumerate(A.ring.relations):
        for a in range(m):
            residual = A.ring.zero
            for i in range(n):
                if A.anchor[a, i]:
                    residual = residual + A.anchor[a, i] * A.ring.relation_derivative(relation, i)
            if residual:
                report.failures.append(IdentityFailure("tangency", (a + 1, r + 1), residual))

    A.verified = report.ok
    if report.ok:
        logger.info(f"{A.name}: structure equations hold")
    else:
        logger.info(f"{A.name}: {len(report.failures)} failed identities {report.failed_identities()}")
    return report


def ensure_verified(A: Algebroid) -> Algebroid:
    if not A.verified:
        report = verify_algebroid(A)
        if not report.ok:
            raise PreconditionFailed(f"{A.name} is not a Lie algebroid: {report.failed_identities()}",
                                     detail=report)
    return A
