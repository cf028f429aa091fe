"""Base-preserving morphisms of Lie algebroids."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Tuple

import numpy as np

from . import matrices
from .algebroid import Algebroid, ensure_verified
from .calculus import bracket_sections, coframe_forms, d_e, frame_sections
from .errors import InternalInconsistency, NotAnchored, ParentMismatch, ShapeMismatch
from .tensors import Form, Multivector, evaluate_form, wedge

logger = logging.getLogger(__name__)


class Morphism:
    """Bundle map over the identity, ``matrix[b, a]`` = component b of the image of e_a."""

    def __init__(self, source: Algebroid, target: Algebroid, matrix, name: str = "phi"):
        if source.ring != target.ring:
            raise ParentMismatch(f"{source.name} and {target.name} live over different bases")
        matrix = np.asarray(matrix, dtype=object)
        if matrix.shape != (target.rank, source.rank):
            raise ShapeMismatch(f"morphism matrix has shape {matrix.shape}, "
                                f"expected {(target.rank, source.rank)}")
        self.source = source
        self.target = target
        self.matrix = matrices.coerce_matrix(source.ring, matrix)
        self.name = name
        self._check_anchored()

    def _check_anchored(self):
        pushed = matrices.matmul(self.source.ring, matrices.transpose(self.matrix), self.target.anchor)
        position = matrices.first_difference(pushed, self.source.anchor)
        if position is not None:
            a, i = position
            raise NotAnchored(
                f"{self.name}: anchor of {self.target.name} after {self.name} differs from the anchor of "
                f"{self.source.name} at (e{a + 1}, {self.source.ring.coordinates[i]})",
                detail=(a + 1, i + 1))

    def push(self, S: Multivector) -> Multivector:
        """phi applied slotwise to a multivector."""
        if S.parent is not self.source:
            raise ParentMismatch(f"{self.name} does not act on tensors over {S.parent.name}")
        result = Multivector(self.target, S.degree)
        for index, coeff in S.coeffs.items():
            image = Multivector.scalar(self.target, coeff)
            for a in index:
                image = wedge(image, self.column(a))
            result = result + image
        return result

    def column(self, a: int) -> Multivector:
        return Multivector(self.target, 1, {(b,): self.matrix[b, a] for b in range(self.target.rank)})

    def pullback(self, omega: Form) -> Form:
        """(phi^* omega)(s_1, ..., s_p) = omega(phi s_1, ..., phi s_p)."""
        if omega.parent is not self.target:
            raise ParentMismatch(f"{self.name} pulls back forms over {self.target.name} only")
        coeffs = {}
        if omega.degree == 0:
            return Form(self.source, 0, dict(omega.coeffs))
        columns = [self.column(a) for a in range(self.source.rank)]
        for index in combinations(range(self.source.rank), omega.degree):
            value = evaluate_form(omega, [columns[a] for a in index])
            if value:
                coeffs[index] = value
        return Form(self.source, omega.degree, coeffs)

    def __repr__(self):
        return f"Morphism({self.name}: {self.source.name} -> {self.target.name})"


def identity_morphism(A: Algebroid) -> Morphism:
    return Morphism(A, A, matrices.identity(A.ring, A.rank), name="id")


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """phi after psi."""
    if psi.target is not phi.source:
        raise ParentMismatch(f"cannot compose {phi.name} after {psi.name}")
    matrix = matrices.matmul(phi.source.ring, phi.matrix, psi.matrix)
    return Morphism(psi.source, phi.target, matrix, name=f"{phi.name}*{psi.name}")


def push(phi: Morphism, S: Multivector) -> Multivector:
    return phi.push(S)


def pullback(phi: Morphism, omega: Form) -> Form:
    return phi.pullback(omega)


@dataclass
class MorphismCheck:
    ok: bool
    witness: Optional[Tuple[int, int]] = None  # 1-based frame pair
    residual: Optional[Multivector] = None

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'witness': list(self.witness) if self.witness else None,
            'residual': self.residual.to_text() if self.residual is not None else None,
        }


def check_la_morphism(phi: Morphism) -> MorphismCheck:
    """Bracket condition on frame pairs, cross-checked with d_E phi^* = phi^* d_E' on coframes."""
    ensure_verified(phi.source)
    ensure_verified(phi.target)
    frame = frame_sections(phi.source)
    images = [phi.push(s) for s in frame]
    result = MorphismCheck(ok=True)
    for a in range(phi.source.rank):
        for b in range(a + 1, phi.source.rank):
            residual = phi.push(bracket_sections(phi.source, frame[a], frame[b])) - \
                bracket_sections(phi.target, images[a], images[b])
            if residual:
                result = MorphismCheck(ok=False, witness=(a + 1, b + 1), residual=residual)
                break
        if not result.ok:
            break

    commutes = True
    for theta in coframe_forms(phi.target):
        if d_e(phi.source, phi.pullback(theta)) != phi.pullback(d_e(phi.target, theta)):
            commutes = False
            break
    if commutes != result.ok:
        raise InternalInconsistency(
            f"{phi.name}: bracket condition gives {result.ok}, pullback of d_E gives {commutes}")
    logger.info(f"{phi.name}: Lie algebroid morphism = {result.ok}")
    return result
