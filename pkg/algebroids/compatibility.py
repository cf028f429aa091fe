"""Deformed brackets of forms, the concomitant C(F, G) and Poisson-Nijenhuis compatibility."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import matrices
from .algebroid import Algebroid, ensure_verified
from .complexification import Endo, nijenhuis_torsion
from .errors import ParentMismatch, PreconditionFailed
from .poisson import GeneralBisection, general_bracket, is_poisson
from .tensors import Form

logger = logging.getLogger(__name__)


def deformed_bracket(A: Algebroid, F: GeneralBisection, G: Endo, omega: Form, theta: Form) -> Form:
    """[G^* omega, theta]_F + [omega, G^* theta]_F - G^* [omega, theta]_F."""
    return (general_bracket(A, F, G.dual_apply(omega), theta)
            + general_bracket(A, F, omega, G.dual_apply(theta))
            - G.dual_apply(general_bracket(A, F, omega, theta)))


def composite_bisection(F: GeneralBisection, G: Endo) -> GeneralBisection:
    """FG with (FG)^# = F^# o G^*."""
    if F.parent is not G.parent:
        raise ParentMismatch(f"{F.name} and {G.name} live over different algebroids")
    matrix = matrices.matmul(F.parent.ring, F.matrix, matrices.transpose(G.matrix))
    return GeneralBisection(F.parent, matrix, name=f"{F.name}{G.name}")


def _coframe(A: Algebroid, a: int) -> Form:
    return Form(A, 1, {(a,): A.ring.one})


def concomitant(A: Algebroid, F: GeneralBisection, G: Endo) -> Dict[Tuple[int, int], Form]:
    """C(F,G)(e^a, e^b) = [e^a, e^b]_{FG} - [e^a, e^b]^{G^*}_F on all ordered coframe pairs (0-based)."""
    FG = composite_bisection(F, G)
    values = {}
    for a in range(A.rank):
        for b in range(A.rank):
            ea, eb = _coframe(A, a), _coframe(A, b)
            values[(a, b)] = general_bracket(A, FG, ea, eb) - deformed_bracket(A, F, G, ea, eb)
    return values


def sign_flip_residuals(A: Algebroid, F: GeneralBisection, G: Endo, sign: int,
                        pairs: Optional[List[Tuple[int, int]]] = None) -> Dict[Tuple[int, int], Form]:
    """[e^a, e^b]_{FG} - [e^a, e^b]^{G^*}_{sign F}, keeping FG built from the unflipped F."""
    FG = composite_bisection(F, G)
    flipped = F.scaled(sign, name=f"{'-' if sign < 0 else ''}{F.name}")
    if pairs is None:
        pairs = [(a, b) for a in range(A.rank) for b in range(A.rank)]
    out = {}
    for a, b in pairs:
        ea, eb = _coframe(A, a), _coframe(A, b)
        out[(a, b)] = general_bracket(A, FG, ea, eb) - deformed_bracket(A, flipped, G, ea, eb)
    return out


@dataclass
class CompatibilityReport:
    commutes: bool
    concomitant_vanishes: bool
    defects: Dict[Tuple[int, int], Form] = field(default_factory=dict)
    poisson: Optional[bool] = None
    nijenhuis_free: Optional[bool] = None

    @property
    def compatible(self) -> bool:
        return self.commutes and self.concomitant_vanishes

    def to_dict(self) -> dict:
        return {
            'compatible': self.compatible,
            'commutes': self.commutes,
            'concomitant_vanishes': self.concomitant_vanishes,
            'poisson': self.poisson,
            'nijenhuis_free': self.nijenhuis_free,
            'defects': {f"{a + 1},{b + 1}": v.to_text() for (a, b), v in sorted(self.defects.items()) if v},
        }


def compatibility_conditions(A: Algebroid, F: GeneralBisection, G: Endo) -> CompatibilityReport:
    """G o F^# = F^# o G^* and C(F,G) = 0, without the Poisson and Nijenhuis preconditions."""
    ensure_verified(A)
    ring = A.ring
    commutes = matrices.equal(matrices.matmul(ring, G.matrix, F.matrix),
                              matrices.matmul(ring, F.matrix, matrices.transpose(G.matrix)))
    defects = {k: v for k, v in concomitant(A, F, G).items() if v}
    return CompatibilityReport(commutes, not defects, defects)


def is_compatible(A: Algebroid, F: GeneralBisection, G: Endo) -> CompatibilityReport:
    """Poisson-Nijenhuis compatibility of a Poisson bisection and a Nijenhuis-free endomorphism."""
    if not is_poisson(A, F).ok:
        raise PreconditionFailed(f"{F.name} is not a Poisson bisection", detail="poisson")
    if not nijenhuis_torsion(A, G, check_tensorial=False).is_zero():
        raise PreconditionFailed(f"{G.name} has nonzero Nijenhuis torsion", detail="nijenhuis")
    report = compatibility_conditions(A, F, G)
    report.poisson = True
    report.nijenhuis_free = True
    logger.info(f"({F.name}, {G.name}) on {A.name}: compatible = {report.compatible}")
    return report


is_poisson_nijenhuis = is_compatible
