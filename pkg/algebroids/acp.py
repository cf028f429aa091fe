"""Almost complex Poisson structures: the bracket, sigma operators and the symplectic correspondence."""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from . import matrices
from .algebroid import Algebroid, ensure_verified
from .calculus import bracket_sections, d_e, schouten
from .complexification import (
    I_UNIT,
    Endo,
    bigrade,
    is_integrable,
    make_ac_structure,
    nijenhuis,
    pure_basis,
    pure_bidegree,
)
from .errors import Degenerate, InternalInconsistency, NotACP, NotClosed, NotIntegrable, NotPure, ParentMismatch
from .poisson import bivector_of, ie_map, sharp
from .scalars import Scalar
from .tensors import Form, Multivector, interior, pairing, wedge

logger = logging.getLogger(__name__)

SIGMA_KINDS = ('sigma', 'sigma1', 'sigma2', 'sigma11', 'sigma12')


def _require_20(J: Endo, pi20: Multivector):
    if pi20.parent is not J.parent:
        raise ParentMismatch(f"{J.name} and the bivector live over different algebroids")
    bidegree = pure_bidegree(J, pi20)
    if bidegree not in (None, (2, 0)):
        raise NotPure(f"expected a (2,0)-bivector, got bidegree {bidegree}", detail=bidegree)


@dataclass
class ACPCheck:
    ok: bool
    self_bracket: Multivector
    mixed_bracket: Multivector

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'self_bracket': self.self_bracket.to_text(),
            'mixed_bracket': self.mixed_bracket.to_text(),
        }


def is_acp(A: Algebroid, J: Endo, pi20: Multivector) -> ACPCheck:
    """[pi20, pi20] = 0 and [pi20, conj pi20] = 0."""
    ensure_verified(A)
    make_ac_structure(A, J)
    _require_20(J, pi20)
    self_bracket = schouten(A, pi20, pi20)
    mixed_bracket = schouten(A, pi20, pi20.conjugate())
    ok = self_bracket.is_zero() and mixed_bracket.is_zero()
    logger.info(f"({J.name}, pi20) on {A.name}: almost complex Poisson = {ok}")
    return ACPCheck(ok, self_bracket, mixed_bracket)


def acp_function_bracket(A: Algebroid, J: Endo, pi20: Multivector, f: Scalar, g: Scalar) -> Scalar:
    """{f, g} = pi20 contracted with d_E f ^ d_E g."""
    _require_20(J, pi20)
    return pairing(wedge(d_e(A, f), d_e(A, g)), pi20)


def real_parts(pi20: Multivector) -> Tuple[Multivector, Multivector]:
    """(pi20 + conj pi20, i (pi20 - conj pi20)), both with real coefficients."""
    conj = pi20.conjugate()
    return pi20 + conj, (pi20 - conj) * I_UNIT


def dolbeault_parts(A: Algebroid, J: Endo, f: Scalar) -> Tuple[Form, Form]:
    """(d' f, d'' f): the (1,0)- and (0,1)-parts of d_E f."""
    table = bigrade(J, d_e(A, f))
    return table.get(1, 0, A), table.get(0, 1, A)


# --- sigma operators ---

def _sigma_total(A: Algebroid, pi20: Multivector, S: Multivector, which: str) -> Multivector:
    if which == 'sigma':
        target = pi20 + pi20.conjugate()
    elif which == 'sigma2':
        target = pi20.conjugate()
    else:
        target = pi20
    return -schouten(A, S, target)


@dataclass
class SigmaSplit:
    """sigma1 of a (p,q)-multivector cut into its (p+1,q) and (p+2,q-1) parts."""
    bidegree: Tuple[int, int]
    sigma11: Multivector
    sigma12: Multivector
    outer: Dict[Tuple[int, int], Multivector] = field(default_factory=dict)
    integrable: bool = True

    def to_dict(self) -> dict:
        return {
            'bidegree': list(self.bidegree),
            'sigma11': self.sigma11.to_text(),
            'sigma12': self.sigma12.to_text(),
            'outer': {f"{p},{q}": v.to_text() for (p, q), v in sorted(self.outer.items())},
            'integrable': self.integrable,
        }


def sigma_split(A: Algebroid, J: Endo, pi20: Multivector, S: Multivector, strict: bool = False) -> SigmaSplit:
    bidegree = pure_bidegree(J, S)
    degree = S.degree + 1
    if bidegree is None:
        zero = Multivector(A, degree)
        return SigmaSplit((S.degree, 0), zero, zero)
    p, q = bidegree
    integrable = is_integrable(A, J)
    if not integrable:
        if strict:
            raise NotIntegrable(f"{J.name} is not integrable; sigma1 has outer components")
        logger.warning(f"{J.name} is not integrable: sigma1 of a ({p},{q})-multivector keeps all four parts")
    table = bigrade(J, _sigma_total(A, pi20, S, 'sigma1'))
    outer = {k: v for k, v in table.components.items() if k not in ((p + 1, q), (p + 2, q - 1))}
    if integrable and outer:
        raise InternalInconsistency(f"sigma1 has parts {sorted(outer)} although {J.name} is integrable")
    return SigmaSplit((p, q), table.get(p + 1, q, A), table.get(p + 2, q - 1, A), outer, integrable)


def sigma(A: Algebroid, J: Endo, pi20: Multivector, S, which: str = 'sigma1') -> Multivector:
    """sigma = -[., pi], sigma1 = -[., pi20], sigma2 = -[., conj pi20] and the parts of sigma1."""
    if which not in SIGMA_KINDS:
        raise ValueError(f"unknown sigma operator '{which}', expected one of {SIGMA_KINDS}")
    _require_20(J, pi20)
    if not isinstance(S, Multivector):
        S = Multivector.scalar(A, S)
    if which in ('sigma11', 'sigma12'):
        split = sigma_split(A, J, pi20, S)
        return split.sigma11 if which == 'sigma11' else split.sigma12
    return _sigma_total(A, pi20, S, which)


# --- Hamiltonian sections ---

def hamiltonian_section(A: Algebroid, J: Endo, pi20: Multivector, f: Scalar) -> Multivector:
    """s_f = iota_{d' f} pi20."""
    _require_20(J, pi20)
    holomorphic, _ = dolbeault_parts(A, J, f)
    if not holomorphic:
        return Multivector(A, 1)
    return sharp(pi20, holomorphic)


def hamiltonian_closure_residual(A: Algebroid, J: Endo, pi20: Multivector, f: Scalar, g: Scalar) -> Multivector:
    """[s_f, s_g] - s_{f,g}."""
    sf = hamiltonian_section(A, J, pi20, f)
    sg = hamiltonian_section(A, J, pi20, g)
    bracket = acp_function_bracket(A, J, pi20, f, g)
    return bracket_sections(A, sf, sg) - hamiltonian_section(A, J, pi20, bracket)


# --- the symplectic correspondence ---

def form_matrix(omega: Form) -> np.ndarray:
    """Skew matrix W with W[a, b] = omega(e_a, e_b)."""
    A = omega.parent
    W = matrices.zeros(A.ring, A.rank, A.rank)
    for (a, b), value in omega.coeffs.items():
        W[a, b] = value
        W[b, a] = -value
    return W


def form_from_matrix(A: Algebroid, W: np.ndarray) -> Form:
    return Form(A, 2, {(a, b): W[a, b] for a in range(A.rank) for b in range(a + 1, A.rank)})


def _require_integrable(A: Algebroid, J: Endo):
    if not is_integrable(A, J):
        raise NotIntegrable(f"{J.name} is not integrable on {A.name}")


def symplectic_to_poisson(A: Algebroid, J: Endo, omega20: Form) -> Multivector:
    """The (2,0)-bivector inverse to a d'-closed nondegenerate (2,0)-form."""
    ensure_verified(A)
    make_ac_structure(A, J)
    _require_integrable(A, J)
    bidegree = pure_bidegree(J, omega20)
    if bidegree not in (None, (2, 0)):
        raise NotPure(f"expected a (2,0)-form, got bidegree {bidegree}", detail=bidegree)
    closure = bigrade(J, d_e(A, omega20)).get(3, 0, A)
    if closure:
        raise NotClosed(f"d' of the form is {closure.to_text()}", detail=closure)

    real_form = omega20 + omega20.conjugate()
    inverse = matrices.unit_inverse(A.ring, form_matrix(real_form))
    if inverse is None:
        raise Degenerate("the real part of the form is not invertible over the coordinate ring")
    real_bivector = bivector_of(matrices.scale(inverse, -1), A)
    pi20 = bigrade(J, real_bivector).get(2, 0, A)

    for z in pure_basis(J, Form, 1, 0):
        if interior(sharp(pi20, z), omega20) != z:
            raise InternalInconsistency(f"iota_(pi20# z) omega20 differs from z for z = {z.to_text()}")
    if ie_map(real_bivector, real_form) != -real_bivector:
        raise InternalInconsistency("I_E of the real form is not minus the real bivector")
    if schouten(A, pi20, pi20):
        raise InternalInconsistency("[pi20, pi20] does not vanish for a closed nondegenerate form")
    logger.info(f"{A.name}: d'-symplectic form inverted to a (2,0)-bivector")
    return pi20


def poisson_to_symplectic(A: Algebroid, J: Endo, pi20: Multivector) -> Form:
    """The d'-symplectic (2,0)-form of a nondegenerate ACP structure."""
    if not is_acp(A, J, pi20).ok:
        raise NotACP(f"the bivector is not almost complex Poisson for {J.name}")
    real_bivector = pi20 + pi20.conjugate()
    F = matrices.transpose(_bivector_matrix(real_bivector))
    inverse = matrices.unit_inverse(A.ring, F)
    if inverse is None:
        raise Degenerate("the bivector is degenerate over the coordinate ring")
    real_form = form_from_matrix(A, matrices.scale(inverse, -1))
    omega20 = bigrade(J, real_form).get(2, 0, A)
    closure = bigrade(J, d_e(A, omega20)).get(3, 0, A)
    if closure:
        raise InternalInconsistency(f"d' of the inverse form is {closure.to_text()}")
    torsion = nijenhuis(A, J, check_tensorial=False)
    if not torsion.is_zero():
        pairs = torsion.nonzero_pairs()
        raise InternalInconsistency(
            f"{J.name} carries a nondegenerate ACP structure but N(e_a, e_b) is nonzero for {pairs}", detail=pairs)
    return omega20


def _bivector_matrix(pi: Multivector) -> np.ndarray:
    """P[a, b] = coefficient of e_a ^ e_b, skew."""
    A = pi.parent
    P = matrices.zeros(A.ring, A.rank, A.rank)
    for (a, b), value in pi.coeffs.items():
        P[a, b] = value
        P[b, a] = -value
    return P


def nondegenerate(pi20: Multivector) -> bool:
    A = pi20.parent
    real = pi20 + pi20.conjugate()
    return matrices.unit_inverse(A.ring, _bivector_matrix(real)) is not None
