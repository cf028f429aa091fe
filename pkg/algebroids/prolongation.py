"""The prolongation of an algebroid over its vector bundle, lifts and linear connections."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import matrices
from .acp import ACPCheck, is_acp
from .algebroid import Algebroid, ensure_verified, verify_algebroid
from .calculus import bracket_sections, frame_sections
from .complexification import I_UNIT, Endo, TensorField12, make_ac_structure, nijenhuis_torsion, nijenhuis_torsion_on
from .errors import InternalInconsistency, NameCollision, ParentMismatch, ShapeMismatch
from .scalars import CoordinateRing, Scalar
from .tensors import Multivector, wedge

logger = logging.getLogger(__name__)

FIBER_PREFIXES = ('y', 'u', 'w', 'fiber')


class Prolongation:
    """Rank-2m algebroid with frame X_1..X_m (indices 0..m-1) and V_1..V_m (indices m..2m-1)."""

    def __init__(self, base: Algebroid):
        self.base = base
        m, n = base.rank, base.n
        self.ring = _extended_ring(base.ring, m)
        self.fiber_names = self.ring.coordinates[n:]
        self.fiber = [self.ring.variable(name) for name in self.fiber_names]

        anchor = matrices.zeros(self.ring, 2 * m, n + m)
        for a in range(m):
            for i in range(n):
                anchor[a, i] = self.embed(base.anchor[a, i])
            anchor[m + a, n + a] = self.ring.one
        structure = np.empty((2 * m, 2 * m, 2 * m), dtype=object)
        for index in np.ndindex(*structure.shape):
            a, b, c = index
            structure[index] = self.embed(base.structure[a, b, c]) if max(index) < m else self.ring.zero
        self.total = Algebroid(self.ring, 2 * m, anchor, structure, name=f"L({base.name})")

    @property
    def m(self) -> int:
        return self.base.rank

    def embed(self, f: Scalar) -> Scalar:
        """A base function as a function on the total space."""
        return self.ring.embed(f, range(self.base.n))

    def X(self, a: int) -> Multivector:
        return Multivector(self.total, 1, {(a,): self.ring.one})

    def V(self, a: int) -> Multivector:
        return Multivector(self.total, 1, {(self.m + a,): self.ring.one})

    def fiber_linear(self, matrix: np.ndarray) -> Multivector:
        """The vertical section u -> (M u)^v, i.e. M^b_c y^c V_b."""
        m = self.m
        coeffs = {}
        for b in range(m):
            total = self.ring.zero
            for c in range(m):
                if matrix[b, c]:
                    total = total + self.embed(matrix[b, c]) * self.fiber[c]
            if total:
                coeffs[(m + b,)] = total
        return Multivector(self.total, 1, coeffs)

    def __repr__(self):
        return f"Prolongation({self.base.name}, rank={self.total.rank})"


def _extended_ring(ring: CoordinateRing, m: int) -> CoordinateRing:
    for prefix in FIBER_PREFIXES:
        names = [f"{prefix}{a + 1}" for a in range(m)]
        if not set(names) & set(ring.coordinates):
            break
    else:
        raise NameCollision(f"no free names for fiber coordinates over {list(ring.coordinates)}")
    padding = (0,) * m
    relations = [{mono + padding: coeff for mono, coeff in raw.items()} for raw in ring.relations]
    return CoordinateRing(list(ring.coordinates) + names, relations)


def prolong(A: Algebroid) -> Prolongation:
    ensure_verified(A)
    P = Prolongation(A)
    report = verify_algebroid(P.total)
    if not report.ok:
        raise InternalInconsistency(f"prolongation of {A.name} fails {report.failed_identities()}", detail=report)
    logger.info(f"{A.name}: prolongation of rank {P.total.rank} over {list(P.ring.coordinates)}")
    return P


def _check_base(P: Prolongation, S):
    if isinstance(S, Multivector) and S.parent is not P.base:
        raise ParentMismatch(f"lift of a multivector over {S.parent.name}, expected {P.base.name}")


# --- vertical and complete lifts ---

def lift_function(P: Prolongation, f: Scalar) -> Scalar:
    """f^c = y^c rho(e_c) f."""
    total = P.ring.zero
    for c in range(P.m):
        derivative = P.base.rho(c, f)
        if derivative:
            total = total + P.embed(derivative) * P.fiber[c]
    return total


def _vertical_frame(P: Prolongation, index: Sequence[int]) -> Multivector:
    return Multivector(P.total, len(index), {tuple(P.m + a for a in index): P.ring.one})


def _complete_frame_section(P: Prolongation, a: int) -> Multivector:
    """e_a^c = X_a - C^b_{ac} y^c V_b."""
    key = ('complete', a)
    cached = P.total.cache.get(key)
    if cached is not None:
        return cached
    m = P.m
    C = P.base.structure
    coeffs = {(a,): P.ring.one}
    for b in range(m):
        total = P.ring.zero
        for c in range(m):
            if C[a, c, b]:
                total = total - P.embed(C[a, c, b]) * P.fiber[c]
        if total:
            coeffs[(m + b,)] = total
    value = Multivector(P.total, 1, coeffs)
    P.total.cache[key] = value
    return value


def _complete_frame(P: Prolongation, index: Sequence[int]) -> Multivector:
    """(e_I)^c = sum over slots of e_{i1}^v ^ ... ^ e_{ik}^c ^ ... ^ e_{ip}^v."""
    result = Multivector(P.total, len(index))
    for k in range(len(index)):
        term = Multivector.scalar(P.total, 1)
        for j, a in enumerate(index):
            piece = _complete_frame_section(P, a) if j == k else _vertical_frame(P, (a,))
            term = wedge(term, piece)
        result = result + term
    return result


def vlift(P: Prolongation, S) -> Multivector:
    _check_base(P, S)
    if not isinstance(S, Multivector):
        return Multivector.scalar(P.total, P.embed(P.base.ring.coerce(S)))
    result = Multivector(P.total, S.degree)
    for index, coeff in S.coeffs.items():
        result = result + _vertical_frame(P, index) * P.embed(coeff)
    return result


def clift(P: Prolongation, S) -> Multivector:
    """Complete lift; (f e_I)^c = f^c (e_I)^v + f (e_I)^c."""
    _check_base(P, S)
    if not isinstance(S, Multivector):
        return Multivector.scalar(P.total, lift_function(P, P.base.ring.coerce(S)))
    result = Multivector(P.total, S.degree)
    for index, coeff in S.coeffs.items():
        lifted = lift_function(P, coeff)
        if lifted:
            result = result + _vertical_frame(P, index) * lifted
        if index:
            result = result + _complete_frame(P, index) * P.embed(coeff)
    return result


def clift_endo(P: Prolongation, J: Endo) -> Endo:
    """J^c = [[J, 0], [K, J]] with K^a_b = (rho_c J^a_b - C^a_{dc} J^d_b + C^d_{bc} J^a_d) y^c."""
    if J.parent is not P.base:
        raise ParentMismatch(f"{J.name} does not act on {P.base.name}")
    m = P.m
    C = P.base.structure
    lifted = matrices.zeros(P.ring, 2 * m, 2 * m)
    for a in range(m):
        for b in range(m):
            entry = P.embed(J.matrix[a, b])
            lifted[a, b] = entry
            lifted[m + a, m + b] = entry
            K = P.ring.zero
            for c in range(m):
                value = P.base.rho(c, J.matrix[a, b])
                for d in range(m):
                    if C[d, c, a] and J.matrix[d, b]:
                        value = value - C[d, c, a] * J.matrix[d, b]
                    if C[b, c, d] and J.matrix[a, d]:
                        value = value + C[b, c, d] * J.matrix[a, d]
                if value:
                    K = K + P.embed(value) * P.fiber[c]
            lifted[m + a, b] = K
    return Endo(P.total, lifted, name=f"{J.name}^c")


@dataclass
class LawReport:
    """Residuals of lift identities keyed by law name and 1-based frame pair; empty when all hold."""
    residuals: Dict[Tuple[str, int, int], Multivector] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.residuals

    def record(self, law: str, a: int, b: int, residual: Multivector):
        if residual:
            self.residuals[(law, a + 1, b + 1)] = residual

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'residuals': {f"{law}({a},{b})": v.to_text() for (law, a, b), v in sorted(self.residuals.items())},
        }


def lifted_nijenhuis_check(P: Prolongation, J: Endo) -> LawReport:
    """N_{J^c}(s^c,t^c) = N(s,t)^c, N_{J^c}(s^v,t^c) = N(s,t)^v, N_{J^c}(s^v,t^v) = 0 on frames."""
    make_ac_structure(P.base, J)
    Jc = make_ac_structure(P.total, clift_endo(P, J))
    N = nijenhuis_torsion(P.base, J, check_tensorial=False)
    report = LawReport()
    frame = frame_sections(P.base)
    for a in range(P.m):
        for b in range(P.m):
            sc, tc = clift(P, frame[a]), clift(P, frame[b])
            sv, tv = vlift(P, frame[a]), vlift(P, frame[b])
            value = N.at(a, b)
            if a < b:
                report.record('cc', a, b, nijenhuis_torsion_on(P.total, Jc, sc, tc) - clift(P, value))
                report.record('vv', a, b, nijenhuis_torsion_on(P.total, Jc, sv, tv))
            report.record('vc', a, b, nijenhuis_torsion_on(P.total, Jc, sv, tc) - vlift(P, value))
    return report


def complete_lift_laws(P: Prolongation, sections: Optional[Sequence[Multivector]] = None) -> LawReport:
    """[s^v,t^v] = 0, [s^v,t^c] = [s,t]^v and [s^c,t^c] = [s,t]^c."""
    sections = list(sections) if sections is not None else frame_sections(P.base)
    report = LawReport()
    for a, s in enumerate(sections):
        for b, t in enumerate(sections):
            st = bracket_sections(P.base, s, t)
            report.record('vv', a, b, bracket_sections(P.total, vlift(P, s), vlift(P, t)))
            report.record('vc', a, b, bracket_sections(P.total, vlift(P, s), clift(P, t)) - vlift(P, st))
            report.record('cc', a, b, bracket_sections(P.total, clift(P, s), clift(P, t)) - clift(P, st))
    return report


# --- linear connections ---

class Connection:
    """nabla_{e_a} e_c = Gamma^b_{ac} e_b with ``gamma[a, c, b] = Gamma^b_{ac}``."""

    def __init__(self, parent: Algebroid, gamma, name: str = "nabla"):
        gamma = np.asarray(gamma, dtype=object)
        m = parent.rank
        if gamma.shape != (m, m, m):
            raise ShapeMismatch(f"connection coefficients have shape {gamma.shape}, expected {(m,) * 3}")
        coerced = np.empty(gamma.shape, dtype=object)
        for index in np.ndindex(*gamma.shape):
            coerced[index] = parent.ring.coerce(gamma[index])
        self.parent = parent
        self.gamma = coerced
        self.name = name

    @classmethod
    def zero(cls, parent: Algebroid) -> 'Connection':
        m = parent.rank
        return cls(parent, np.full((m, m, m), 0, dtype=object), name="flat")

    def nabla(self, s: Multivector, t: Multivector) -> Multivector:
        """nabla_s t = s^a (rho_a t^b + t^c Gamma^b_{ac}) e_b."""
        A = self.parent
        out: Dict[Tuple[int, ...], Scalar] = {}

        def accumulate(b: int, value: Scalar):
            if value:
                out[(b,)] = out[(b,)] + value if (b,) in out else value

        for (a,), sa in s.coeffs.items():
            for (b,), tb in t.coeffs.items():
                accumulate(b, sa * A.rho(a, tb))
                for d in range(A.rank):
                    if self.gamma[a, b, d]:
                        accumulate(d, sa * tb * self.gamma[a, b, d])
        return Multivector(A, 1, out)

    def torsion(self, s: Multivector, t: Multivector) -> Multivector:
        return self.nabla(s, t) - self.nabla(t, s) - bracket_sections(self.parent, s, t)

    def curvature(self, s: Multivector, t: Multivector, u: Multivector) -> Multivector:
        return (self.nabla(s, self.nabla(t, u)) - self.nabla(t, self.nabla(s, u))
                - self.nabla(bracket_sections(self.parent, s, t), u))

    def curvature_matrix(self, s: Multivector, t: Multivector) -> np.ndarray:
        """R(s,t) as an endomorphism matrix, entry [b, c] = component b of R(s,t)e_c."""
        A = self.parent
        R = matrices.zeros(A.ring, A.rank, A.rank)
        for c, u in enumerate(frame_sections(A)):
            value = self.curvature(s, t, u)
            for b in range(A.rank):
                R[b, c] = value.component(b)
        return R

    def torsion_tensor(self) -> TensorField12:
        A = self.parent
        m = A.rank
        frame = frame_sections(A)
        components = np.empty((m, m, m), dtype=object)
        for a in range(m):
            for b in range(m):
                value = self.torsion(frame[a], frame[b])
                for c in range(m):
                    components[a, b, c] = value.component(c)
        return TensorField12(A, components, name=f"T_{self.name}")

    def tensoriality_residuals(self, f: Scalar) -> List[Multivector]:
        """f-scaling defects of T and R on frame pairs; all zero for a genuine connection."""
        frame = frame_sections(self.parent)
        out = []
        for a, s in enumerate(frame):
            for b, t in enumerate(frame):
                out.append(self.torsion(s * f, t) - self.torsion(s, t) * f)
                for u in frame:
                    out.append(self.curvature(s, t * f, u) - self.curvature(s, t, u) * f)
                    out.append(self.curvature(s, t, u * f) - self.curvature(s, t, u) * f)
        return [r for r in out if r]

    def __repr__(self):
        return f"Connection({self.name} on {self.parent.name})"


# --- horizontal lifts ---

def _check_connection(P: Prolongation, connection: Connection):
    if connection.parent is not P.base:
        raise ParentMismatch(f"{connection.name} is not a connection on {P.base.name}")


def horizontal_frame_section(P: Prolongation, connection: Connection, a: int) -> Multivector:
    """H_a = X_a - Gamma^b_{ac} y^c V_b."""
    m = P.m
    coeffs = {(a,): P.ring.one}
    for b in range(m):
        total = P.ring.zero
        for c in range(m):
            if connection.gamma[a, c, b]:
                total = total - P.embed(connection.gamma[a, c, b]) * P.fiber[c]
        if total:
            coeffs[(m + b,)] = total
    return Multivector(P.total, 1, coeffs)


def hlift(P: Prolongation, connection: Connection, s: Multivector) -> Multivector:
    _check_base(P, s)
    _check_connection(P, connection)
    if s.degree != 1 and s.coeffs:
        raise ShapeMismatch(f"horizontal lifts are defined for sections, got degree {s.degree}")
    result = Multivector(P.total, 1)
    for (a,), coeff in s.coeffs.items():
        result = result + horizontal_frame_section(P, connection, a) * P.embed(coeff)
    return result


def _adapted(P: Prolongation, connection: Connection, block: np.ndarray) -> np.ndarray:
    """Phi B Phi^{-1}, Phi = [[I, 0], [-G, I]] with G[b, a] = Gamma^b_{ac} y^c."""
    m = P.m
    G = matrices.zeros(P.ring, m, m)
    for a in range(m):
        for b in range(m):
            total = P.ring.zero
            for c in range(m):
                if connection.gamma[a, c, b]:
                    total = total + P.embed(connection.gamma[a, c, b]) * P.fiber[c]
            G[b, a] = total
    identity = matrices.identity(P.ring, m)
    zero = matrices.zeros(P.ring, m, m)
    phi = matrices.block([[identity, zero], [matrices.scale(G, -1), identity]])
    phi_inverse = matrices.block([[identity, zero], [G, identity]])
    return matrices.matmul(P.ring, matrices.matmul(P.ring, phi, block), phi_inverse)


def j1_structure(P: Prolongation, connection: Connection) -> Endo:
    """J^1 with J^1 s^h = s^v and J^1 s^v = -s^h."""
    _check_connection(P, connection)
    m = P.m
    identity = matrices.identity(P.ring, m)
    zero = matrices.zeros(P.ring, m, m)
    block = matrices.block([[zero, matrices.scale(identity, -1)], [identity, zero]])
    return make_ac_structure(P.total, _adapted(P, connection, block), name="J1")


def hlift_endo(P: Prolongation, connection: Connection, J: Endo) -> Endo:
    """J^h with J^h s^h = (Js)^h and J^h s^v = (Js)^v."""
    _check_connection(P, connection)
    make_ac_structure(P.base, J)
    m = P.m
    lifted = matrices.zeros(P.ring, m, m)
    for a in range(m):
        for b in range(m):
            lifted[a, b] = P.embed(J.matrix[a, b])
    zero = matrices.zeros(P.ring, m, m)
    block = matrices.block([[lifted, zero], [zero, lifted]])
    return make_ac_structure(P.total, _adapted(P, connection, block), name=f"{J.name}^h")


def horizontal_projector(P: Prolongation, connection: Connection) -> Endo:
    _check_connection(P, connection)
    m = P.m
    zero = matrices.zeros(P.ring, m, m)
    block = matrices.block([[matrices.identity(P.ring, m), zero], [zero, zero]])
    return Endo(P.total, _adapted(P, connection, block), name="h")


def horizontal_lift_laws(P: Prolongation, connection: Connection,
                         sections: Optional[Sequence[Multivector]] = None) -> LawReport:
    """[s^h,t^h] = [s,t]^h - (R(s,t)u)^v, [s^h,t^v] = (nabla_s t)^v and [s^v,t^v] = 0."""
    sections = list(sections) if sections is not None else frame_sections(P.base)
    report = LawReport()
    for a, s in enumerate(sections):
        sh, sv = hlift(P, connection, s), vlift(P, s)
        for b, t in enumerate(sections):
            th, tv = hlift(P, connection, t), vlift(P, t)
            curvature = P.fiber_linear(connection.curvature_matrix(s, t))
            expected = hlift(P, connection, bracket_sections(P.base, s, t)) - curvature
            report.record('hh', a, b, bracket_sections(P.total, sh, th) - expected)
            report.record('hv', a, b, bracket_sections(P.total, sh, tv) - vlift(P, connection.nabla(s, t)))
            report.record('vv', a, b, bracket_sections(P.total, sv, tv))
    return report


def curvature_nijenhuis_check(P: Prolongation, connection: Connection) -> LawReport:
    """N_h(H_a, H_b) = -(R(e_a,e_b)u)^v: the curvature is minus the Nijenhuis tensor of h."""
    h = horizontal_projector(P, connection)
    frame = frame_sections(P.base)
    report = LawReport()
    for a in range(P.m):
        for b in range(a + 1, P.m):
            Ha = horizontal_frame_section(P, connection, a)
            Hb = horizontal_frame_section(P, connection, b)
            curvature = P.fiber_linear(connection.curvature_matrix(frame[a], frame[b]))
            report.record('Nh', a, b, nijenhuis_torsion_on(P.total, h, Ha, Hb) + curvature)
    return report


# --- a simple ACP structure on the prolongation ---

@dataclass
class ProlongationCertificate:
    pi20: Multivector
    conditions: Dict[str, bool]
    acp: ACPCheck

    @property
    def sufficient(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self) -> dict:
        return {
            'pi20': self.pi20.to_text(),
            'conditions': dict(self.conditions),
            'sufficient': self.sufficient,
            'acp': self.acp.to_dict(),
        }


def example_pi_on_prolongation(P: Prolongation, connection: Connection, s1: Multivector,
                               s2: Multivector) -> ProlongationCertificate:
    """pi20 = (s1^h - i s1^v) ^ (s2^h - i s2^v) for J^1, with its sufficient conditions."""
    J1 = j1_structure(P, connection)
    z1 = hlift(P, connection, s1) - vlift(P, s1) * I_UNIT
    z2 = hlift(P, connection, s2) - vlift(P, s2) * I_UNIT
    pi20 = wedge(z1, z2)
    A = P.base
    conditions = {
        'bracket': not bracket_sections(A, s1, s2),
        'nabla_s1_s2': not connection.nabla(s1, s2),
        'curvature': not any(connection.curvature_matrix(s1, s2)[idx] for idx in np.ndindex(A.rank, A.rank)),
        'torsion': not connection.torsion(s1, s2),
        'nabla_s1_s1': not connection.nabla(s1, s1),
        'nabla_s2_s2': not connection.nabla(s2, s2),
    }
    acp = is_acp(P.total, J1, pi20)
    if all(conditions.values()) and not acp.ok:
        raise InternalInconsistency("the sufficient conditions hold but pi20 is not almost complex Poisson")
    return ProlongationCertificate(pi20, conditions, acp)
