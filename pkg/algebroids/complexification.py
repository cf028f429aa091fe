"""Almost complex structures on algebroids and the (p,q) calculus they induce."""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from . import matrices
from .algebroid import Algebroid, ensure_verified
from .calculus import bracket_sections, d_e, frame_sections
from .errors import (
    InternalInconsistency,
    NotAlmostComplex,
    NotMorphism,
    NotPure,
    ParentMismatch,
    ShapeMismatch,
)
from .morphisms import Morphism, check_la_morphism
from .tensors import Form, Multivector, Tensor, wedge

logger = logging.getLogger(__name__)

HALF = QQ_I(QQ(1, 2), 0)
I_UNIT = QQ_I(0, 1)


class Endo:
    """Bundle endomorphism, ``matrix[a, b] = G^a_b`` so that G e_b = G^a_b e_a."""

    def __init__(self, parent: Algebroid, matrix, name: str = "G"):
        matrix = matrices.coerce_matrix(parent.ring, matrix)
        if matrix.shape != (parent.rank, parent.rank):
            raise ShapeMismatch(f"{name} has shape {matrix.shape}, expected {(parent.rank,) * 2}")
        self.parent = parent
        self.matrix = matrix
        self.name = name

    @property
    def ring(self):
        return self.parent.ring

    def apply(self, s: Multivector) -> Multivector:
        if s.degree != 1 and s.coeffs:
            raise ShapeMismatch(f"{self.name} acts on sections, got degree {s.degree}")
        out = {}
        for (b,), value in s.coeffs.items():
            for a in range(self.parent.rank):
                if self.matrix[a, b]:
                    term = self.matrix[a, b] * value
                    out[(a,)] = out[(a,)] + term if (a,) in out else term
        return Multivector(self.parent, 1, out)

    def dual_apply(self, omega: Form) -> Form:
        """G^* omega = omega o G."""
        if omega.degree != 1 and omega.coeffs:
            raise ShapeMismatch(f"{self.name}^* acts on 1-forms, got degree {omega.degree}")
        out = {}
        for (a,), value in omega.coeffs.items():
            for b in range(self.parent.rank):
                if self.matrix[a, b]:
                    term = value * self.matrix[a, b]
                    out[(b,)] = out[(b,)] + term if (b,) in out else term
        return Form(self.parent, 1, out)

    def square(self) -> np.ndarray:
        return matrices.matmul(self.ring, self.matrix, self.matrix)

    def is_constant(self) -> bool:
        return matrices.is_constant(self.matrix)

    def __repr__(self):
        return f"Endo({self.name} on {self.parent.name})"


def make_ac_structure(A: Algebroid, matrix, name: str = "J") -> Endo:
    """Endo after checking J^2 = -id exactly."""
    if A.rank % 2:
        raise NotAlmostComplex(f"{name}: rank {A.rank} is odd")
    J = matrix if isinstance(matrix, Endo) else Endo(A, matrix, name)
    square = J.square()
    minus_identity = matrices.scale(matrices.identity(A.ring, A.rank), -1)
    position = matrices.first_difference(square, minus_identity)
    if position is not None:
        a, b = position
        raise NotAlmostComplex(
            f"{J.name}^2 differs from -id at ({a + 1},{b + 1}): {square[a, b].to_text()}",
            detail=(a + 1, b + 1, square[a, b].to_text()))
    return J


# --- projectors ---

def projectors(J: Endo) -> Tuple[np.ndarray, np.ndarray]:
    """P^{1,0} = (id - iJ)/2 and P^{0,1} = (id + iJ)/2 on sections."""
    ring = J.ring
    identity = matrices.identity(ring, J.parent.rank)
    iJ = matrices.scale(J.matrix, I_UNIT)
    p10 = matrices.scale(matrices.add(identity, matrices.scale(iJ, -1)), HALF)
    p01 = matrices.scale(matrices.add(identity, iJ), HALF)
    return p10, p01


def _projected_frames(J: Endo, kind) -> Tuple[List[Tensor], List[Tensor]]:
    """(1,0)- and (0,1)-parts of each frame element (or coframe element for forms)."""
    key = ('projected', id(J), kind.kind)
    cache = J.parent.cache
    cached = cache.get(key)
    if cached is not None and cached[0] is J:
        return cached[1]
    p10, p01 = projectors(J)
    m = J.parent.rank
    holomorphic, antiholomorphic = [], []
    for a in range(m):
        if kind is Multivector:
            # column a: P e_a
            holomorphic.append(Multivector(J.parent, 1, {(c,): p10[c, a] for c in range(m)}))
            antiholomorphic.append(Multivector(J.parent, 1, {(c,): p01[c, a] for c in range(m)}))
        else:
            # row a: e^a o P, the dual projector acting on e^a
            holomorphic.append(Form(J.parent, 1, {(c,): p10[a, c] for c in range(m)}))
            antiholomorphic.append(Form(J.parent, 1, {(c,): p01[a, c] for c in range(m)}))
    result = (holomorphic, antiholomorphic)
    cache[key] = (J, result)
    return result


def holomorphic_frame(J: Endo) -> List[Multivector]:
    """z_a = e_a - iJe_a, spanning E^{1,0}."""
    return [s * 2 for s in _projected_frames(J, Multivector)[0]]


def holomorphic_coframe(J: Endo) -> List[Form]:
    """e^a - iJ^*e^a, spanning the (1,0)-forms."""
    return [w * 2 for w in _projected_frames(J, Form)[0]]


def conjugate(X: Tensor) -> Tensor:
    return X.conjugate()


@dataclass
class BigradeTable:
    kind: str
    degree: int
    components: Dict[Tuple[int, int], Tensor] = field(default_factory=dict)

    def get(self, p: int, q: int, parent=None) -> Tensor:
        if (p, q) in self.components:
            return self.components[(p, q)]
        cls = Multivector if self.kind == Multivector.kind else Form
        return cls(parent, p + q) if parent is not None else None

    def nonzero(self) -> List[Tuple[int, int]]:
        return sorted(k for k, v in self.components.items() if v)

    def total(self, parent) -> Tensor:
        cls = Multivector if self.kind == Multivector.kind else Form
        result = cls(parent, self.degree)
        for value in self.components.values():
            result = result + value
        return result

    def to_dict(self) -> dict:
        return {f"{p},{q}": v.to_text() for (p, q), v in sorted(self.components.items()) if v}


def bigrade(J: Endo, X: Tensor) -> BigradeTable:
    """Split X into (p,q)-components by projecting every slot."""
    if X.parent is not J.parent:
        raise ParentMismatch(f"{J.name} and the {X.kind} live over different algebroids")
    cls = type(X)
    holomorphic, antiholomorphic = _projected_frames(J, cls)
    components: Dict[Tuple[int, int], Tensor] = {}
    for index, coeff in X.coeffs.items():
        partial: Dict[int, Tensor] = {0: cls.scalar(J.parent, coeff)}
        for a in index:
            step: Dict[int, Tensor] = {}
            for p, value in partial.items():
                for shift, piece in ((1, holomorphic[a]), (0, antiholomorphic[a])):
                    if not piece:
                        continue
                    product = wedge(value, piece)
                    if product:
                        step[p + shift] = step[p + shift] + product if p + shift in step else product
            partial = step
        for p, value in partial.items():
            key = (p, X.degree - p)
            components[key] = components[key] + value if key in components else value
    components = {k: v for k, v in components.items() if v}
    return BigradeTable(X.kind, X.degree, components)


def pure_bidegree(J: Endo, X: Tensor) -> Optional[Tuple[int, int]]:
    """The single bidegree of X, None for the zero tensor; NotPure otherwise."""
    table = bigrade(J, X)
    present = table.nonzero()
    if not present:
        return None
    if len(present) > 1:
        raise NotPure(f"{X.kind} has components of bidegrees {present}", detail=present)
    return present[0]


def is_pure(J: Endo, X: Tensor, p: int, q: int) -> bool:
    present = bigrade(J, X).nonzero()
    return present in ([], [(p, q)])


def pure_basis(J: Endo, kind, p: int, q: int) -> List[Tensor]:
    """Wedges of p projected (1,0) and q projected (0,1) frame elements; spans the (p,q) tensors."""
    holomorphic, antiholomorphic = _projected_frames(J, kind)
    out = []
    m = J.parent.rank
    for I in combinations(range(m), p):
        for K in combinations(range(m), q):
            value = kind.scalar(J.parent, 1)
            for a in I:
                value = wedge(value, holomorphic[a] * 2)
            for b in K:
                value = wedge(value, antiholomorphic[b] * 2)
            if value:
                out.append(value)
    return out


# --- splitting of d_E ---

@dataclass
class DeComponents:
    """Parts of d_E omega of bidegrees (p+2,q-1), (p+1,q), (p,q+1), (p-1,q+2)."""
    bidegree: Tuple[int, int]
    partial_prime: Form
    partial: Form
    partial_bar: Form
    partial_double_prime: Form

    def total(self) -> Form:
        return self.partial_prime + self.partial + self.partial_bar + self.partial_double_prime


def de_components(A: Algebroid, J: Endo, omega: Form) -> DeComponents:
    degree = omega.degree
    bidegree = pure_bidegree(J, omega)
    zero = Form(A, degree + 1)
    if bidegree is None:
        return DeComponents((degree, 0), zero, zero, zero, zero)
    p, q = bidegree
    table = bigrade(J, d_e(A, omega))
    wanted = {(p + 2, q - 1), (p + 1, q), (p, q + 1), (p - 1, q + 2)}
    stray = [k for k in table.nonzero() if k not in wanted]
    if stray:
        raise InternalInconsistency(f"d_E of a ({p},{q})-form has components {stray}", detail=stray)
    return DeComponents(
        (p, q),
        table.get(p + 2, q - 1, A),
        table.get(p + 1, q, A),
        table.get(p, q + 1, A),
        table.get(p - 1, q + 2, A),
    )


# --- Nijenhuis tensor ---

class TensorField12:
    """Skew bilinear map on sections, ``components[a, b, c]`` = c-th component of N(e_a, e_b)."""

    def __init__(self, parent: Algebroid, components: np.ndarray, name: str = "N"):
        self.parent = parent
        self.components = components
        self.name = name

    def at(self, a: int, b: int) -> Multivector:
        return Multivector(self.parent, 1, {(c,): self.components[a, b, c] for c in range(self.parent.rank)})

    def is_zero(self) -> bool:
        return all(not self.components[i] for i in np.ndindex(*self.components.shape))

    def nonzero_pairs(self) -> List[Tuple[int, int]]:
        m = self.parent.rank
        return [(a + 1, b + 1) for a in range(m) for b in range(a + 1, m) if self.at(a, b)]

    def to_dict(self) -> dict:
        m = self.parent.rank
        return {f"{a + 1},{b + 1}": self.at(a, b).to_text()
                for a in range(m) for b in range(a + 1, m) if self.at(a, b)}


def nijenhuis_torsion_on(A: Algebroid, G: Endo, s: Multivector, t: Multivector) -> Multivector:
    """N_G(s,t) = [Gs,Gt] - G[Gs,t] - G[s,Gt] + G^2[s,t]."""
    Gs, Gt = G.apply(s), G.apply(t)
    st = bracket_sections(A, s, t)
    return (bracket_sections(A, Gs, Gt)
            - G.apply(bracket_sections(A, Gs, t))
            - G.apply(bracket_sections(A, s, Gt))
            + G.apply(G.apply(st)))


def nijenhuis_torsion(A: Algebroid, G: Endo, check_tensorial: bool = True) -> TensorField12:
    ensure_verified(A)
    if G.parent is not A:
        raise ParentMismatch(f"{G.name} is not an endomorphism of {A.name}")
    m = A.rank
    frame = frame_sections(A)
    components = np.empty((m, m, m), dtype=object)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                components[a, b, c] = A.ring.zero
    for a in range(m):
        for b in range(a + 1, m):
            value = nijenhuis_torsion_on(A, G, frame[a], frame[b])
            for c in range(m):
                entry = value.component(c)
                components[a, b, c] = entry
                components[b, a, c] = -entry
    field_ = TensorField12(A, components, name=f"N_{G.name}")
    if check_tensorial and A.ring.coordinates:
        _check_tensorial(A, G, field_)
    return field_


def _check_tensorial(A: Algebroid, G: Endo, N: TensorField12):
    f = A.ring.variable(A.ring.coordinates[0]) + 1
    frame = frame_sections(A)
    for a in range(A.rank):
        for b in range(a + 1, A.rank):
            scaled = nijenhuis_torsion_on(A, G, frame[a] * f, frame[b])
            if scaled != N.at(a, b) * f:
                raise InternalInconsistency(
                    f"N_{G.name} is not function-linear on (e{a + 1}, e{b + 1})", detail=(a + 1, b + 1))


def nijenhuis(A: Algebroid, J: Endo, check_tensorial: bool = True) -> TensorField12:
    """Nijenhuis tensor of an almost complex structure."""
    make_ac_structure(A, J)
    return nijenhuis_torsion(A, J, check_tensorial)


# --- integrability ---

@dataclass
class IntegrabilityReport:
    items: Dict[str, bool]
    integrable: bool
    witnesses: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'integrable': self.integrable, 'items': dict(self.items), 'witnesses': dict(self.witnesses)}


def _bracket_closed(A: Algebroid, J: Endo, sections: Sequence[Multivector], eigen: GaussianRational) -> Optional[str]:
    for a in range(len(sections)):
        for b in range(a + 1, len(sections)):
            w = bracket_sections(A, sections[a], sections[b])
            if J.apply(w) != w * eigen:
                return f"[z{a + 1}, z{b + 1}] = {w.to_text()}"
    return None


def integrability_report(A: Algebroid, J: Endo, max_degree: Optional[int] = None) -> IntegrabilityReport:
    """Five equivalent integrability criteria, each computed on its own.

    Criterion (iv) checks pure forms of total degree up to ``max_degree``, which defaults to 2
    for rank at most 4 and to 1 above that.
    """
    ensure_verified(A)
    make_ac_structure(A, J)
    if max_degree is None:
        max_degree = 2 if A.rank <= 4 else 1
    holo, anti = _projected_frames(J, Multivector)
    witnesses: Dict[str, str] = {}
    items: Dict[str, bool] = {}

    witness = _bracket_closed(A, J, [s for s in holo if s], I_UNIT)
    items['i'] = witness is None
    if witness:
        witnesses['i'] = witness
    witness = _bracket_closed(A, J, [s for s in anti if s], -I_UNIT)
    items['ii'] = witness is None
    if witness:
        witnesses['ii'] = witness

    items['iii'] = True
    for omega in pure_basis(J, Form, 1, 0):
        table = bigrade(J, d_e(A, omega))
        if table.components.get((0, 2)):
            items['iii'] = False
            witnesses['iii'] = f"d_E({omega.to_text()}) has a (0,2)-part"
            break

    items['iv'] = True
    for total in range(1, max_degree + 1):
        for p in range(total + 1):
            for omega in pure_basis(J, Form, p, total - p):
                parts = de_components(A, J, omega)
                if parts.partial_prime or parts.partial_double_prime:
                    items['iv'] = False
                    witnesses['iv'] = f"d_E({omega.to_text()}) has outer components"
                    break
            if not items['iv']:
                break
        if not items['iv']:
            break

    N = nijenhuis_torsion(A, J, check_tensorial=False)
    items['v'] = N.is_zero()
    if not items['v']:
        witnesses['v'] = f"N_J nonzero on {N.nonzero_pairs()}"

    verdicts = set(items.values())
    if len(verdicts) != 1:
        raise InternalInconsistency(f"integrability criteria disagree: {items}", detail=items)
    integrable = verdicts.pop()
    logger.info(f"{J.name} on {A.name}: integrable = {integrable}")
    return IntegrabilityReport(items, integrable, witnesses)


def is_integrable(A: Algebroid, J: Endo) -> bool:
    return nijenhuis(A, J, check_tensorial=False).is_zero()


# --- almost complex morphisms ---

@dataclass
class ACMorphismCheck:
    ok: bool
    matrix_condition: bool
    pullback_purity: bool

    def to_dict(self) -> dict:
        return {'ok': self.ok, 'matrix_condition': self.matrix_condition, 'pullback_purity': self.pullback_purity}


def check_ac_morphism(phi: Morphism, J1: Endo, J2: Endo) -> ACMorphismCheck:
    """phi o J1 = J2 o phi, cross-checked against purity of pulled back (1,0)- and (0,1)-forms."""
    if J1.parent is not phi.source or J2.parent is not phi.target:
        raise ParentMismatch("almost complex structures do not match the morphism")
    if not check_la_morphism(phi).ok:
        raise NotMorphism(f"{phi.name} is not a Lie algebroid morphism")
    ring = phi.source.ring
    matrix_condition = matrices.equal(matrices.matmul(ring, phi.matrix, J1.matrix),
                                      matrices.matmul(ring, J2.matrix, phi.matrix))
    purity = True
    for p, q in ((1, 0), (0, 1)):
        for omega in pure_basis(J2, Form, p, q):
            if not is_pure(J1, phi.pullback(omega), p, q):
                purity = False
                break
        if not purity:
            break
    if purity != matrix_condition:
        raise InternalInconsistency(
            f"{phi.name}: matrix condition {matrix_condition} but pullback purity {purity}")
    return ACMorphismCheck(matrix_condition, matrix_condition, purity)
