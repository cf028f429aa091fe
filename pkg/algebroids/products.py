"""Direct products, subalgebroids, graphs of morphisms and the coisotropic graph criterion."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.domains import QQ_I

from . import config, matrices
from .algebroid import Algebroid, ensure_verified, verify_algebroid
from .calculus import bracket_sections
from .complexification import Endo, bigrade, check_ac_morphism, make_ac_structure, projectors, pure_basis
from .errors import (
    InternalInconsistency,
    NameCollision,
    NoAnnihilator,
    NotMorphism,
    ParentMismatch,
    PreconditionFailed,
)
from .morphisms import Morphism, check_la_morphism
from .poisson import as_bisection, sharp
from .sampling import make_rng
from .scalars import CoordinateRing, Scalar
from .tensors import Form, Multivector, SkewTensor, pairing, wedge

logger = logging.getLogger(__name__)


class DirectProduct:
    """E1 x E2 over M1 x M2; the frame of E2 follows the frame of E1."""

    def __init__(self, left: Algebroid, right: Algebroid, name: Optional[str] = None):
        self.left = left
        self.right = right
        n1, n2 = left.n, right.n
        m1, m2 = left.rank, right.rank
        first = list(left.ring.coordinates)
        second = []
        for coordinate in right.ring.coordinates:
            renamed = f"{coordinate}_2" if coordinate in first else coordinate
            if renamed in first or renamed in second:
                raise NameCollision(f"coordinate '{coordinate}' collides even after renaming", detail=coordinate)
            second.append(renamed)
        relations = [{mono + (0,) * n2: c for mono, c in raw.items()} for raw in left.ring.relations]
        relations += [{(0,) * n1 + mono: c for mono, c in raw.items()} for raw in right.ring.relations]
        self.ring = CoordinateRing(first + second, relations)
        self._positions = (list(range(n1)), list(range(n1, n1 + n2)))

        anchor = matrices.zeros(self.ring, m1 + m2, n1 + n2)
        for a in range(m1):
            for i in range(n1):
                anchor[a, i] = self.embed(0, left.anchor[a, i])
        for a in range(m2):
            for i in range(n2):
                anchor[m1 + a, n1 + i] = self.embed(1, right.anchor[a, i])
        m = m1 + m2
        structure = np.empty((m, m, m), dtype=object)
        for index in np.ndindex(m, m, m):
            structure[index] = self.ring.zero
        for index in np.ndindex(m1, m1, m1):
            structure[index] = self.embed(0, left.structure[index])
        for a, b, c in np.ndindex(m2, m2, m2):
            structure[m1 + a, m1 + b, m1 + c] = self.embed(1, right.structure[a, b, c])
        self.total = Algebroid(self.ring, m, anchor, structure, name=name or f"{left.name}x{right.name}")

    def embed(self, factor: int, f: Scalar) -> Scalar:
        return self.ring.embed(f, self._positions[factor])

    def lift(self, factor: int, X: SkewTensor) -> SkewTensor:
        """A tensor of one factor as a tensor of the product."""
        source = (self.left, self.right)[factor]
        if X.parent is not source:
            raise ParentMismatch(f"tensor over {X.parent.name} is not over factor {factor + 1}")
        shift = 0 if factor == 0 else self.left.rank
        coeffs = {tuple(a + shift for a in index): self.embed(factor, value) for index, value in X.coeffs.items()}
        return type(X)(self.total, X.degree, coeffs)

    def endo(self, J1: Endo, J2: Endo) -> Endo:
        """J1 + J2 acting blockwise."""
        m1, m2 = self.left.rank, self.right.rank
        matrix = matrices.zeros(self.ring, m1 + m2, m1 + m2)
        for a, b in np.ndindex(m1, m1):
            matrix[a, b] = self.embed(0, J1.matrix[a, b])
        for a, b in np.ndindex(m2, m2):
            matrix[m1 + a, m1 + b] = self.embed(1, J2.matrix[a, b])
        return Endo(self.total, matrix, name=f"{J1.name}+{J2.name}")

    def bivector(self, pi1: Multivector, pi2: Multivector) -> Multivector:
        return self.lift(0, pi1) + self.lift(1, pi2)


def direct_product(left: Algebroid, right: Algebroid, name: Optional[str] = None) -> DirectProduct:
    ensure_verified(left)
    ensure_verified(right)
    product = DirectProduct(left, right, name)
    report = verify_algebroid(product.total)
    if not report.ok:
        raise InternalInconsistency(f"{product.total.name} fails {report.failed_identities()}", detail=report)
    logger.info(f"direct product {product.total.name}: rank {product.total.rank} over {list(product.ring.coordinates)}")
    return product


# --- subalgebroids ---

def _columns(A: Algebroid, frame: np.ndarray) -> List[Multivector]:
    return [Multivector(A, 1, {(a,): frame[a, c] for a in range(A.rank)}) for c in range(frame.shape[1])]


def _sample(A: Algebroid, count: Optional[int] = None, seed: Optional[int] = None) -> List[dict]:
    if not A.ring.coordinates:
        return [{}]
    count = config.SAMPLE_POINTS if count is None else count
    return A.ring.sample_points(count, make_rng(seed))


def _vector_matrix(vectors: Sequence[Multivector], point) -> sympy.Matrix:
    if not vectors:
        return sympy.zeros(0, 0)
    A = vectors[0].parent
    return sympy.Matrix(A.rank, len(vectors), lambda a, c: QQ_I.to_sympy(vectors[c].component(a).evaluate(point)))


def _rank(vectors: Sequence[Multivector], point) -> int:
    return matrices.exact_rank(_vector_matrix(vectors, point)) if vectors else 0


class Subalgebroid:
    """Subbundle spanned by the columns of ``frame`` (m x k), with an optional annihilating coframe."""

    def __init__(self, ambient: Algebroid, frame, annihilator: Optional[Sequence[Form]] = None, name: str = "sub"):
        self.ambient = ambient
        self.frame = matrices.coerce_matrix(ambient.ring, frame)
        if self.frame.shape[0] != ambient.rank:
            raise PreconditionFailed(f"{name}: frame has {self.frame.shape[0]} rows, expected {ambient.rank}")
        self.annihilator = list(annihilator) if annihilator is not None else None
        self.name = name
        self._unit = matrices.unit_submatrix_rows(ambient.ring, self.frame)

    @property
    def sections(self) -> List[Multivector]:
        return _columns(self.ambient, self.frame)

    @property
    def symbolic(self) -> bool:
        return self._unit is not None

    def annihilating_forms(self) -> List[Form]:
        """The supplied annihilator, or one solved from a unit-determinant row block."""
        if self.annihilator is not None:
            return self.annihilator
        if self._unit is None:
            raise NoAnnihilator(f"{self.name}: no annihilator supplied and no unit-determinant row block")
        selection, inverse = self._unit
        A = self.ambient
        weights = matrices.matmul(A.ring, self.frame, inverse)  # row r: coefficients of e^r along e^{selection}
        forms = []
        for r in range(A.rank):
            if r in selection:
                continue
            coeffs = {(r,): A.ring.one}
            for j, s in enumerate(selection):
                if weights[r, j]:
                    coeffs[(s,)] = -weights[r, j]
            forms.append(Form(A, 1, coeffs))
        return forms

    def contains(self, vectors: Sequence[Multivector], count: Optional[int] = None,
                 seed: Optional[int] = None) -> Tuple[bool, str]:
        """Whether every vector lies in the span, with the method used."""
        vectors = [v for v in vectors if v]
        if not vectors:
            return True, "symbolic"
        A = self.ambient
        if self._unit is not None:
            selection, inverse = self._unit
            columns = self.sections
            for v in vectors:
                restricted = [v.component(s) for s in selection]
                residual = v
                for c, column in enumerate(columns):
                    weight = A.ring.zero
                    for j in range(len(selection)):
                        if inverse[c, j] and restricted[j]:
                            weight = weight + inverse[c, j] * restricted[j]
                    if weight:
                        residual = residual - column * weight
                if residual:
                    return False, "symbolic"
            return True, "symbolic"
        if self.annihilator is not None:
            ok = all(not pairing(alpha, v) for alpha in self.annihilator for v in vectors)
            return ok, "symbolic"
        columns = self.sections
        for point in _sample(A, count, seed):
            base = _rank(columns, point)
            if _rank(columns + list(vectors), point) != base:
                return False, "pointwise-certified"
        logger.warning(f"{self.name}: span membership certified at sample points only")
        return True, "pointwise-certified"

    def closure(self) -> Tuple[bool, str]:
        sections = self.sections
        brackets = [bracket_sections(self.ambient, s, t)
                    for i, s in enumerate(sections) for t in sections[i + 1:]]
        return self.contains(brackets)

    def is_invariant(self, J: Endo) -> bool:
        return self.contains([J.apply(s) for s in self.sections])[0]

    def __repr__(self):
        return f"Subalgebroid({self.name} of rank {self.frame.shape[1]} in {self.ambient.name})"


def graph(phi: Morphism, product: Optional[DirectProduct] = None) -> Tuple[DirectProduct, Subalgebroid]:
    """Graph of phi inside E1 x E2, with annihilator (-phi^* e'^b, e'^b)."""
    if phi.source.n or phi.target.n:
        raise PreconditionFailed("graphs are built for algebroids over a point")
    if not check_la_morphism(phi).ok:
        raise NotMorphism(f"{phi.name} is not a Lie algebroid morphism")
    product = product or direct_product(phi.source, phi.target)
    m1, m2 = phi.source.rank, phi.target.rank
    ring = product.ring
    frame = matrices.zeros(ring, m1 + m2, m1)
    for a in range(m1):
        frame[a, a] = ring.one
        for b in range(m2):
            frame[m1 + b, a] = product.embed(1, phi.matrix[b, a])
    annihilator = []
    for b in range(m2):
        coeffs = {(m1 + b,): ring.one}
        for a in range(m1):
            if phi.matrix[b, a]:
                coeffs[(a,)] = -product.embed(0, phi.matrix[b, a])
        annihilator.append(Form(product.total, 1, coeffs))
    sub = Subalgebroid(product.total, frame, annihilator, name=f"Graph({phi.name})")
    closed, _ = sub.closure()
    if not closed:
        raise InternalInconsistency(f"{sub.name} is not closed under the bracket although {phi.name} is a morphism")
    return product, sub


# --- coisotropic and Lagrangian subalgebroids ---

@dataclass
class CoisotropyReport:
    ok: bool
    invariant: bool
    method: str
    witness: Optional[Form] = None

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'invariant': self.invariant,
            'method': self.method,
            'witness': self.witness.to_text() if self.witness is not None else None,
        }


def is_coisotropic(sub: Subalgebroid, J: Endo, pi20: Multivector, strict: bool = False) -> CoisotropyReport:
    """J-invariance and pi20^#(Ann E'^{1,0}) inside E'^{1,0}."""
    make_ac_structure(sub.ambient, J)
    invariant = sub.is_invariant(J)
    if not invariant:
        if strict:
            raise PreconditionFailed(f"{sub.name} is not {J.name}-invariant")
        return CoisotropyReport(False, False, "symbolic")
    method = "symbolic"
    for alpha in sub.annihilating_forms():
        holomorphic = bigrade(J, alpha).get(1, 0, sub.ambient)
        if not holomorphic:
            continue
        ok, method = sub.contains([sharp(pi20, holomorphic)])
        if not ok:
            return CoisotropyReport(False, True, method, witness=alpha)
    return CoisotropyReport(True, True, method)


def _holomorphic_parts(J: Endo, vectors: Sequence[Multivector]) -> List[Multivector]:
    p10, _ = projectors(J)
    projector = Endo(J.parent, p10, name="P10")
    return [projector.apply(v) for v in vectors]


def is_lagrangian(sub: Subalgebroid, J: Endo, pi20: Multivector, count: Optional[int] = None,
                  seed: Optional[int] = None) -> CoisotropyReport:
    """pi20^#(Ann E'^{1,0}) equals E'^{1,0} intersected with the image of pi20^#, checked pointwise."""
    A = sub.ambient
    make_ac_structure(A, J)
    if not sub.is_invariant(J):
        return CoisotropyReport(False, False, "pointwise-certified")
    images = []
    for alpha in sub.annihilating_forms():
        holomorphic = bigrade(J, alpha).get(1, 0, A)
        if holomorphic:
            images.append(sharp(pi20, holomorphic))
    tangent = [v for v in _holomorphic_parts(J, sub.sections) if v]
    F = as_bisection(pi20)
    sharp_image = [Multivector(A, 1, {(a,): F.matrix[a, b] for a in range(A.rank)}) for b in range(A.rank)]
    sharp_image = [v for v in sharp_image if v]
    for point in _sample(A, count, seed):
        rank_tangent = _rank(tangent, point)
        rank_image = _rank(sharp_image, point)
        intersection = rank_tangent + rank_image - _rank(tangent + sharp_image, point)
        contained = _rank(tangent + images, point) == rank_tangent
        if not contained or _rank(images, point) != intersection:
            return CoisotropyReport(False, True, "pointwise-certified")
    return CoisotropyReport(True, True, "pointwise-certified")


# --- almost complex Poisson morphisms and the graph criterion ---

@dataclass
class ACPMorphismCheck:
    ok: bool
    almost_complex: bool
    related_on_forms: bool
    related_as_maps: bool

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'almost_complex': self.almost_complex,
            'related_on_forms': self.related_on_forms,
            'related_as_maps': self.related_as_maps,
        }


def _bivector_value(pi: Multivector, alpha: Form, beta: Form) -> Scalar:
    return pairing(wedge(alpha, beta), pi)


def is_acp_morphism(phi: Morphism, source_data: Tuple[Endo, Multivector],
                    target_data: Tuple[Endo, Multivector]) -> ACPMorphismCheck:
    J1, pi1 = source_data
    J2, pi2 = target_data
    almost_complex = check_ac_morphism(phi, J1, J2).ok
    coframes = pure_basis(J2, Form, 1, 0)
    on_forms = all(
        _bivector_value(pi1, phi.pullback(z), phi.pullback(w)) == _bivector_value(pi2, z, w)
        for i, z in enumerate(coframes) for w in coframes[i + 1:]
    )
    ring = phi.source.ring
    pushed = matrices.matmul(ring, matrices.matmul(ring, phi.matrix, as_bisection(pi1).matrix),
                             matrices.transpose(phi.matrix))
    as_maps = matrices.equal(pushed, as_bisection(pi2).matrix)
    if almost_complex and on_forms != as_maps:
        raise InternalInconsistency(
            f"{phi.name}: Poisson-relatedness on (1,0)-forms gives {on_forms}, as maps gives {as_maps}")
    ok = almost_complex and as_maps
    logger.info(f"{phi.name}: almost complex Poisson morphism = {ok}")
    return ACPMorphismCheck(ok, almost_complex, on_forms, as_maps)


@dataclass
class GraphTheoremReport:
    morphism: ACPMorphismCheck
    coisotropy: CoisotropyReport
    witness: Optional[Form] = field(default=None)

    @property
    def agree(self) -> bool:
        return self.morphism.ok == self.coisotropy.ok

    def to_dict(self) -> dict:
        return {
            'agree': self.agree,
            'acp_morphism': self.morphism.to_dict(),
            'coisotropic_graph': self.coisotropy.to_dict(),
            'witness': self.witness.to_text() if self.witness is not None else None,
        }


def graph_theorem_check(phi: Morphism, source_data: Tuple[Endo, Multivector],
                        target_data: Tuple[Endo, Multivector]) -> GraphTheoremReport:
    """phi is an ACP morphism iff its graph is coisotropic for (J1 + J2, pi1 - pi2)."""
    J1, pi1 = source_data
    J2, pi2 = target_data
    morphism = is_acp_morphism(phi, source_data, target_data)
    product, sub = graph(phi)
    J = product.endo(J1, J2)
    pi = product.bivector(pi1, -pi2)
    coisotropy = is_coisotropic(sub, J, pi)
    report = GraphTheoremReport(morphism, coisotropy, coisotropy.witness)
    if not report.agree:
        logger.warning(f"{phi.name}: ACP morphism = {morphism.ok} but coisotropic graph = {coisotropy.ok}")
    return report
