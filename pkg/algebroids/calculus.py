"""Exterior differential, brackets and Lie derivatives of a Lie algebroid."""
import logging
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .algebroid import Algebroid
from .errors import ParentMismatch, ShapeMismatch
from .scalars import Scalar
from .tensors import Form, Index, Multivector, Tensor, interior, wedge

logger = logging.getLogger(__name__)


def _check_parent(A: Algebroid, *tensors: Tensor):
    for tensor in tensors:
        if tensor.parent is not A:
            raise ParentMismatch(f"{tensor.kind} does not live over {A.name}")


def anchor_apply(A: Algebroid, s: Multivector, f: Scalar) -> Scalar:
    """rho(s)f."""
    if s.degree != 1 and s.coeffs:
        raise ShapeMismatch(f"the anchor acts on sections, got degree {s.degree}")
    total = A.ring.zero
    for (a,), coeff in s.coeffs.items():
        derivative = A.rho(a, f)
        if derivative:
            total = total + coeff * derivative
    return total


def chevalley_eilenberg(ring, rank: int, degree: int, coefficient: Callable[[Index], Scalar],
                        rho: Callable[[int, Scalar], Scalar],
                        bracket: Callable[[int, int], Dict[int, Scalar]]) -> Dict[Index, Scalar]:
    """Components of the differential of a cochain given on frame tuples.

    ``coefficient(I)`` is the cochain on the sorted frame tuple I, ``rho(a, f)`` the anchor of the
    a-th frame element and ``bracket(a, b)`` the sparse components of the bracket of two frame elements.
    """
    out: Dict[Index, Scalar] = {}
    if degree + 1 > rank:
        return out

    def value(indices: Sequence[int]) -> Scalar:
        items = list(indices)
        if len(set(items)) != len(items):
            return ring.zero
        sign = 1
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if items[i] > items[j]:
                    sign = -sign
        v = coefficient(tuple(sorted(items)))
        return v if sign > 0 else -v

    for K in combinations(range(rank), degree + 1):
        total = ring.zero
        for i, a in enumerate(K):
            rest = K[:i] + K[i + 1:]
            term = rho(a, coefficient(rest))
            if term:
                total = total + (term if i % 2 == 0 else -term)
        for i in range(len(K)):
            for j in range(i + 1, len(K)):
                rest = K[:i] + K[i + 1:j] + K[j + 1:]
                for c, coeff in bracket(K[i], K[j]).items():
                    v = value((c,) + rest)
                    if v:
                        term = coeff * v
                        total = total + (term if (i + j) % 2 == 0 else -term)
        if total:
            out[K] = total
    return out


def _frame_bracket_components(A: Algebroid, a: int, b: int) -> Dict[int, Scalar]:
    key = ('frame', a, b)
    cached = A.cache.get(key)
    if cached is None:
        cached = {c: A.structure[a, b, c] for c in range(A.rank) if A.structure[a, b, c]}
        A.cache[key] = cached
    return cached


def d_e(A: Algebroid, omega: Union[Form, Scalar]) -> Form:
    """The differential d_E of a form (or of a function, as a degree-0 form)."""
    if not isinstance(omega, Form):
        omega = Form.scalar(A, omega)
    _check_parent(A, omega)
    p = omega.degree
    zero = A.ring.zero
    coeffs = chevalley_eilenberg(
        A.ring, A.rank, p,
        lambda I: omega.coeffs.get(I, zero),
        A.rho,
        lambda a, b: _frame_bracket_components(A, a, b),
    )
    return Form(A, p + 1, coeffs)


def bracket_sections(A: Algebroid, s: Multivector, t: Multivector) -> Multivector:
    """[s, t]_E for sections."""
    _check_parent(A, s, t)
    for section in (s, t):
        if section.degree != 1 and section.coeffs:
            raise ShapeMismatch(f"bracket_sections takes sections, got degree {section.degree}")
    out: Dict[Index, Scalar] = {}

    def accumulate(c: int, value: Scalar):
        if value:
            key = (c,)
            out[key] = out[key] + value if key in out else value

    for (a,), sa in s.coeffs.items():
        for (b,), tb in t.coeffs.items():
            product = sa * tb
            for c, coeff in _frame_bracket_components(A, a, b).items():
                accumulate(c, product * coeff)
            accumulate(b, sa * A.rho(a, tb))
            accumulate(a, -(tb * A.rho(b, sa)))
    return Multivector(A, 1, out)


def _basis_multivector(A: Algebroid, index: Index) -> Multivector:
    return Multivector(A, len(index), {index: A.ring.one})


def frame_schouten(A: Algebroid, I: Index, K: Index) -> Multivector:
    """[e_I, e_K] for frame multivectors, memoized on the algebroid."""
    key = ('schouten', I, K)
    cached = A.cache.get(key)
    if cached is not None:
        return cached
    degree = len(I) + len(K) - 1
    result = Multivector(A, max(degree, 0))
    if I and K:
        for i, a in enumerate(I):
            left_rest = _basis_multivector(A, I[:i] + I[i + 1:])
            for j, b in enumerate(K):
                components = _frame_bracket_components(A, a, b)
                if not components:
                    continue
                right_rest = _basis_multivector(A, K[:j] + K[j + 1:])
                ab = Multivector(A, 1, {(c,): v for c, v in components.items()})
                term = wedge(wedge(ab, left_rest), right_rest)
                result = result + (term if (i + j) % 2 == 0 else -term)
    A.cache[key] = result
    return result


def _contract_differential(A: Algebroid, f: Scalar, I: Index) -> Multivector:
    """iota_{d_E f} e_I."""
    out: Dict[Index, Scalar] = {}
    for j, a in enumerate(I):
        value = A.rho(a, f)
        if value:
            rest = I[:j] + I[j + 1:]
            out[rest] = -value if j % 2 else value
    return Multivector(A, max(len(I) - 1, 0), out)


def schouten(A: Algebroid, S: Union[Multivector, Scalar], T: Union[Multivector, Scalar]) -> Multivector:
    """Schouten-Nijenhuis bracket [S, T]_E, extended to functions in either slot."""
    if not isinstance(S, Multivector):
        S = Multivector.scalar(A, S)
    if not isinstance(T, Multivector):
        T = Multivector.scalar(A, T)
    _check_parent(A, S, T)
    p, q = S.degree, T.degree
    result = Multivector(A, max(p + q - 1, 0))
    sign_left = 1 if p % 2 == 1 else -1          # (-1)^(p-1)
    sign_right = 1 if (p * (q - 1)) % 2 == 0 else -1  # (-1)^(p(q-1))
    for I, f in S.coeffs.items():
        for K, g in T.coeffs.items():
            if I and K:
                bracket = frame_schouten(A, I, K)
                if bracket:
                    result = result + bracket * (f * g)
            if I:
                contracted = _contract_differential(A, g, I)
                if contracted:
                    term = wedge(contracted, _basis_multivector(A, K)) * f
                    result = result + (term if sign_left > 0 else -term)
            if K:
                contracted = _contract_differential(A, f, K)
                if contracted:
                    term = wedge(contracted, _basis_multivector(A, I)) * g
                    result = result - (term if sign_right > 0 else -term)
    return result


def lie_derivative(A: Algebroid, s: Multivector, X: Union[Form, Multivector]) -> Union[Form, Multivector]:
    """L_s X: Cartan's formula on forms, the Schouten bracket [s, X] on multivectors."""
    _check_parent(A, s, X)
    if s.degree != 1 and s.coeffs:
        raise ShapeMismatch(f"Lie derivative along a degree-{s.degree} multivector")
    if isinstance(X, Multivector):
        return schouten(A, s, X)
    first = interior(s, d_e(A, X))
    if X.degree == 0:
        return first
    return first + d_e(A, interior(s, X))


def anchor_homomorphism_residuals(A: Algebroid, s: Multivector, t: Multivector) -> List[Scalar]:
    """rho([s,t]) - [rho(s), rho(t)] applied to each coordinate function."""
    bracket = bracket_sections(A, s, t)
    residuals = []
    for name in A.ring.coordinates:
        x = A.ring.variable(name)
        lhs = anchor_apply(A, bracket, x)
        rhs = anchor_apply(A, s, anchor_apply(A, t, x)) - anchor_apply(A, t, anchor_apply(A, s, x))
        residuals.append(lhs - rhs)
    return residuals


def frame_sections(A: Algebroid) -> List[Multivector]:
    return [_basis_multivector(A, (a,)) for a in range(A.rank)]


def coframe_forms(A: Algebroid) -> List[Form]:
    return [Form(A, 1, {(a,): A.ring.one}) for a in range(A.rank)]


def basis_tensor(A: Algebroid, kind, index: Sequence[int]) -> Tensor:
    return kind.basis(A, index)


def is_closed(A: Algebroid, omega: Form) -> bool:
    return d_e(A, omega).is_zero()


def bracket_table(A: Algebroid, sections: Optional[Sequence[Multivector]] = None) -> Dict[Tuple[int, int], Multivector]:
    sections = list(sections) if sections is not None else frame_sections(A)
    return {(a, b): bracket_sections(A, sections[a], sections[b])
            for a in range(len(sections)) for b in range(a + 1, len(sections))}


# --- graded identities of the Schouten bracket ---

def _graded(value: Multivector, exponent: int) -> Multivector:
    return -value if exponent % 2 else value


def schouten_skew_residual(A: Algebroid, S: Multivector, T: Multivector) -> Multivector:
    """[S,T] + (-1)^((p-1)(q-1)) [T,S]."""
    p, q = S.degree, T.degree
    return schouten(A, S, T) + _graded(schouten(A, T, S), (p - 1) * (q - 1))


def schouten_leibniz_residual(A: Algebroid, S: Multivector, T: Multivector, U: Multivector) -> Multivector:
    """[S, T^U] - [S,T]^U - (-1)^((p-1)q) T^[S,U]."""
    p, q = S.degree, T.degree
    return (schouten(A, S, wedge(T, U)) - wedge(schouten(A, S, T), U)
            - _graded(wedge(T, schouten(A, S, U)), (p - 1) * q))


def schouten_jacobi_residual(A: Algebroid, S: Multivector, T: Multivector, U: Multivector) -> Multivector:
    """Graded cyclic sum of [S,[T,U]] with signs (-1)^((p-1)(r-1)) and cyclic."""
    p, q, r = S.degree, T.degree, U.degree
    return (_graded(schouten(A, S, schouten(A, T, U)), (p - 1) * (r - 1))
            + _graded(schouten(A, T, schouten(A, U, S)), (q - 1) * (p - 1))
            + _graded(schouten(A, U, schouten(A, S, T)), (r - 1) * (q - 1)))
