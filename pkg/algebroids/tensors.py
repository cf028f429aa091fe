"""Sparse skew tensors over an algebroid frame: multivectors and forms."""
import logging
from itertools import combinations
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import ParentMismatch, ShapeMismatch
from .scalars import Scalar

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]


class SkewTensor:
    """Coefficients keyed by strictly increasing 0-based index tuples."""
    __slots__ = ('parent', 'degree', 'coeffs')
    kind = "tensor"

    def __init__(self, parent, degree: int, coeffs: Optional[Mapping[Index, Scalar]] = None):
        self.parent = parent
        self.degree = degree
        self.coeffs: Dict[Index, Scalar] = {}
        if coeffs:
            for index, value in coeffs.items():
                if len(index) != degree:
                    raise ShapeMismatch(f"index {index} in a degree-{degree} {self.kind}")
                value = parent.ring.coerce(value)
                if value:
                    self.coeffs[tuple(index)] = value

    # --- construction helpers ---

    @classmethod
    def zero(cls, parent, degree: int):
        return cls(parent, degree)

    @classmethod
    def scalar(cls, parent, value):
        return cls(parent, 0, {(): value})

    @classmethod
    def basis(cls, parent, indices: Sequence[int], coeff=1):
        """The element coeff * e_{i1} ^ ... in the given (unsorted) index order."""
        sign, ordered = _sort_with_sign(indices)
        if sign == 0:
            return cls(parent, len(indices))
        return cls(parent, len(indices), {ordered: parent.ring.coerce(coeff) * sign})

    @classmethod
    def from_components(cls, parent, components: Sequence[object]):
        """Degree-1 tensor from a list of m components."""
        return cls(parent, 1, {(a,): value for a, value in enumerate(components)})

    def _new(self, degree: int, coeffs: Dict[Index, Scalar]):
        out = self.__class__.__new__(self.__class__)
        out.parent = self.parent
        out.degree = degree
        out.coeffs = {k: v for k, v in coeffs.items() if v}
        return out

    def _check(self, other: 'SkewTensor'):
        if type(other) is not type(self):
            raise ParentMismatch(f"cannot combine a {self.kind} with a {other.kind}")
        if other.parent is not self.parent:
            raise ParentMismatch(f"{self.kind}s over different algebroids")
        if other.degree != self.degree and self.coeffs and other.coeffs:
            raise ShapeMismatch(f"degree {self.degree} vs degree {other.degree}")

    # --- vector space structure ---

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for index, value in other.coeffs.items():
            out[index] = out[index] + value if index in out else value
        degree = self.degree if self.coeffs else other.degree
        return self._new(degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, factor):
        """Multiplication by a function or a number."""
        if isinstance(factor, SkewTensor):
            raise TypeError("use wedge() for products of tensors")
        return self._new(self.degree, {k: v * factor for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SkewTensor) or type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.degree == other.degree or not self.coeffs)

    def __hash__(self):
        return hash((self.kind, self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def items(self) -> Iterator[Tuple[Index, Scalar]]:
        return iter(sorted(self.coeffs.items()))

    def get(self, index: Sequence[int]) -> Scalar:
        sign, ordered = _sort_with_sign(index)
        if sign == 0:
            return self.parent.ring.zero
        value = self.coeffs.get(ordered)
        if value is None:
            return self.parent.ring.zero
        return value if sign > 0 else -value

    def component(self, a: int) -> Scalar:
        return self.get((a,))

    def components(self):
        return [self.component(a) for a in range(self.parent.rank)]

    def to_scalar(self) -> Scalar:
        if self.degree != 0 and self.coeffs:
            raise ShapeMismatch(f"degree-{self.degree} {self.kind} is not a function")
        return self.coeffs.get((), self.parent.ring.zero)

    def conjugate(self):
        return self._new(self.degree, {k: v.conjugate() for k, v in self.coeffs.items()})

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.coeffs.values())

    def map_coefficients(self, fn):
        return self._new(self.degree, {k: fn(v) for k, v in self.coeffs.items()})

    # --- text ---

    def _basis_text(self, index: Index) -> str:
        raise NotImplementedError

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for index, value in self.items():
            basis = self._basis_text(index)
            if not index:
                piece = value.to_text()
            elif value == 1:
                piece = basis
            elif value == -1:
                piece = f"-{basis}"
            elif len(value.poly) == 1:
                piece = f"{value.to_text()}*{basis}"
            else:
                piece = f"({value.to_text()})*{basis}"
            if parts and piece.startswith("-"):
                parts.append(f" - {piece[1:]}")
            elif parts:
                parts.append(f" + {piece}")
            else:
                parts.append(piece)
        return "".join(parts)

    def to_dict(self) -> list:
        return [{'indices': [a + 1 for a in index], 'coeff': value.to_text()} for index, value in self.items()]

    def __repr__(self):
        return f"{self.kind}[{self.degree}]({self.to_text()})"


class Multivector(SkewTensor):
    """Element of Gamma(wedge^p E), possibly with complex coefficients."""
    __slots__ = ()
    kind = "multivector"

    def _basis_text(self, index: Index) -> str:
        return "^".join(f"e{a + 1}" for a in index)


class Form(SkewTensor):
    """Element of Omega^p(E)."""
    __slots__ = ()
    kind = "form"

    def _basis_text(self, index: Index) -> str:
        return "^".join(f"e^{a + 1}" for a in index)


Tensor = Union[Multivector, Form]


def _sort_with_sign(indices: Sequence[int]) -> Tuple[int, Index]:
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign, tuple(sorted(items))


def merge_sign(left: Index, right: Index) -> int:
    """Sign of e_left ^ e_right relative to the sorted union; 0 on overlap."""
    if set(left) & set(right):
        return 0
    inversions = 0
    for a in left:
        for b in right:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


def wedge(S: Tensor, T: Tensor) -> Tensor:
    if type(S) is not type(T):
        raise ParentMismatch(f"cannot wedge a {S.kind} with a {T.kind}")
    if S.parent is not T.parent:
        raise ParentMismatch("wedge of tensors over different algebroids")
    degree = S.degree + T.degree
    out: Dict[Index, Scalar] = {}
    for I, s in S.coeffs.items():
        for K, t in T.coeffs.items():
            sign = merge_sign(I, K)
            if sign == 0:
                continue
            index = tuple(sorted(I + K))
            value = s * t
            if sign < 0:
                value = -value
            out[index] = out[index] + value if index in out else value
    return S._new(degree, out)


def wedge_all(factors: Sequence[Tensor]) -> Tensor:
    result = factors[0]
    for factor in factors[1:]:
        result = wedge(result, factor)
    return result


def interior(x: Tensor, y: Tensor) -> Tensor:
    """Contraction of a degree-1 tensor of the opposite kind into the first slot of y."""
    if type(x) is type(y):
        raise ParentMismatch("interior product needs a form and a multivector")
    if x.parent is not y.parent:
        raise ParentMismatch("interior product of tensors over different algebroids")
    if x.degree != 1 and x.coeffs:
        raise ShapeMismatch(f"interior product by a degree-{x.degree} tensor")
    if y.degree == 0:
        return y._new(0, {})
    out: Dict[Index, Scalar] = {}
    for I, value in y.coeffs.items():
        for j, a in enumerate(I):
            xa = x.coeffs.get((a,))
            if xa is None:
                continue
            rest = I[:j] + I[j + 1:]
            term = xa * value
            if j % 2:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return y._new(y.degree - 1, out)


def pairing(omega: Form, S: Multivector) -> Scalar:
    """Full contraction, normalized so that <e^1 ^ e^2, e1 ^ e2> = 1."""
    if not isinstance(omega, Form) or not isinstance(S, Multivector):
        raise ParentMismatch("pairing takes a form and a multivector")
    if omega.parent is not S.parent:
        raise ParentMismatch("pairing of tensors over different algebroids")
    ring = omega.parent.ring
    if omega.degree != S.degree and omega.coeffs and S.coeffs:
        raise ShapeMismatch(f"pairing of degree {omega.degree} with degree {S.degree}")
    total = ring.zero
    small, large = (omega.coeffs, S.coeffs) if len(omega.coeffs) <= len(S.coeffs) else (S.coeffs, omega.coeffs)
    for index, value in small.items():
        other = large.get(index)
        if other is not None:
            total = total + value * other
    return total


def evaluate_form(omega: Form, sections: Sequence[Multivector]) -> Scalar:
    """omega(s_1, ..., s_p)."""
    if len(sections) != omega.degree:
        raise ShapeMismatch(f"a degree-{omega.degree} form takes {omega.degree} sections")
    if not sections:
        return omega.to_scalar()
    return pairing(omega, wedge_all(list(sections)))


def frame(parent, a: int) -> Multivector:
    return Multivector(parent, 1, {(a,): parent.ring.one})


def coframe(parent, a: int) -> Form:
    return Form(parent, 1, {(a,): parent.ring.one})


def basis_indices(m: int, degree: int) -> Iterable[Index]:
    return combinations(range(m), degree)


def as_multivector(parent, value) -> Multivector:
    if isinstance(value, Multivector):
        return value
    return Multivector.scalar(parent, value)


def as_form(parent, value) -> Form:
    if isinstance(value, Form):
        return value
    return Form.scalar(parent, value)


def transport(tensor: Tensor, parent, kind=None) -> Tensor:
    """Same index data over another algebroid with the same ring, optionally switching kind."""
    cls = kind or type(tensor)
    out = cls.__new__(cls)
    out.parent = parent
    out.degree = tensor.degree
    out.coeffs = dict(tensor.coeffs)
    return out
