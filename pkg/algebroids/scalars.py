"""Exact coefficient arithmetic.

Multivariate polynomials over the Gaussian rationals, held in sympy's sparse
polynomial rings and kept in canonical form modulo substitution relations of
the shape ``v^2 = r``.
"""
import logging
import random
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.orderings import MonomialOrder
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, ring as polynomial_ring

from .errors import (
    NonTerminatingRelationSet,
    ParentMismatch,
    ParseError,
    RelationViolatedAtPoint,
    UnknownVariable,
    UnsupportedRelation,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
RawPolynomial = Mapping[Monomial, GaussianRational]
_IDENTIFIER = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')

ZERO = QQ_I.zero
ONE = QQ_I.one
MINUS_ONE = -QQ_I.one


def gaussian(value) -> GaussianRational:
    """Coerce an int, a rational or a sympy number into Q(i)."""
    try:
        return QQ_I.convert(value)
    except CoercionFailed as e:
        raise TypeError(f"cannot convert {value!r} to a Gaussian rational") from e


def gaussian_from_sympy(value, source: str = "") -> GaussianRational:
    """Convert a sympy number with rational real and imaginary parts."""
    try:
        return QQ_I.from_sympy(sympy.expand(sympy.nsimplify(value)))
    except (CoercionFailed, TypeError, ValueError) as e:
        raise ParseError(f"coefficient {value} of '{source}' is not in Q(i)", detail=source) from e


def conjugate_coefficient(c: GaussianRational) -> GaussianRational:
    return QQ_I.new(c.x, -c.y)


def coefficient_text(c: GaussianRational) -> str:
    re_part, im_part = c.x, c.y
    if not im_part:
        return str(re_part)
    if not re_part:
        if im_part == 1:
            return "i"
        if im_part == -1:
            return "-i"
        return f"{im_part}*i"
    if im_part == 1:
        return f"({re_part}+i)"
    if im_part == -1:
        return f"({re_part}-i)"
    if im_part < 0:
        return f"({re_part}-{-im_part}*i)"
    return f"({re_part}+{im_part}*i)"


def _format_terms(coordinates: Sequence[str], terms: RawPolynomial) -> str:
    if not terms:
        return "0"
    ordered = sorted(terms, key=lambda m: (sum(m), m), reverse=True)
    pieces: List[str] = []
    for mono in ordered:
        coeff = terms[mono]
        factors = []
        for name, exp in zip(coordinates, mono):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        body = "*".join(factors)
        if not body:
            piece = coefficient_text(coeff)
        elif coeff == ONE:
            piece = body
        elif coeff == MINUS_ONE:
            piece = f"-{body}"
        else:
            piece = f"{coefficient_text(coeff)}*{body}"
        if not pieces:
            pieces.append(piece)
        elif piece.startswith("-"):
            pieces.append(f" - {piece[1:]}")
        else:
            pieces.append(f" + {piece}")
    return "".join(pieces)


class RelationOrder(MonomialOrder):
    """Degree in the eliminated coordinates, then total degree, then grevlex.

    Every relation ``v^2 - r`` with ``r`` at most linear in the eliminated
    coordinates leads with ``v^2``, and those leading monomials are pairwise
    coprime, so the relations form a Groebner basis under this order.
    """
    alias = 'relgrevlex'
    is_global = True

    def __init__(self, eliminated: Iterable[int] = ()):
        self.eliminated = tuple(sorted(eliminated))

    def __call__(self, monomial):
        return (sum(monomial[k] for k in self.eliminated), sum(monomial),
                tuple(reversed([-m for m in monomial])))

    def __eq__(self, other):
        return isinstance(other, RelationOrder) and self.eliminated == other.eliminated

    def __hash__(self):
        return hash((RelationOrder, self.eliminated))

    def __repr__(self):
        return f"RelationOrder({list(self.eliminated)})"


class CoordinateRing:
    """Polynomials over Q(i) in named coordinates, modulo ``v^2 = r`` relations."""

    def __init__(self, coordinates: Sequence[str], relations: Sequence[Union[str, RawPolynomial]] = ()):
        names = tuple(coordinates)
        for name in names:
            if not _IDENTIFIER.match(name) or name == "i":
                raise ParseError(f"invalid coordinate name '{name}'", detail=name)
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate coordinate names in {list(names)}", detail=names)
        self.coordinates = names
        self._index = {name: k for k, name in enumerate(names)}
        self._zero_mono: Monomial = (0,) * len(names)
        self._symbols = tuple(sympy.Symbol(name) for name in names)
        self._parser, *_ = polynomial_ring(self._symbols, QQ_I, RelationOrder())

        self._rules: Dict[int, Dict[Monomial, GaussianRational]] = {}
        raws: List[Dict[Monomial, GaussianRational]] = []
        for relation in relations:
            if isinstance(relation, str):
                raw = self.parse_raw(relation)
            else:
                raw = {m: gaussian(c) for m, c in relation.items() if c}
            var, rule = self._split_relation(raw)
            self._rules[var] = rule
            raws.append(raw)
        self._check_termination()

        self.poly_ring, *_ = polynomial_ring(self._symbols, QQ_I, RelationOrder(self._rules))
        self.relations: List[PolyElement] = [self.poly_ring.from_dict(raw) for raw in raws]

    # --- construction ---

    def _split_relation(self, raw: Dict[Monomial, GaussianRational]) -> Tuple[int, Dict[Monomial, GaussianRational]]:
        candidates = []
        for k in range(len(self.coordinates)):
            square = tuple(2 if j == k else 0 for j in range(len(self.coordinates)))
            if k in self._rules or not raw.get(square):
                continue
            if all(m == square or m[k] < 2 for m in raw):
                candidates.append((k, square))
        if not candidates:
            text = _format_terms(self.coordinates, raw)
            raise UnsupportedRelation(f"relation '{text}' is not of the form v^2 - r", detail=text)
        var, square = candidates[-1]
        lead = raw[square]
        rule = {m: -c / lead for m, c in raw.items() if m != square}
        logger.debug(f"relation eliminates {self.coordinates[var]}^2")
        return var, rule

    def _check_termination(self):
        distinguished = set(self._rules)
        for var, rule in self._rules.items():
            for mono in rule:
                if sum(mono[k] for k in distinguished) > 1:
                    name = self.coordinates[var]
                    raise NonTerminatingRelationSet(
                        f"substitution for {name}^2 reintroduces eliminated powers", detail=name)

    # --- reduction ---

    @property
    def has_relations(self) -> bool:
        return bool(self._rules)

    def lift(self, terms: Union[PolyElement, RawPolynomial]) -> PolyElement:
        """The polynomial with these terms in ``poly_ring``, unreduced."""
        if isinstance(terms, PolyElement) and terms.ring is self.poly_ring:
            return terms
        return self.poly_ring.from_dict(dict(terms))

    def reduce(self, poly: PolyElement) -> PolyElement:
        if not self.relations or not poly:
            return poly
        return poly.rem(self.relations)

    # --- element constructors ---

    @property
    def zero(self) -> 'Scalar':
        return Scalar(self, self.poly_ring.zero, normal=True)

    @property
    def one(self) -> 'Scalar':
        return Scalar(self, self.poly_ring.one, normal=True)

    def constant(self, value) -> 'Scalar':
        return Scalar(self, self.poly_ring.ground_new(gaussian(value)), normal=True)

    def variable(self, name: str) -> 'Scalar':
        return Scalar(self, self.poly_ring.gens[self.index_of(name)])

    def from_poly(self, poly: Union[PolyElement, RawPolynomial]) -> 'Scalar':
        return Scalar(self, self.lift(poly))

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise UnknownVariable(f"unknown coordinate '{name}'", detail=name)
        return self._index[name]

    def coerce(self, value) -> 'Scalar':
        if isinstance(value, Scalar):
            if value.ring is not self and value.ring != self:
                raise ParentMismatch("scalars live in different coordinate rings")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    # --- text ---

    def parse_raw(self, text) -> Dict[Monomial, GaussianRational]:
        """Parse the polynomial text syntax without reducing."""
        if isinstance(text, bool):
            raise ParseError(f"not a polynomial: {text!r}", detail=text)
        if isinstance(text, int):
            return dict(self._parser.ground_new(text))
        if not isinstance(text, str) or not text.strip():
            raise ParseError(f"not a polynomial: {text!r}", detail=text)
        local = dict(zip(self.coordinates, self._symbols))
        local['i'] = sympy.I
        try:
            expr = parse_expr(text.replace('^', '**'), local_dict=local,
                              transformations=standard_transformations)
            expr = sympy.expand(sympy.sympify(expr))
        except Exception as e:
            raise ParseError(f"cannot parse polynomial '{text}': {e}", detail=text) from e
        unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in self._index)
        if unknown:
            raise UnknownVariable(f"unknown variable(s) {unknown} in '{text}'", detail=unknown)
        try:
            return dict(self._parser.from_expr(expr))
        except ValueError as e:
            raise ParseError(f"'{text}' is not a polynomial over Q(i): {e}", detail=text) from e

    def parse(self, text) -> 'Scalar':
        return self.from_poly(self.parse_raw(text))

    def format_raw(self, terms: RawPolynomial) -> str:
        return _format_terms(self.coordinates, terms)

    # --- embeddings ---

    def embed_raw(self, raw: RawPolynomial, positions: Sequence[int]) -> Dict[Monomial, GaussianRational]:
        out = {}
        for mono, coeff in raw.items():
            new = [0] * len(self.coordinates)
            for k, exp in enumerate(mono):
                new[positions[k]] = exp
            out[tuple(new)] = coeff
        return out

    def embed(self, scalar: 'Scalar', positions: Sequence[int]) -> 'Scalar':
        """Move a scalar of another ring into this one, coordinate k going to ``positions[k]``."""
        return self.from_poly(self.embed_raw(scalar.poly, positions))

    def relation_derivative(self, relation: Union[PolyElement, RawPolynomial], k: int) -> 'Scalar':
        """Partial derivative of a relation polynomial, reduced."""
        return Scalar(self, self.lift(relation).diff(k))

    # --- points ---

    def _evaluate(self, terms: RawPolynomial, values: Sequence[GaussianRational]) -> GaussianRational:
        total = ZERO
        for mono, coeff in terms.items():
            value = coeff
            for v, exp in zip(values, mono):
                if exp:
                    value = value * v ** exp
            total = total + value
        return total

    def check_point(self, point: Mapping[str, object]) -> List[GaussianRational]:
        """Coordinate values of a point in ring order, after checking every relation."""
        values = []
        for name in self.coordinates:
            if name not in point:
                raise RelationViolatedAtPoint(f"point does not assign '{name}'", detail=name)
            values.append(gaussian(point[name]))
        for raw in self.relations:
            if self._evaluate(raw, values):
                text = self.format_raw(raw)
                raise RelationViolatedAtPoint(f"point violates relation '{text} = 0'", detail=text)
        return values

    def sample_points(self, count: int, rng: random.Random) -> List[Dict[str, GaussianRational]]:
        """Exact rational points satisfying every relation."""
        spheres = []
        used = set()
        for var, rule in self._rules.items():
            members = self._sphere_members(var, rule)
            if members is None or used & set(members):
                raise UnsupportedRelation(
                    f"no rational parametrization for the relation of {self.coordinates[var]}")
            spheres.append((var, members))
            used.update(members)
            used.add(var)
        points = []
        for _ in range(count):
            point = {}
            for k, name in enumerate(self.coordinates):
                if k not in used:
                    point[name] = QQ_I(_random_fraction(rng), 0)
            for var, members in spheres:
                w = [_random_fraction(rng) for _ in members]
                s = sum((x * x for x in w), QQ.zero)
                for k, wk in zip(members, w):
                    point[self.coordinates[k]] = QQ_I(2 * wk / (1 + s), 0)
                point[self.coordinates[var]] = QQ_I((s - 1) / (1 + s), 0)
            points.append(point)
        return points

    def _sphere_members(self, var: int, rule: Dict[Monomial, GaussianRational]) -> Optional[List[int]]:
        if rule.get(self._zero_mono) != ONE:
            return None
        members = []
        for mono, coeff in rule.items():
            if mono == self._zero_mono:
                continue
            if coeff != MINUS_ONE or sum(mono) != 2 or max(mono) != 2:
                return None
            members.append(mono.index(2))
        return sorted(members)

    def __eq__(self, other):
        if not isinstance(other, CoordinateRing):
            return NotImplemented
        return self.coordinates == other.coordinates and self._rules == other._rules

    def __hash__(self):
        return hash(self.coordinates)

    def __repr__(self):
        rels = ", ".join(self.format_raw(r) for r in self.relations)
        return f"CoordinateRing({list(self.coordinates)}; relations=[{rels}])"


def _random_fraction(rng: random.Random):
    return QQ(rng.randint(-9, 9), rng.randint(1, 9))


class Scalar:
    """A polynomial in normal form; immutable.

    ``poly`` is a sympy ``PolyElement`` of ``ring.poly_ring``. PolyElements are
    mutable dicts, so nothing here writes into one after construction.
    """
    __slots__ = ('ring', 'poly')

    def __init__(self, ring: CoordinateRing, poly: Union[PolyElement, RawPolynomial], normal: bool = False):
        poly = ring.lift(poly)
        self.ring = ring
        self.poly = poly if normal else ring.reduce(poly)

    def _other(self, other) -> 'Scalar':
        if isinstance(other, Scalar):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ParentMismatch("scalars live in different coordinate rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._other(other)
        return Scalar(self.ring, self.poly + self.ring.lift(other.poly), normal=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, -self.poly, normal=True)

    def __sub__(self, other):
        other = self._other(other)
        return Scalar(self.ring, self.poly - self.ring.lift(other.poly), normal=True)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                value = gaussian(other)
            except TypeError:
                return NotImplemented
            return Scalar(self.ring, self.poly.mul_ground(value), normal=True)
        other = self._other(other)
        if not self.poly or not other.poly:
            return self.ring.zero
        return Scalar(self.ring, self.poly * self.ring.lift(other.poly))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (ONE / gaussian(other))

    def __pow__(self, exponent: int):
        result = self.ring.one
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, k: int) -> 'Scalar':
        """Partial derivative of the normal form along coordinate k."""
        return Scalar(self.ring, self.poly.diff(k), normal=True)

    def conjugate(self) -> 'Scalar':
        terms = {m: conjugate_coefficient(c) for m, c in self.poly.items()}
        return Scalar(self.ring, self.ring.poly_ring.from_dict(terms), normal=True)

    def evaluate(self, point: Mapping[str, object]) -> GaussianRational:
        return self.ring._evaluate(self.poly, self.ring.check_point(point))

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.poly)

    def constant_value(self) -> GaussianRational:
        return self.poly.get(self.ring._zero_mono, ZERO)

    def is_real(self) -> bool:
        return all(not c.y for c in self.poly.values())

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return dict.__eq__(self.poly, other.poly)
        try:
            value = gaussian(other)
        except TypeError:
            return NotImplemented
        return dict.__eq__(self.poly, self.ring.poly_ring.ground_new(value))

    def __hash__(self):
        return hash(frozenset(self.poly.items()))

    def to_text(self) -> str:
        return _format_terms(self.ring.coordinates, self.poly)

    def __repr__(self):
        return self.to_text()


def poly_reduce(raw, ring: CoordinateRing) -> Scalar:
    """Normal form of a raw polynomial (text or monomial map)."""
    if isinstance(raw, Mapping):
        for mono in raw:
            if len(mono) != len(ring.coordinates):
                raise UnknownVariable(f"monomial {mono} does not match {list(ring.coordinates)}")
        return ring.from_poly(raw)
    return ring.parse(raw)


def poly_eval(p: Scalar, point: Mapping[str, object]) -> GaussianRational:
    return p.evaluate(point)


def poly_conjugate(p: Scalar) -> Scalar:
    return p.conjugate()


def sum_scalars(ring: CoordinateRing, values: Iterable[Scalar]) -> Scalar:
    total = ring.zero
    for value in values:
        total = total + value
    return total
