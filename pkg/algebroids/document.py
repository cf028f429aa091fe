"""Algebroid definition documents: one algebroid plus named structures, as JSON."""
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import numpy as np

from . import matrices
from .algebroid import Algebroid
from .complexification import Endo
from .errors import NameCollision, ParseError, ShapeMismatch, UnknownName
from .morphisms import Morphism
from .poisson import GeneralBisection
from .prolongation import Connection
from .scalars import CoordinateRing
from .tensors import Form, Multivector

logger = logging.getLogger(__name__)

STRUCTURE_KEY = re.compile(r"^C\^(\d+)_\{(\d+),(\d+)\}$")
STRUCTURE_KEY_SHORT = re.compile(r"^C\^(\d+)_\{?(\d)(\d)\}?$")
CONNECTION_KEY = re.compile(r"^Gamma\^(\d+)_\{(\d+),(\d+)\}$")

SECTIONS = ('endomorphisms', 'bisections', 'multivectors', 'forms', 'morphisms', 'connections')


def _indices(match, m: int, key: str) -> List[int]:
    values = [int(g) for g in match.groups()]
    if any(not 1 <= v <= m for v in values):
        raise ShapeMismatch(f"index out of range 1..{m} in '{key}'", detail=key)
    return [v - 1 for v in values]


def _require(data: Mapping[str, Any], key: str, source: str):
    if key not in data:
        raise ParseError(f"{source}: missing '{key}'", detail=key)
    return data[key]


def _matrix(ring: CoordinateRing, rows, shape, what: str) -> np.ndarray:
    if not isinstance(rows, list) or any(not isinstance(row, list) for row in rows):
        raise ParseError(f"{what} must be a list of rows", detail=what)
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        found = (len(rows), len(rows[0]) if rows else 0)
        raise ShapeMismatch(f"{what} has shape {found}, expected {shape}", detail=what)
    if shape[1] == 0:
        return matrices.zeros(ring, shape[0], 0)
    return matrices.coerce_matrix(ring, rows)


def parse_algebroid(data: Mapping[str, Any], name: str = "E") -> Algebroid:
    ring = CoordinateRing(data.get('coordinates', []), data.get('relations', []))
    rank = _require(data, 'rank', name)
    if not isinstance(rank, int) or rank < 0:
        raise ParseError(f"{name}: rank must be a non-negative integer, got {rank!r}", detail=rank)
    anchor = _matrix(ring, data.get('anchor', [[] for _ in range(rank)]), (rank, len(ring.coordinates)), 'anchor')
    structure = np.empty((rank, rank, rank), dtype=object)
    for index in np.ndindex(rank, rank, rank):
        structure[index] = ring.zero
    for key, text in (data.get('structure') or {}).items():
        match = STRUCTURE_KEY.match(key) or STRUCTURE_KEY_SHORT.match(key)
        if match is None:
            raise ParseError(f"{name}: bad structure key '{key}', expected C^c_{{a,b}}", detail=key)
        c, a, b = _indices(match, rank, key)
        if a >= b:
            raise ParseError(f"{name}: structure key '{key}' must have a < b", detail=key)
        value = ring.coerce(text)
        structure[a, b, c] = value
        structure[b, a, c] = -value
    return Algebroid(ring, rank, anchor, structure, name=data.get('name', name))


def parse_tensor(A: Algebroid, entries, kind=Multivector, what: str = "tensor"):
    """Sparse ``[{"indices": [a, b], "coeff": poly}]`` list, 1-based and in any order."""
    if not isinstance(entries, list) or not entries:
        raise ParseError(f"{what} must be a non-empty list of {{indices, coeff}} entries", detail=what)
    result = None
    for entry in entries:
        indices = _require(entry, 'indices', what)
        if any(not 1 <= a <= A.rank for a in indices):
            raise ShapeMismatch(f"{what}: index out of range 1..{A.rank} in {indices}", detail=indices)
        term = kind.basis(A, [a - 1 for a in indices], A.ring.coerce(_require(entry, 'coeff', what)))
        result = term if result is None else result + term
    return result


def _connection(A: Algebroid, entries: Mapping[str, Any], name: str) -> Connection:
    m = A.rank
    gamma = np.full((m, m, m), 0, dtype=object)
    for key, text in entries.items():
        match = CONNECTION_KEY.match(key)
        if match is None:
            raise ParseError(f"connection {name}: bad key '{key}', expected Gamma^b_{{a,c}}", detail=key)
        b, a, c = _indices(match, m, key)
        gamma[a, c, b] = A.ring.coerce(text)
    return Connection(A, gamma, name=name)


@dataclass
class Document:
    algebroid: Algebroid
    endomorphisms: Dict[str, Endo] = field(default_factory=dict)
    bisections: Dict[str, GeneralBisection] = field(default_factory=dict)
    multivectors: Dict[str, Multivector] = field(default_factory=dict)
    forms: Dict[str, Form] = field(default_factory=dict)
    morphisms: Dict[str, list] = field(default_factory=dict)
    connections: Dict[str, Connection] = field(default_factory=dict)
    source: Optional[str] = None

    def _lookup(self, table: Dict[str, Any], name: str, what: str):
        if name not in table:
            known = sorted(table)
            raise UnknownName(f"no {what} named '{name}' in {self.source or self.algebroid.name} (known: {known})",
                              detail=name)
        return table[name]

    def endomorphism(self, name: str) -> Endo:
        return self._lookup(self.endomorphisms, name, "endomorphism")

    def bisection(self, name: str) -> GeneralBisection:
        """A bisection matrix, or a bivector from the multivectors section."""
        if name not in self.bisections and name in self.multivectors:
            pi = self.multivectors[name]
            if pi.degree != 2:
                raise ShapeMismatch(f"'{name}' has degree {pi.degree}, not a bivector", detail=name)
            return GeneralBisection.from_multivector(pi, name=name)
        return self._lookup(self.bisections, name, "bisection")

    def multivector(self, name: str) -> Multivector:
        if name not in self.multivectors and name in self.bisections:
            return self.bisections[name].bivector()
        return self._lookup(self.multivectors, name, "multivector")

    def form(self, name: str) -> Form:
        return self._lookup(self.forms, name, "form")

    def connection(self, name: str) -> Connection:
        return self._lookup(self.connections, name, "connection")

    def morphism(self, name: str, target: Optional[Algebroid] = None) -> Morphism:
        rows = self._lookup(self.morphisms, name, "morphism")
        target = target or self.algebroid
        source = self.algebroid
        matrix = _matrix(source.ring, rows, (target.rank, source.rank), f"morphism {name}")
        return Morphism(source, target, matrix, name=name)


def parse_document(data: Mapping[str, Any], name: str = "E", source: Optional[str] = None) -> Document:
    if not isinstance(data, Mapping):
        raise ParseError(f"{source or name}: a document is a JSON object", detail=source)
    A = parse_algebroid(data, name)
    seen: Dict[str, str] = {}
    for section in SECTIONS:
        for key in data.get(section) or {}:
            if key in seen:
                raise NameCollision(f"'{key}' is defined in both {seen[key]} and {section}", detail=key)
            seen[key] = section
    doc = Document(A, source=source)
    m = A.rank
    for key, rows in (data.get('endomorphisms') or {}).items():
        doc.endomorphisms[key] = Endo(A, _matrix(A.ring, rows, (m, m), key), name=key)
    for key, rows in (data.get('bisections') or {}).items():
        doc.bisections[key] = GeneralBisection(A, _matrix(A.ring, rows, (m, m), key), name=key)
    for key, entries in (data.get('multivectors') or {}).items():
        doc.multivectors[key] = parse_tensor(A, entries, Multivector, key)
    for key, entries in (data.get('forms') or {}).items():
        doc.forms[key] = parse_tensor(A, entries, Form, key)
    for key, rows in (data.get('morphisms') or {}).items():
        doc.morphisms[key] = rows
    for key, entries in (data.get('connections') or {}).items():
        doc.connections[key] = _connection(A, entries, key)
    logger.info(f"loaded {A.name}: rank {A.rank}, structures {sorted(seen)}")
    return doc


def load_document(path: Union[str, Path]) -> Document:
    path = Path(path)
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except FileNotFoundError as e:
        raise ParseError(f"no such document: {path}", detail=str(path)) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}", detail=str(path)) from e
    return parse_document(data, name=path.stem, source=str(path))


# --- output ---

def dump_algebroid(A: Algebroid) -> dict:
    """The definition-document form of an algebroid, with canonical polynomial text."""
    m = A.rank
    structure = {}
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(m):
                if A.structure[a, b, c]:
                    structure[f"C^{c + 1}_{{{a + 1},{b + 1}}}"] = A.structure[a, b, c].to_text()
    return {
        'name': A.name,
        'coordinates': list(A.ring.coordinates),
        'relations': [A.ring.format_raw(raw) for raw in A.ring.relations],
        'rank': m,
        'anchor': matrices.to_text(A.anchor),
        'structure': structure,
    }



def dumps(report: Mapping[str, Any]) -> str:
    """Deterministic JSON text for reports."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
