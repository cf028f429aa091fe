"""Exception hierarchy shared by every module of the package."""
from typing import Any, Optional


class AlgebroidError(Exception):
    """Base class; ``detail`` carries the offending entry, index tuple or witness."""

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.detail = detail


# --- Input problems (CLI exit code 2) ---

class InputError(AlgebroidError):
    pass


class ParseError(InputError):
    pass


class UnknownVariable(InputError):
    pass


class UnknownName(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class ParentMismatch(InputError):
    pass


class NameCollision(InputError):
    pass


class NonTerminatingRelationSet(InputError):
    pass


class UnsupportedRelation(InputError):
    pass


class RelationViolatedAtPoint(InputError):
    pass


# --- Mathematical precondition failures (CLI exit code 1) ---

class MathematicalError(AlgebroidError):
    pass


class NotAlmostComplex(MathematicalError):
    pass


class NotPure(MathematicalError):
    pass


class NotPoisson(MathematicalError):
    pass


class NotIntegrable(MathematicalError):
    pass


class NotACP(MathematicalError):
    pass


class NotConstantCoefficient(MathematicalError):
    pass


class Degenerate(MathematicalError):
    pass


class NotClosed(MathematicalError):
    pass


class NotMorphism(MathematicalError):
    pass


class NotAnchored(MathematicalError):
    pass


class NoAnnihilator(MathematicalError):
    pass


class PreconditionFailed(MathematicalError):
    pass


class SkewViolation(MathematicalError):
    pass


class DegreeOverflow(MathematicalError):
    pass


class InternalInconsistency(AlgebroidError):
    """Two independent computations of the same quantity disagree."""
