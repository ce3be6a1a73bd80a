"""Shared exception types for the azumaya engine."""


class BraneError(Exception):
    """Base class for all validation and computation errors."""


class ParseError(BraneError):
    """Raised when scalar, polynomial, or JSON input cannot be parsed."""


class NotCommuting(BraneError):
    """A pair of matrices that should commute does not.

    Carries the indices of the offending pair and the exact nonzero
    commutator so the caller can inspect the violation.
    """

    def __init__(self, i, j, commutator):
        self.i = i
        self.j = j
        self.commutator = commutator
        super().__init__(f"matrices {i} and {j} do not commute")


class RelationViolated(BraneError):
    """A target relation does not evaluate to zero on the given matrices."""

    def __init__(self, relation, value):
        self.relation = relation
        self.value = value
        super().__init__(f"relation {relation} does not vanish")


class DegreeCapExceeded(BraneError):
    """A degree-bounded computation ran past its configured cap."""

    def __init__(self, cap, context=""):
        self.cap = cap
        self.context = context
        msg = f"degree cap {cap} exceeded"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class UnknownTarget(BraneError):
    """Requested builtin target key does not exist."""

    def __init__(self, key):
        self.key = key
        super().__init__(f"unknown builtin target {key!r}")


class SingularConjugator(BraneError):
    """Conjugation was attempted with a non-invertible matrix."""


class NotSquareZero(BraneError):
    """A perturbation matrix fails the square-zero requirement."""

    def __init__(self, index, square):
        self.index = index
        self.square = square
        super().__init__(f"perturbation {index} has nonzero square")


class NoRelation(BraneError):
    """Krylov search found no linear relation within the allowed order."""

    def __init__(self, max_order):
        self.max_order = max_order
        super().__init__(f"no relation of order <= {max_order}")


class NumericDegradation(BraneError):
    """Numeric clustering or matching fell outside its tolerance contract."""


class EngineError(BraneError):
    """Internal invariant broken; indicates a bug, not a bad input."""
