"""Result markers and error types shared across the package.

Solvers that can fail for a *mathematical* reason (no telescoper, no shift
equivalence, ...) return a marker object instead of raising, so callers can
branch on the outcome without try/except noise.  Conditions that mean the
computation itself cannot be trusted (unsupported constant field, degree cap,
a solver contradicting a classifier guarantee) are exceptions.
"""

from __future__ import annotations

import enum


class Marker:
    """Named sentinel.  Identity-compared; repr is the bare name."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __bool__(self) -> bool:
        # Markers signal absence of a value; make truthiness match.
        return False


ZeroAtInfinity = Marker("ZeroAtInfinity")
PoleAtInfinity = Marker("PoleAtInfinity")
NotRootOfUnity = Marker("NotRootOfUnity")
NotEquivalent = Marker("NotEquivalent")
NoSolution = Marker("NoSolution")
NoRelation = Marker("NoRelation")
AllRelations = Marker("AllRelations")
Empty = Marker("Empty")
NoEmbedding = Marker("NoEmbedding")


class Cardinality(str, enum.Enum):
    Zero = "Zero"
    One = "One"
    Two = "Two"
    ThreeOrMore = "ThreeOrMore"


class Completeness(str, enum.Enum):
    Complete = "Complete"
    PossiblyIncomplete = "PossiblyIncomplete"


class ZeroInput(ValueError):
    """Log derivative (or similar) applied to the zero function."""


class UnsupportedField(Exception):
    """A certified answer would need constant-field arithmetic beyond what
    the package implements (degree > 2 extensions, mostly)."""


class DegreeCap(Exception):
    """A polynomial exceeded the factorization degree cap."""


class InternalInconsistency(Exception):
    """A solver contradicted a guarantee established by the classifier.
    Always a bug, never an input problem."""


class Inconclusive(Exception):
    """The classification depends on a 'no solution' claim whose search was
    possibly incomplete.  Carries the reason."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class OrderError(ValueError):
    """Input equation is not genuinely second order."""
