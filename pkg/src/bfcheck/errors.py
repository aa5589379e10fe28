"""Exception hierarchy.

Inequality failures are never raised; they come back as report fields with
``ok = False``. Exceptions cover bad input, capacity, misuse, and internal
inconsistencies, each of which maps to its own CLI exit code.
"""

from __future__ import annotations


class BFCheckError(Exception):
    """Base class for every error raised by this package."""


class InvalidElementError(BFCheckError, ValueError):
    """An element id is out of range or not an integer."""


class MalformedInputError(BFCheckError, ValueError):
    """A table, generator list or input file is not well formed."""


class MalformedGeneratorError(MalformedInputError):
    """Permutation generators are not permutations of one common degree."""


class SpecError(BFCheckError, ValueError):
    """A group spec cannot be parsed or has invalid parameters."""


class CapacityError(BFCheckError):
    """The group is larger than the configured enumeration cap."""


class NotApplicableError(BFCheckError, ValueError):
    """The operation needs a non-abelian group."""


class PreconditionError(BFCheckError, ValueError):
    """The chosen t is not a non-central element with central square."""


class InternalInconsistencyError(BFCheckError, RuntimeError):
    """Two computed facts contradict each other; indicates a bug."""
