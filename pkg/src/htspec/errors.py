"""Exception types shared across the package.

Domain errors signal bad inputs or violated preconditions; numeric errors
signal iteration failures. The CLI maps the former to exit code 2 and the
latter to exit code 3.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input outside the operation's domain (bad precondition)."""


class StructuralError(DomainError):
    """Malformed data: bad edge, inconsistent lengths, unparsable scalar."""


class NotATreeError(DomainError):
    """A connected acyclic hypergraph was required."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class PoleError(DomainError):
    """An eigenvalue candidate coincides with an incident vertex weight."""


class NotARootError(DomainError):
    """Incidence-matrix construction finished but the root row sum is not 1."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularConstructionError(Exception):
    """A zero entry turned up in a denominator while building the matrix."""

    def __init__(self, message, vertex=None, edge=None):
        super().__init__(message)
        self.vertex = vertex
        self.edge = edge


class NumericError(RuntimeError):
    """An iterative method failed to reach its tolerance."""


class NonConvergenceError(NumericError):
    """Iteration budget exhausted; carries the final iterate state."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
