"""Shared exception types."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument is outside an operation's documented domain."""


class CapExceededError(RuntimeError):
    """A request exceeds a configured size cap."""


class FactorizationError(RuntimeError):
    """Factoring ran out of budget.  Carries whatever was found so far."""

    def __init__(self, message: str, partial: tuple[tuple[int, int], ...] = (),
                 cofactor: int = 1):
        super().__init__(message)
        self.partial = partial    # (prime, exponent) pairs already extracted
        self.cofactor = cofactor  # unfactored composite remainder
