"""Exception types shared across the toolkit."""

from __future__ import annotations


class InstanceError(ValueError):
    """Malformed or invalid instance/code input."""


class CapExceeded(RuntimeError):
    """An exact search was asked to run past its size or budget cap."""

    def __init__(self, what: str, limit: int, actual: int | None = None):
        self.what = what
        self.limit = limit
        self.actual = actual
        msg = f"{what} cap exceeded (limit {limit}"
        if actual is not None:
            msg += f", got {actual}"
        super().__init__(msg + ")")


class FieldError(ValueError):
    """Invalid field modulus or a field too small for the requested construction."""
