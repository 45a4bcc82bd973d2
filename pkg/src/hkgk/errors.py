"""Exception hierarchy shared by the package.

Everything a caller can reasonably trigger with bad input derives from
:class:`HKError`; the CLI maps those to exit status 1.
"""

from __future__ import annotations


class HKError(Exception):
    """Base class for domain errors."""


class GraphError(HKError, ValueError):
    """Malformed graph text or a graph violating the simple-oriented invariants."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WordError(HKError, ValueError):
    """A word mentions an unknown vertex or is otherwise malformed."""


class BudgetExceeded(HKError, RuntimeError):
    """A resource cap (cycles, rewrite steps, rejection attempts) was hit."""


class InconsistentDirection(HKError, RuntimeError):
    """A non-cycle vertex is both reachable from and leading into cycles.

    This can only happen on a graph that should have failed the
    finiteness check, so it indicates a bug upstream.
    """


class NotFinite(HKError):
    """An operation that needs finite GK dimension got a graph without it."""


class GuardError(HKError):
    """An enumeration request that is refused without ``force``."""
