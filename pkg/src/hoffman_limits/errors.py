"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to.
"""

from __future__ import annotations


class HoffmanLimitsError(Exception):
    exit_code = 1


class InputError(HoffmanLimitsError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 2


class ParseError(InputError):
    """Text that cannot be decoded; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class DomainError(InputError):
    """Mathematically undefined request, e.g. the smallest root of a rootless polynomial."""


class PreconditionError(InputError):
    pass


class ValidityError(HoffmanLimitsError):
    """A Hoffman graph or Hoffman-graph sum violating its defining conditions."""

    exit_code = 3


class ConstructionError(HoffmanLimitsError):
    """A builder produced an object that failed one of its own checks."""

    exit_code = 3

    def __init__(self, check: str, message: str = ""):
        super().__init__(f"check {check!r} failed" + (f": {message}" if message else ""))
        self.check = check


class CapacityError(HoffmanLimitsError):
    """Input larger than an algorithm's configured limit."""

    exit_code = 4


class SearchBudgetExceeded(CapacityError):
    """Raised by the search when its node budget runs out.

    ``partial`` holds the result gathered so far and ``checkpoint`` the
    frontier needed to resume.
    """

    def __init__(self, partial, checkpoint):
        super().__init__(
            f"node budget exhausted at {checkpoint.num_vertices} vertices "
            f"with {len(checkpoint.frontier)} frontier graphs"
        )
        self.partial = partial
        self.checkpoint = checkpoint
