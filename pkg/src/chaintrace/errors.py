"""Exception hierarchy shared across the engine.

The CLI maps these onto process exit codes: input parse failures exit 2,
validation failures exit 3, resource-cap overruns exit 4, and internal
invariant breaches exit 5.
"""

from __future__ import annotations


class ChainTraceError(Exception):
    """Base class for all engine errors."""


class InputParseError(ChainTraceError):
    """Raised when an input file or literal cannot be parsed."""


class ValidationError(ChainTraceError):
    """Raised when an input object fails its mathematical validator."""


class CapExceededError(ChainTraceError):
    """Raised when a computation would overflow a declared resource cap."""


class InternalInvariantError(ChainTraceError):
    """Raised when an internal exactness invariant fails; always a bug."""


class UnsupportedRingError(ChainTraceError):
    """Raised for coefficient rings the exact kernel deliberately rejects."""


class DegreeOutOfRangeError(ChainTraceError):
    """Raised when a homological degree falls outside the computed range."""


class NotInvertibleError(ChainTraceError):
    """Raised when an element certified as a non-unit is used as a unit."""
