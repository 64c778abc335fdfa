"""Adaptive precision ladder.

Certified computations start at 128 bits and double until the certification
predicate succeeds, capped at a configurable maximum (default 8192 bits).
"""

from .errors import PrecisionExhaustedError

DEFAULT_START = 128
DEFAULT_CAP = 8192


def ladder(start: int = DEFAULT_START, cap: int = DEFAULT_CAP):
    """Yield the precision sequence start, 2*start, ... up to cap."""
    if start < 1:
        raise ValueError("precision must be positive")
    p = start
    while True:
        yield min(p, cap)
        if p >= cap:
            raise PrecisionExhaustedError(
                f"certification failed at precision cap {cap} bits"
            )
        p *= 2
