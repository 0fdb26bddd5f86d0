"""Nonnegative counts carried as their binary logarithm.

A count ``x`` is stored as the float ``log2(x)``; the count 0 is the sentinel
``ZERO = -inf``. This keeps counts far beyond 2**1024 representable at the
cost of 53 bits of relative precision.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import LogOverflow

LogCount = float

ZERO: LogCount = float("-inf")

_LOG2E = 1.0 / math.log(2.0)
# log2 of the largest finite double
MAX_LOG = math.log2(np.finfo(np.float64).max)


def is_zero(a: LogCount) -> bool:
    return a == ZERO


def from_int(x: int) -> LogCount:
    """Exact-integer count to log form (arbitrarily large ints accepted)."""
    if x < 0:
        raise ValueError("counts are nonnegative")
    if x == 0:
        return ZERO
    bits = x.bit_length()
    if bits <= 1000:
        return math.log2(x)
    shift = bits - 60
    return math.log2(x >> shift) + shift


def log_add(a: LogCount, b: LogCount) -> LogCount:
    """log2(2**a + 2**b), symmetric in its arguments."""
    if a == b:
        return a + 1.0
    d = a - b
    if d > 0:
        return a + _LOG2E * math.log1p(2.0 ** -d)
    return b + _LOG2E * math.log1p(2.0 ** d)


def log_mul(a: LogCount, b: LogCount) -> LogCount:
    if a == ZERO or b == ZERO:
        return ZERO
    return a + b


def to_double(a: LogCount) -> float:
    if a == ZERO:
        return 0.0
    if a > MAX_LOG:
        raise LogOverflow(f"2**{a} is not representable as a double")
    return 2.0**a


def to_int(a: LogCount) -> int:
    """Nearest integer to 2**a; recovers the exact count while it stays below 2**40."""
    return int(round(to_double(a)))


def log_sum(values) -> LogCount:
    """Log-sum over an array of LogCounts, scaled by the maximum for stability."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return ZERO
    top = float(arr.max())
    if top == ZERO:
        return ZERO
    return top + math.log2(float(np.exp2(arr - top).sum()))


def format_logcount(a: LogCount) -> str:
    """CSV token: shortest round-trip decimal, ``-inf`` for ZERO."""
    return "-inf" if a == ZERO else repr(float(a))
