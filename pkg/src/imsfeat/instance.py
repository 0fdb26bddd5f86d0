"""0-1 knapsack instances: construction, validation, text formats, generation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import InvariantViolation, MalformedInput

MAX_CAPACITY = 2**31

Format = Literal["canonical", "literature"]


@dataclass(frozen=True)
class KnapsackInstance:
    """A canonicalized instance.

    Items are stored sorted by non-increasing weight (stable with respect to
    input order). ``original_index[k]`` is the 0-based input position of the
    item stored at sorted position ``k``.
    """

    capacity: int
    profits: tuple[int, ...]
    weights: tuple[int, ...]
    original_index: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def c(self) -> int:
        return self.capacity

    @property
    def items(self) -> list[tuple[int, int]]:
        return list(zip(self.profits, self.weights))

    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    def profit_array(self) -> np.ndarray:
        return np.asarray(self.profits, dtype=np.int64)

    @classmethod
    def from_items(
        cls,
        profits: Sequence[int],
        weights: Sequence[int],
        capacity: int,
    ) -> "KnapsackInstance":
        """Validate and canonicalize items given in arbitrary order."""
        if len(profits) != len(weights):
            raise MalformedInput(
                f"{len(profits)} profits but {len(weights)} weights"
            )
        profits = [_as_int(p, "profit") for p in profits]
        weights = [_as_int(w, "weight") for w in weights]
        capacity = _as_int(capacity, "capacity")
        _check_invariants(profits, weights, capacity)
        order = sorted(range(len(weights)), key=lambda k: -weights[k])
        return cls(
            capacity=capacity,
            profits=tuple(profits[k] for k in order),
            weights=tuple(weights[k] for k in order),
            original_index=tuple(order),
        )

    def canonicalize(self) -> "KnapsackInstance":
        """Re-sort the stored items; a no-op on any instance built by this module."""
        inst = KnapsackInstance.from_items(self.profits, self.weights, self.capacity)
        return KnapsackInstance(
            capacity=inst.capacity,
            profits=inst.profits,
            weights=inst.weights,
            original_index=tuple(self.original_index[k] for k in inst.original_index),
        )

    def input_order(self) -> tuple[list[int], list[int]]:
        """Profits and weights in the order they were originally supplied."""
        profits = [0] * self.n
        weights = [0] * self.n
        for k, orig in enumerate(self.original_index):
            profits[orig] = self.profits[k]
            weights[orig] = self.weights[k]
        return profits, weights


def _as_int(value, what: str) -> int:
    if isinstance(value, (bool, np.bool_)):
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    try:
        as_int = int(value)
    except (TypeError, ValueError):
        raise MalformedInput(f"{what} must be an integer, got {value!r}") from None
    if as_int != value:
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    return as_int


def _check_invariants(profits: list[int], weights: list[int], capacity: int) -> None:
    if not weights:
        raise InvariantViolation("instance has no items (n must be positive)")
    if capacity <= 0:
        raise InvariantViolation(f"capacity must be positive, got {capacity}")
    if capacity > MAX_CAPACITY:
        raise InvariantViolation(f"capacity {capacity} exceeds 2^31")
    for k, (p, w) in enumerate(zip(profits, weights)):
        if p <= 0:
            raise InvariantViolation(f"profit of item {k + 1} is not positive ({p})")
        if w <= 0:
            raise InvariantViolation(f"weight of item {k + 1} is not positive ({w})")
        if w > capacity:
            raise InvariantViolation(
                f"weight of item {k + 1} exceeds capacity ({w} > {capacity})"
            )
    total = sum(weights)
    if total <= capacity:
        raise InvariantViolation(
            f"sum of weights <= capacity ({total} <= {capacity}); all items fit"
        )


def _tokens(text: str | bytes) -> list[list[str]]:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"non-ASCII input: {exc}") from None
    return [line.split() for line in text.splitlines() if line.strip()]


def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise MalformedInput(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse(text: str | bytes, format: Format = "canonical") -> KnapsackInstance:
    """Parse instance text.

    canonical:  ``n`` / ``c`` / n lines ``p w``
    literature: ``n`` / n lines ``i p w`` / ``c``
    """
    lines = _tokens(text)
    if not lines:
        raise MalformedInput("empty input")
    if len(lines[0]) != 1:
        raise MalformedInput("line 1: expected the item count n")
    n = _int_token(lines[0][0], 1)
    if n <= 0:
        raise InvariantViolation(f"n must be positive, got {n}")
    if len(lines) != n + 2:
        raise MalformedInput(f"expected {n + 2} non-empty lines for n={n}, got {len(lines)}")

    if format == "canonical":
        if len(lines[1]) != 1:
            raise MalformedInput("line 2: expected the capacity c")
        capacity = _int_token(lines[1][0], 2)
        item_lines, first = lines[2:], 3
        width = 2
    elif format == "literature":
        if len(lines[-1]) != 1:
            raise MalformedInput(f"line {n + 2}: expected the capacity c")
        capacity = _int_token(lines[-1][0], n + 2)
        item_lines, first = lines[1:-1], 2
        width = 3
    else:
        raise ValueError(f"unknown format {format!r}")

    profits, weights = [], []
    for offset, toks in enumerate(item_lines):
        lineno = first + offset
        if len(toks) != width:
            raise MalformedInput(f"line {lineno}: expected {width} fields, got {len(toks)}")
        values = [_int_token(t, lineno) for t in toks]
        profits.append(values[-2])
        weights.append(values[-1])
    return KnapsackInstance.from_items(profits, weights, capacity)


def serialize(inst: KnapsackInstance, format: Format = "canonical") -> str:
    """Write ``inst`` in input order, so that ``parse`` reproduces it exactly."""
    profits, weights = inst.input_order()
    if format == "canonical":
        body = [str(inst.n), str(inst.capacity)]
        body += [f"{p} {w}" for p, w in zip(profits, weights)]
    elif format == "literature":
        body = [str(inst.n)]
        body += [f"{k + 1} {p} {w}" for k, (p, w) in enumerate(zip(profits, weights))]
        body.append(str(inst.capacity))
    else:
        raise ValueError(f"unknown format {format!r}")
    return "\n".join(body) + "\n"


def read_instance(path, format: Format = "canonical") -> KnapsackInstance:
    with open(path, "rb") as fh:
        return parse(fh.read(), format)


def generate_control(
    count: int,
    seed: int,
    c_max: int = 10**5,
    n_range: tuple[int, int] = (5, 12),
) -> list[KnapsackInstance]:
    """Draw small random instances for brute-force verification.

    n is uniform in ``n_range``, c uniform in [2, c_max], every profit and
    weight uniform in [1, c]. Draws where all items fit are rejected.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if c_max < 2:
        raise ValueError("c_max must be >= 2")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1], endpoint=True))
        c = int(rng.integers(2, c_max, endpoint=True))
        profits = rng.integers(1, c, size=n, endpoint=True).tolist()
        weights = rng.integers(1, c, size=n, endpoint=True).tolist()
        if sum(weights) <= c:
            continue
        out.append(KnapsackInstance.from_items(profits, weights, c))
    return out

