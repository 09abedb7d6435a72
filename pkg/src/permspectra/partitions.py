"""Integer partitions, Young diagrams, hook lengths, Kostka numbers."""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence


class Partition(tuple):
    """Non-increasing tuple of positive integers. ``Partition((3, 2, 2))``."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def padded(self, length: int) -> tuple[int, ...]:
        return tuple(self) + (0,) * (length - len(self))

    def dominates(self, other: Sequence[int]) -> bool:
        other = Partition(other)
        length = max(len(self), len(other))
        a = b = 0
        for x, y in zip(self.padded(length), other.padded(length)):
            a += x
            b += y
            if a < b:
                return False
        return True

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def parse_partition(text: str) -> Partition:
    body = text.strip().strip("[]()")
    return Partition(int(x) for x in body.replace(" ", ",").split(",") if x)


@functools.cache
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(n, n))


def partition_count(n: int) -> int:
    return len(partitions_of(n))


def hook_lengths(alpha: Sequence[int]) -> list[list[int]]:
    alpha = Partition(alpha)
    conj = alpha.conjugate()
    return [
        [(row - j) + (conj[j] - i) - 1 for j in range(row)]
        for i, row in enumerate(alpha)
    ]


@functools.cache
def _dimension(alpha: Partition) -> int:
    prod = 1
    for row in hook_lengths(alpha):
        for h in row:
            prod *= h
    return math.factorial(alpha.n) // prod


def dimension(alpha: Sequence[int]) -> int:
    """Number of standard tableaux of shape alpha, via the hook-length formula."""
    return _dimension(Partition(alpha))


def kostka(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Count semistandard fillings of shape alpha with content beta.

    The entries 1, 2, ... are placed in turn; each value occupies a horizontal
    strip added to the shape filled so far, so we backtrack over strips.
    """
    alpha, beta = Partition(alpha), Partition(beta)
    if alpha.n != beta.n:
        raise ValueError(f"size mismatch: |{alpha}| != |{beta}|")
    rows = len(alpha)

    @functools.cache
    def count(shape: tuple[int, ...], k: int) -> int:
        if k == len(beta):
            return 1 if shape == alpha.padded(rows) else 0
        return sum(count(nxt, k + 1) for nxt in _strips(shape, beta[k]))

    def _strips(shape: tuple[int, ...], size: int):
        # row i may grow up to the old length of row i-1 (strictness down columns)
        def rec(i: int, left: int, acc: list[int]):
            if i == rows:
                if left == 0:
                    yield tuple(acc)
                return
            cap = alpha[i] if i == 0 else min(alpha[i], shape[i - 1])
            for add in range(min(left, cap - shape[i]), -1, -1):
                acc.append(shape[i] + add)
                yield from rec(i + 1, left - add, acc)
                acc.pop()

        return rec(0, size, [])

    return count((0,) * rows, 0)


def fat_partitions(n: int, t: int) -> list[Partition]:
    """Partitions of n whose first row has length at least n - t."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    return [p for p in partitions_of(n) if p[0] >= n - t]


def is_fat(alpha: Sequence[int], t: int) -> bool:
    return alpha[0] >= sum(alpha) - t


def normalize_composition(terms: Sequence[int]) -> Partition | None:
    """Sort a composition into a partition; None if any term is negative."""
    if any(x < 0 for x in terms):
        return None
    return Partition(sorted((x for x in terms if x), reverse=True))
