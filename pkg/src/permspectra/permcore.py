"""Permutations of [n] in 1-indexed one-line form, plus the small amount of
group plumbing (ranks, classes, derangement counts) the rest of the package needs."""

from __future__ import annotations

import contextlib
import functools
import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_DEGREE = 8
_max_degree = DEFAULT_MAX_DEGREE


class GuardrailError(ValueError):
    """Raised when a request would enumerate a group above the degree limit."""


def max_degree() -> int:
    return _max_degree


def set_max_degree(n: int, *, acknowledge: bool = False) -> None:
    """Change the enumeration guardrail. Raising it needs ``acknowledge=True``."""
    global _max_degree
    if n > DEFAULT_MAX_DEGREE and not acknowledge:
        raise GuardrailError(
            f"raising the degree guardrail to {n} requires acknowledge=True"
        )
    _max_degree = n


@contextlib.contextmanager
def guardrail(n: int, *, acknowledge: bool = False):
    old = _max_degree
    set_max_degree(n, acknowledge=acknowledge)
    try:
        yield
    finally:
        set_max_degree(old, acknowledge=True)


def check_degree(n: int, limit: int | None = None) -> None:
    limit = _max_degree if limit is None else min(limit, _max_degree)
    if n > limit:
        raise GuardrailError(f"degree {n} exceeds guardrail {limit}")


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """A bijection of {1..n}; ``images[k-1]`` is the image of ``k``.

    Composition follows ``(s * p)(x) = s(p(x))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation in one-line form: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if not 1 <= x <= n or x in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {n}")
                seen.add(x)
                images[x - 1] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """Parse cycle notation ``"(1 2)(3 4)"`` or a one-line list ``"[2,1,3]"``."""
        text = text.strip()
        if text.startswith("["):
            return cls(tuple(int(x) for x in re.findall(r"-?\d+", text)))
        cycles = [
            [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            for body in re.findall(r"\(([^)]*)\)", text)
        ]
        if n is None:
            n = max((max(c) for c in cycles if c), default=0)
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x - 1]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images, start=1) if i == x)

    def to_json(self) -> list[int]:
        return list(self.images)

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def _same_degree(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")


def compose(sigma: Permutation, pi: Permutation) -> Permutation:
    """Return the permutation ``x -> sigma(pi(x))``."""
    _same_degree(sigma, pi)
    s = sigma.images
    return Permutation(tuple(s[x - 1] for x in pi.images))


def transposition(n: int, i: int, j: int) -> Permutation:
    return Permutation.from_cycles(n, [(i, j)] if i != j else [])


def cycle_type(sigma: Permutation) -> tuple[int, ...]:
    lengths = [len(c) for c in sigma.cycles(include_fixed=True)]
    return tuple(sorted(lengths, reverse=True))


def sign(sigma: Permutation) -> int:
    ncycles = len(sigma.cycles(include_fixed=True))
    return -1 if (sigma.n - ncycles) % 2 else 1


def agreements(sigma: Permutation, pi: Permutation) -> int:
    _same_degree(sigma, pi)
    return sum(a == b for a, b in zip(sigma.images, pi.images))


def i_fix(rho: Permutation, i: int) -> Permutation:
    """The permutation fixing ``i``, sending ``rho^-1(i)`` to ``rho(i)``, equal to ``rho`` elsewhere."""
    if not 1 <= i <= rho.n:
        raise ValueError(f"point {i} out of range for degree {rho.n}")
    pre = rho.images.index(i) + 1
    if pre == i:
        return rho
    return compose(rho, transposition(rho.n, pre, i))


def i_fix_many(rho: Permutation, points: Iterable[int]) -> Permutation:
    for i in points:
        rho = i_fix(rho, i)
    return rho


@dataclass(frozen=True)
class DerangementCounts:
    n: int
    d: int
    e: int
    o: int


def derangement_counts(n: int) -> DerangementCounts:
    """Counts of all/even/odd fixed-point-free permutations of [n].

    Uses the recurrences ``d_n = (n-1)(d_{n-1} + d_{n-2})`` and
    ``e_n - o_n = (-1)^(n-1) (n-1)`` (with ``e_0 - o_0 = 1``).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    d_prev, d = 1, 0  # d_0, d_1
    if n == 0:
        d = 1
    else:
        for m in range(2, n + 1):
            d_prev, d = d, (m - 1) * (d + d_prev)
    diff = 1 if n == 0 else (-1) ** (n - 1) * (n - 1)
    return DerangementCounts(n=n, d=d, e=(d + diff) // 2, o=(d - diff) // 2)


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: tuple[int, ...]
    size: int

    @property
    def n(self) -> int:
        return sum(self.cycle_type)

    @property
    def fixed_points(self) -> int:
        return self.cycle_type.count(1)

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.cycle_type)) % 2 else 1


def class_size(shape: Sequence[int]) -> int:
    n = sum(shape)
    z = 1
    for part, mult in Counter(shape).items():
        z *= part**mult * math.factorial(mult)
    return math.factorial(n) // z


def conjugacy_classes(n: int) -> list[ConjugacyClass]:
    from .partitions import partitions_of

    if n < 1:
        raise ValueError("n must be positive")
    return [ConjugacyClass(tuple(p), class_size(p)) for p in partitions_of(n)]


def enumerate_group(n: int, even_only: bool = False) -> Iterator[Permutation]:
    """Yield S_n (or A_n) in lexicographic one-line order."""
    if n < 1:
        raise ValueError("n must be positive")
    check_degree(n)
    for images in itertools.permutations(range(1, n + 1)):
        p = Permutation(images)
        if even_only and sign(p) != 1:
            continue
        yield p


# Dense array plumbing (0-indexed, lexicographic ranks) for the vectorised code paths.

_table_cache: dict[int, np.ndarray] = {}


def perm_table(n: int) -> np.ndarray:
    """All of S_n as an ``(n!, n)`` array of 0-indexed images, row k has rank k."""
    check_degree(n)
    tab = _table_cache.get(n)
    if tab is None:
        tab = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
        tab.setflags(write=False)
        _table_cache[n] = tab
    return tab


def rank_array(arr: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of each row of a ``(m, n)`` array of 0-indexed permutations."""
    arr = np.asarray(arr, dtype=np.int64)
    m, n = arr.shape
    ranks = np.zeros(m, dtype=np.int64)
    for i in range(n):
        smaller_later = (arr[:, i + 1 :] < arr[:, i : i + 1]).sum(axis=1)
        ranks += smaller_later * math.factorial(n - 1 - i)
    return ranks


def rank(sigma: Permutation) -> int:
    return int(rank_array(np.array([sigma.images]) - 1)[0])


def unrank(n: int, r: int) -> Permutation:
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for degree {n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n, 0, -1):
        q, r = divmod(r, math.factorial(i - 1))
        out.append(pool.pop(q))
    return Permutation(tuple(out))


@functools.cache
def class_index_array(n: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Cycle-type index (into canonical partition order) of every element by rank."""
    from .partitions import partitions_of

    shapes = [tuple(p) for p in partitions_of(n)]
    where = {s: k for k, s in enumerate(shapes)}
    idx = np.fromiter(
        (where[cycle_type(Permutation(tuple(x + 1 for x in row)))] for row in perm_table(n)),
        dtype=np.int64,
        count=math.factorial(n),
    )
    return idx, shapes
