"""Characters of S_n and character-based isotypic projections.

Permutation characters are counted directly (fixed tabloids); irreducible
characters come from the determinantal formula as signed sums of them.
Everything is exact: integers for characters, ``Fraction`` for projections.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import permcore
from .partitions import (
    Partition,
    dimension,
    fat_partitions,
    kostka,
    normalize_composition,
    partitions_of,
)
from .permcore import Permutation

PROJECTION_MAX_DEGREE = 7


@dataclass(frozen=True)
class ClassFunction:
    """Exact values indexed by cycle type, one per partition of n."""

    n: int
    values: Mapping[Partition, Fraction | int]

    def __post_init__(self):
        keys = set(self.values)
        if keys != set(partitions_of(self.n)):
            raise ValueError("a class function needs one value per partition of n")

    def __getitem__(self, shape: Sequence[int]):
        return self.values[Partition(shape)]

    def __call__(self, sigma: Permutation):
        return self.values[Partition(permcore.cycle_type(sigma))]

    def as_list(self) -> list:
        return [self.values[p] for p in partitions_of(self.n)]

    def inner(self, other: ClassFunction) -> Fraction:
        """Normalised inner product (1/n!) sum_g f(g) h(g)."""
        total = sum(
            permcore.class_size(p) * self.values[p] * other.values[p]
            for p in partitions_of(self.n)
        )
        return Fraction(total, math.factorial(self.n))

    def to_json(self) -> dict[str, str]:
        return {str(p): str(Fraction(v)) for p, v in zip(partitions_of(self.n), self.as_list())}


@functools.cache
def _xi(beta: Partition, lam: Partition) -> int:
    # Count labelled assignments of the cycles of lam to the rows of beta so
    # every row receives cycles of total length exactly its row length.
    cycles = sorted(lam, reverse=True)

    @functools.cache
    def ways(k: int, room: tuple[int, ...]) -> int:
        if k == len(cycles):
            return 1 if not any(room) else 0
        c = cycles[k]
        total = 0
        for r, free in enumerate(room):
            if free >= c:
                total += ways(k + 1, room[:r] + (free - c,) + room[r + 1 :])
        return total

    return ways(0, tuple(beta))


def permutation_character(beta: Sequence[int], lam: Sequence[int]) -> int:
    """Number of beta-tabloids fixed by a permutation of cycle type lam."""
    beta, lam = Partition(beta), Partition(lam)
    if beta.n != lam.n:
        raise ValueError(f"size mismatch: |{beta}| != |{lam}|")
    return _xi(beta, lam)


def permutation_class_function(beta: Sequence[int]) -> ClassFunction:
    beta = Partition(beta)
    return ClassFunction(beta.n, {lam: _xi(beta, lam) for lam in partitions_of(beta.n)})


def determinantal_terms(alpha: Sequence[int], support: int | None = None):
    """Yield ``(sign, beta)`` with chi_alpha = sum sign * xi_beta.

    Permutations pi of {1..m} are generated with ``pi(i) >= i - alpha_i``; any
    other pi contributes a composition with a negative term. ``support``
    defaults to the number of rows of alpha (pi must fix every later point).
    """
    alpha = Partition(alpha)
    m = len(alpha) if support is None else support
    if m < len(alpha):
        raise ValueError("support must cover every row of alpha")
    a = alpha.padded(m)
    used = [False] * (m + 1)
    images: list[int] = []

    def rec(i: int):
        if i > m:
            beta = normalize_composition([a[k] - (k + 1) + images[k] for k in range(m)])
            if beta is not None:
                yield permcore.sign(Permutation(tuple(images))), beta
            return
        for v in range(max(1, i - a[i - 1]), m + 1):
            if not used[v]:
                used[v] = True
                images.append(v)
                yield from rec(i + 1)
                images.pop()
                used[v] = False

    if m == 0:
        yield 1, Partition()
        return
    yield from rec(1)


@functools.cache
def _chi(alpha: Partition) -> tuple[int, ...]:
    n = alpha.n
    coeff: Counter[Partition] = Counter()
    for s, beta in determinantal_terms(alpha):
        coeff[beta] += s
    return tuple(
        sum(c * _xi(beta, lam) for beta, c in coeff.items() if c)
        for lam in partitions_of(n)
    )


def irreducible_character(alpha: Sequence[int]) -> ClassFunction:
    alpha = Partition(alpha)
    return ClassFunction(alpha.n, dict(zip(partitions_of(alpha.n), _chi(alpha))))


def character_table(n: int) -> np.ndarray:
    """Integer table with rows indexed by irreducibles and columns by classes,
    both in canonical partition order."""
    return np.array([_chi(a) for a in partitions_of(n)], dtype=np.int64).reshape(
        len(partitions_of(n)), -1
    )


class CharacterError(RuntimeError):
    """An internal consistency check on characters failed."""


def young_rule(beta: Sequence[int]) -> list[tuple[Partition, int]]:
    """Decomposition of the permutation module M^beta as (alpha, K_{alpha,beta})."""
    beta = Partition(beta)
    n = beta.n
    parts = [(alpha, kostka(alpha, beta)) for alpha in partitions_of(n)]
    parts = [(alpha, k) for alpha, k in parts if k > 0]
    for j, lam in enumerate(partitions_of(n)):
        lhs = _xi(beta, lam)
        rhs = sum(k * _chi(alpha)[j] for alpha, k in parts)
        if lhs != rhs:
            raise CharacterError(f"Young's rule fails for beta={beta} at class {lam}: {lhs} != {rhs}")
    return parts


# Functions on the whole group ------------------------------------------------


class GroupFunction:
    """An exact rational function on S_n, stored densely by lexicographic rank."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Sequence):
        if len(values) != math.factorial(n):
            raise ValueError(f"need {math.factorial(n)} values for S_{n}")
        self.n = n
        self.values = tuple(Fraction(v) for v in values)

    @classmethod
    def zeros(cls, n: int) -> GroupFunction:
        return cls(n, [0] * math.factorial(n))

    @classmethod
    def constant(cls, n: int, c) -> GroupFunction:
        return cls(n, [c] * math.factorial(n))

    @classmethod
    def indicator(cls, n: int, members: Iterable[Permutation]) -> GroupFunction:
        vals = [0] * math.factorial(n)
        for p in members:
            if p.n != n:
                raise ValueError("degree mismatch")
            vals[permcore.rank(p)] = 1
        return cls(n, vals)

    @classmethod
    def from_callable(cls, n: int, f: Callable[[Permutation], object]) -> GroupFunction:
        return cls(n, [f(p) for p in permcore.enumerate_group(n)])

    @classmethod
    def from_sparse(cls, n: int, entries: Mapping[Permutation, object]) -> GroupFunction:
        vals: list = [0] * math.factorial(n)
        for p, v in entries.items():
            vals[permcore.rank(p)] = v
        return cls(n, vals)

    def __getitem__(self, sigma: Permutation) -> Fraction:
        return self.values[permcore.rank(sigma)]

    def __add__(self, other: GroupFunction) -> GroupFunction:
        return GroupFunction(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: GroupFunction) -> GroupFunction:
        return GroupFunction(self.n, [a - b for a, b in zip(self.values, other.values)])

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupFunction) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self) -> str:
        nz = sum(1 for v in self.values if v)
        return f"GroupFunction(n={self.n}, nonzero={nz})"

    def inner(self, other: GroupFunction) -> Fraction:
        """<x, y> = (1/N) sum x_i y_i."""
        return sum((a * b for a, b in zip(self.values, other.values)), Fraction(0)) / len(self.values)

    def norm_sq(self) -> Fraction:
        return self.inner(self)

    def support(self) -> list[int]:
        return [k for k, v in enumerate(self.values) if v]


def _convolve(u: GroupFunction, kernel_by_class: Sequence[int]) -> list[Fraction]:
    """sigma -> sum_pi u(pi) * kernel(class of pi sigma^-1), exactly."""
    n = u.n
    permcore.check_degree(n, PROJECTION_MAX_DEGREE)
    cls_idx, _ = permcore.class_index_array(n)
    kern = np.asarray(kernel_by_class, dtype=object)[cls_idx]
    denom = math.lcm(*(v.denominator for v in u.values)) if u.values else 1
    ints = [int(v * denom) for v in u.values]
    support = [k for k, v in enumerate(ints) if v]
    size = math.factorial(n)
    bound = max((abs(x) for x in ints), default=0) * max((abs(int(k)) for k in kernel_by_class), default=0) * len(support)
    tab = permcore.perm_table(n)
    inv = np.argsort(tab, axis=1)
    dtype = np.int64 if bound < 2**62 else object
    total = np.zeros(size, dtype=dtype)
    kern_arr = kern.astype(dtype)
    for r in support:
        ranks = permcore.rank_array(tab[r][inv])
        total = total + ints[r] * kern_arr[ranks]
    return [Fraction(int(x), denom) for x in total]


def _isotypic_kernel(n: int, alphas: Iterable[Partition]) -> list[int]:
    out = [0] * len(partitions_of(n))
    for alpha in alphas:
        f = dimension(alpha)
        for j, val in enumerate(_chi(Partition(alpha))):
            out[j] += f * val
    return out


def project_onto(u: GroupFunction, alphas: Iterable[Sequence[int]]) -> GroupFunction:
    """Projection of u onto the sum of the isotypic subspaces labelled by alphas."""
    alphas = [Partition(a) for a in alphas]
    for alpha in alphas:
        if alpha.n != u.n:
            raise ValueError(f"degree mismatch: |{alpha}| != {u.n}")
    raw = _convolve(u, _isotypic_kernel(u.n, alphas))
    return GroupFunction(u.n, [x / math.factorial(u.n) for x in raw])


def isotypic_projection(u: GroupFunction, alpha: Sequence[int]) -> GroupFunction:
    """Projection of u onto the alpha-isotypic subspace:
    ``P(u)_s = f^alpha / n! * sum_p u(p) chi_alpha(p s^-1)``."""
    return project_onto(u, [alpha])


def project_V_t(u: GroupFunction, t: int) -> GroupFunction:
    """Projection onto the span of t-coset indicators (sum over fat isotypic parts)."""
    return project_onto(u, fat_partitions(u.n, t))


def residual_norm_sq(u: GroupFunction, t: int) -> Fraction:
    """||u - P_{V_t} u||^2 under the normalised inner product."""
    return (u - project_V_t(u, t)).norm_sq()
