"""Families of permutations: intersection tests, t-cosets, the extremal
constructions, double translates, and projection/stability reports."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import permcore
from .characters import GroupFunction, project_onto, residual_norm_sq
from .partitions import Partition, fat_partitions
from .permcore import Permutation, compose, derangement_counts, sign, transposition
from .spectral import (
    SpectralError,
    WeightedCayleySpec,
    cayley_spectrum,
    hoffman_bound,
    stability_distance_bound,
)

ISOMORPHISM_MAX_DEGREE = 6


class Family:
    """A finite set of permutations of [n]."""

    __slots__ = ("n", "members", "_array")

    def __init__(self, n: int, members: Iterable[Permutation] = ()):
        members = frozenset(members)
        for p in members:
            if p.n != n:
                raise ValueError(f"member {p} has degree {p.n}, expected {n}")
        self.n = n
        self.members = members
        self._array = None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, p) -> bool:
        return p in self.members

    def __eq__(self, other) -> bool:
        return isinstance(other, Family) and self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __or__(self, other: Family) -> Family:
        return Family(self.n, self.members | other.members)

    def __repr__(self) -> str:
        return f"Family(n={self.n}, size={len(self)})"

    def array(self) -> np.ndarray:
        """Members as a sorted ``(m, n)`` int array of 1-indexed images."""
        if self._array is None:
            self._array = np.array([p.images for p in self], dtype=np.int8).reshape(-1, self.n)
        return self._array

    def indicator(self) -> GroupFunction:
        return GroupFunction.indicator(self.n, self.members)

    def to_json(self) -> list[list[int]]:
        return [p.to_json() for p in self]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> Family:
        perms = [Permutation(tuple(row)) for row in data]
        if not perms:
            raise ValueError("cannot infer the degree of an empty family")
        return cls(perms[0].n, perms)


def _min_agreements(a: np.ndarray, b: np.ndarray, chunk: int = 512) -> int:
    best = a.shape[1] if len(a) else 0
    for start in range(0, len(a), chunk):
        block = a[start : start + chunk]
        agree = (block[:, None, :] == b[None, :, :]).sum(axis=2)
        best = min(best, int(agree.min())) if agree.size else best
    return best


def is_t_intersecting(family: Family, t: int) -> bool:
    """Every two members agree on at least t points."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if len(family) < 2:
        return True
    arr = family.array()
    m = len(arr)
    for start in range(0, m, 512):
        block = arr[start : start + 512]
        agree = (block[:, None, :] == arr[None, :, :]).sum(axis=2)
        rows = np.arange(len(block))
        agree[rows, start + rows] = family.n  # ignore the diagonal
        if agree.min() < t:
            return False
    return True


def is_cross_t_intersecting(f: Family, g: Family, t: int) -> bool:
    if f.n != g.n:
        raise ValueError(f"degree mismatch: {f.n} vs {g.n}")
    if not len(f) or not len(g):
        return True
    return _min_agreements(f.array(), g.array()) >= t


@dataclass(frozen=True)
class CosetSpec:
    """The conditions sigma(i_k) = j_k defining a coset of a pointwise stabiliser."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        if len({i for i, _ in pairs}) != len(pairs) or len({j for _, j in pairs}) != len(pairs):
            raise ValueError(f"coset pairs need distinct sources and targets: {pairs}")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def validate(self, n: int) -> None:
        if any(not (1 <= i <= n and 1 <= j <= n) for i, j in self.pairs):
            raise ValueError(f"coset pairs out of range for degree {n}: {self.pairs}")

    def contains(self, sigma: Permutation) -> bool:
        return all(sigma(i) == j for i, j in self.pairs)


def _extensions(n: int, fixed: dict[int, int], restrict=None):
    """All permutations agreeing with the partial map ``fixed``.

    The guardrail applies to the degree of the group actually enumerated,
    n minus the number of fixed conditions."""
    permcore.check_degree(n - len(fixed))
    dom = [i for i in range(1, n + 1) if i not in fixed]
    cod = [j for j in range(1, n + 1) if j not in fixed.values()]
    for images in itertools.permutations(cod):
        full = [0] * n
        for i, j in fixed.items():
            full[i - 1] = j
        for i, j in zip(dom, images):
            full[i - 1] = j
        p = Permutation(tuple(full))
        if restrict is None or restrict(p):
            yield p


def t_coset(n: int, spec: CosetSpec) -> Family:
    spec.validate(n)
    return Family(n, _extensions(n, dict(spec.pairs)))


def contained_in_t_coset(family: Family, t: int) -> CosetSpec | None:
    """A witness t-coset containing every member, or None."""
    if not len(family):
        raise ValueError("family must be non-empty")
    common = None
    for p in family:
        pairs = set(enumerate(p.images, start=1))
        common = pairs if common is None else common & pairs
        if len(common) < t:
            return None
    return CosetSpec(tuple(sorted(common)[:t]))


def _stabiliser_part(n: int, t: int, target: Permutation, even: bool | None = None) -> Family:
    # {s : s fixes 1..t, s(j) = target(j) for some j > t+1}
    fixed = {i: i for i in range(1, t + 1)}

    def keep(p: Permutation) -> bool:
        if even is not None and (sign(p) == 1) != even:
            return False
        return any(p.images[j - 1] == target.images[j - 1] for j in range(t + 2, n + 1))

    return Family(n, _extensions(n, fixed, keep))


def build_D(n: int, t: int) -> Family:
    """Fix 1..t and some j > t+1, plus the transpositions (i t+1), i <= t."""
    if n < t + 2:
        raise ValueError(f"need n >= t + 2, got n={n}, t={t}")
    core = _stabiliser_part(n, t, Permutation.identity(n))
    extra = Family(n, (transposition(n, i, t + 1) for i in range(1, t + 1)))
    return core | extra


def build_D_size(n: int, t: int) -> int:
    m = n - t
    return math.factorial(m) - derangement_counts(m).d - derangement_counts(m - 1).d + t


def build_B_alternating(n: int, t: int) -> Family:
    """Even permutations fixing 1..t that agree with (n-1 n) at some j > t+1,
    plus (i t+1)(n-1 n) for i <= t."""
    if n < t + 4:
        raise ValueError(f"need n >= t + 4, got n={n}, t={t}")
    swap = transposition(n, n - 1, n)
    core = _stabiliser_part(n, t, swap, even=True)
    extra = Family(n, (transposition(n, i, t + 1) * swap for i in range(1, t + 1)))
    return core | extra


def build_B_alternating_size(n: int, t: int) -> int:
    m = n - t
    return math.factorial(m) // 2 - derangement_counts(m).o - derangement_counts(m - 1).o + t


def cross_pair_tau_ok(n: int, t: int, tau: Permutation) -> bool:
    if tau.n != n or tau(1) == 1:
        return False
    if t == 1:
        return permcore.agreements(tau, transposition(n, 1, 2)) >= 1
    if any(tau(i) != i for i in range(2, t + 1)):
        return False
    return sum(tau(j) == j for j in range(t + 2, n + 1)) >= 2


def build_cross_pair_min(n: int, t: int, tau: Permutation) -> tuple[Family, Family]:
    if n < t + 2:
        raise ValueError(f"need n >= t + 2, got n={n}, t={t}")
    if not cross_pair_tau_ok(n, t, tau):
        raise ValueError(f"tau={tau} violates the side conditions for t={t}")
    first = _stabiliser_part(n, t, tau) | Family(
        n, (transposition(n, i, t + 1) for i in range(1, t + 1))
    )
    swaps = [transposition(n, 1, i) for i in range(1, t + 1)]
    second = _stabiliser_part(n, t, Permutation.identity(n)) | Family(
        n, (s * tau * s for s in swaps)
    )
    return first, second


def build_cross_pair_prod(n: int, t: int) -> tuple[Family, Family]:
    if n < t + 2:
        raise ValueError(f"need n >= t + 2, got n={n}, t={t}")
    first = _stabiliser_part(n, t, Permutation.identity(n))
    coset = t_coset(n, CosetSpec(tuple((i, i) for i in range(1, t + 1))))
    second = coset | Family(n, (transposition(n, i, t + 1) for i in range(1, t + 1)))
    return first, second


def cross_prod_sizes(n: int, t: int) -> tuple[int, int]:
    m = n - t
    core = math.factorial(m) - derangement_counts(m).d - derangement_counts(m - 1).d
    return core, math.factorial(m) + t


def double_translate(family: Family, pi: Permutation, tau: Permutation) -> Family:
    if pi.n != family.n or tau.n != family.n:
        raise ValueError("degree mismatch")
    return Family(family.n, (compose(compose(pi, s), tau) for s in family.members))


def translate_coset_spec(spec: CosetSpec, pi: Permutation, tau: Permutation) -> CosetSpec:
    """Conditions of pi C tau when C is given by ``spec``."""
    tau_inv = tau.inverse()
    return CosetSpec(tuple((tau_inv(i), pi(j)) for i, j in spec.pairs))


def pair_isomorphic(
    p1: tuple[Family, Family], p2: tuple[Family, Family]
) -> tuple[Permutation, Permutation] | None:
    """Find (pi, rho) with p1 = (pi C rho, pi D rho) where p2 = (C, D)."""
    (a, b), (c, d) = p1, p2
    n = a.n
    if len({a.n, b.n, c.n, d.n}) != 1:
        return None
    if (len(a), len(b)) != (len(c), len(d)):
        return None
    permcore.check_degree(n, ISOMORPHISM_MAX_DEGREE)
    # anchor on a member of the smaller source family
    if len(c) <= len(d) and len(c):
        src, dst = c, a
    elif len(d):
        src, dst = d, b
    else:
        return (Permutation.identity(n),) * 2
    anchor = min(src.members)
    anchor_inv = anchor.inverse()
    for pi in permcore.enumerate_group(n):
        pi_inv = pi.inverse()
        for target in sorted(dst.members):
            rho = anchor_inv * pi_inv * target
            if all(pi * x * rho in a.members for x in c.members) and all(
                pi * x * rho in b.members for x in d.members
            ):
                return pi, rho
    return None


@dataclass(frozen=True)
class MatrixFunction:
    """f(s) = sum_i entries[i][s(i)] (1-indexed in the formula, 0-indexed in storage)."""

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"need an {self.n}x{self.n} matrix")
        object.__setattr__(self, "entries", rows)

    def __call__(self, sigma: Permutation) -> Fraction:
        return matrix_function_eval(self, sigma)


def matrix_function_eval(m: MatrixFunction, sigma: Permutation) -> Fraction:
    if sigma.n != m.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {m.n}")
    return sum((m.entries[i][x - 1] for i, x in enumerate(sigma.images)), Fraction(0))


def w1_counterexample_matrix(n: int) -> MatrixFunction:
    """Ones everywhere except -1/2 at (1,2) and (2,1) and zero diagonal from row 3."""
    if n < 2:
        raise ValueError("need n >= 2")
    rows = [[Fraction(1)] * n for _ in range(n)]
    rows[0][1] = rows[1][0] = Fraction(-1, 2)
    for i in range(2, n):
        rows[i][i] = Fraction(0)
    return MatrixFunction(n, tuple(map(tuple, rows)))


@dataclass(frozen=True)
class W1Report:
    n: int
    min_on_An: Fraction
    argmin: Permutation
    value_at_transposition: Fraction

    @property
    def confirmed(self) -> bool:
        return self.min_on_An >= 0 and self.value_at_transposition == -1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "min_on_An": str(self.min_on_An),
            "argmin": self.argmin.to_json(),
            "value_at_(1 2)": str(self.value_at_transposition),
            "confirmed": self.confirmed,
        }


def verify_W1_counterexample(n: int) -> W1Report:
    if n < 4:
        raise ValueError("the construction needs n >= 4")
    permcore.check_degree(n)
    m = w1_counterexample_matrix(n)
    best = None
    for s in permcore.enumerate_group(n, even_only=True):
        v = m(s)
        if best is None or v < best[0]:
            best = (v, s)
    return W1Report(n, best[0], best[1], m(transposition(n, 1, 2)))


@dataclass(frozen=True)
class StabilityReport:
    size: int
    t: int
    density: Fraction
    residual_V_t: Fraction
    distance_sq_U: Fraction
    bound: Fraction
    hoffman_bound: Fraction
    U_labels: tuple[Partition, ...]
    U_equals_V_t: bool
    t_intersecting: bool
    problems: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.problems and self.distance_sq_U <= self.bound

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "t": self.t,
            "density": str(self.density),
            "residual_V_t": str(self.residual_V_t),
            "distance_sq_U": str(self.distance_sq_U),
            "bound": str(self.bound),
            "hoffman_bound": str(self.hoffman_bound),
            "U_labels": [str(p) for p in self.U_labels],
            "U_equals_V_t": self.U_equals_V_t,
            "t_intersecting": self.t_intersecting,
            "holds": self.holds,
            "problems": list(self.problems),
        }


def stability_report(family: Family, t: int, spec: WeightedCayleySpec) -> StabilityReport:
    """Exact distance of the family's indicator from V_t and from U (constants plus
    the least eigenspace of the weighting), against the stability bound on the latter."""
    n = family.n
    if spec.n != n:
        raise ValueError("spec and family have different degrees")
    problems = []
    inter = is_t_intersecting(family, t)
    if not inter:
        problems.append(f"family is not {t}-intersecting")
    if spec.t > t:
        problems.append(f"weighting built for t={spec.t} may join {t}-intersecting members")
    spectrum = cayley_spectrum(spec)
    u = family.indicator()
    density = Fraction(len(family), math.factorial(n))
    try:
        bound = stability_distance_bound(spectrum, density)
        hb = hoffman_bound(spectrum).bound
    except SpectralError as exc:
        problems.append(str(exc))
        bound = hb = Fraction(0)
    labels = tuple([Partition((n,))] + [a for a in spectrum.achieving(spectrum.lambda_min) if a != (n,)])
    dist = (u - project_onto(u, labels)).norm_sq()
    fat = fat_partitions(n, t)
    return StabilityReport(
        size=len(family),
        t=t,
        density=density,
        residual_V_t=residual_norm_sq(u, t),
        distance_sq_U=dist,
        bound=bound,
        hoffman_bound=hb,
        U_labels=labels,
        U_equals_V_t=set(labels) == set(fat),
        t_intersecting=inter,
        problems=tuple(problems),
    )
