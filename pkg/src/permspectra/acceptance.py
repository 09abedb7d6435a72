"""The acceptance suite as plain functions, shared by ``verify-all`` and the tests.

Each check returns a :class:`CriterionResult`; nothing here raises on a failed
comparison. Oracles are computed independently of the code under test where
that is cheap (tableau enumeration, dense matrices, brute-force parity counts).
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import families as fam
from . import permcore, search, spectral
from .characters import (
    irreducible_character,
    permutation_class_function,
    project_V_t,
    residual_norm_sq,
    young_rule,
)
from .partitions import Partition, dimension, hook_lengths, partitions_of
from .permcore import Permutation, class_size


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [label for label, ok in self.checks if not ok]

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        detail = f"{len(self.checks)} checks"
        if not self.passed:
            detail += "; failed: " + "; ".join(self.failures)
        return f"[{mark}] criterion {self.number} {self.name}: {detail}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "checks": [{"check": label, "passed": ok} for label, ok in self.checks],
        }


class _Collector:
    def __init__(self):
        self.checks: list[tuple[str, bool]] = []

    def __call__(self, label: str, ok) -> bool:
        self.checks.append((label, bool(ok)))
        return bool(ok)

    def result(self, number: int, name: str) -> CriterionResult:
        return CriterionResult(number, name, all(ok for _, ok in self.checks), self.checks)


# 1 ---------------------------------------------------------------------------


def _tableau_counts(n: int) -> Counter:
    """Number of standard tableaux of each shape, by placing 1..n one cell at a time."""
    counts: Counter = Counter()

    def rec(shape: list[int], k: int):
        if k > n:
            counts[Partition(shape)] += 1
            return
        for i in range(len(shape) + 1):
            row = shape[i] if i < len(shape) else 0
            if i == 0 or shape[i - 1] > row:
                if i < len(shape):
                    shape[i] += 1
                    rec(shape, k + 1)
                    shape[i] -= 1
                else:
                    shape.append(1)
                    rec(shape, k + 1)
                    shape.pop()

    rec([], 1)
    return counts


def criterion_1(n_max: int = 8, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for n in range(1, n_max + 1):
        counts = _tableau_counts(n)
        c(f"f^alpha equals tableau count for all alpha of {n}",
          all(dimension(a) == counts[a] for a in partitions_of(n)))
        c(f"sum of (f^alpha)^2 is {n}!", sum(dimension(a) ** 2 for a in partitions_of(n)) == math.factorial(n))
    c("f^(3,2,2) = 21", dimension((3, 2, 2)) == 21)
    c("hook grid of (3,2,2)", hook_lengths((3, 2, 2)) == [[5, 4, 1], [3, 2], [2, 1]])
    return c.result(1, "hook lengths and dimensions")


# 2 ---------------------------------------------------------------------------


def criterion_2(n_max: int = 7, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for n in range(1, n_max + 1):
        parts = partitions_of(n)
        sizes = [class_size(p) for p in parts]
        chars = {a: irreducible_character(a).as_list() for a in parts}
        ok = all(
            sum(s * x * y for s, x, y in zip(sizes, chars[a], chars[b]))
            == (math.factorial(n) if a == b else 0)
            for a in parts
            for b in parts
        )
        c(f"row orthogonality at n={n}", ok)
        if n >= 2:
            xi = permutation_class_function((n - 1, 1)).as_list()
            chi = chars[Partition((n - 1, 1))]
            c(f"chi_(n-1,1) = xi_(n-1,1) - 1 at n={n}", all(x - 1 == y for x, y in zip(xi, chi)))
        good = True
        for beta in parts:
            try:
                young_rule(beta)
            except Exception:
                good = False
        c(f"Young's rule for every beta of {n}", good)
    return c.result(2, "characters")


# 3 ---------------------------------------------------------------------------


def _dense_matrix(n: int, weights: dict[Partition, int]) -> np.ndarray:
    tab = permcore.perm_table(n)
    inv = np.argsort(tab, axis=1)
    idx, shapes = permcore.class_index_array(n)
    w_by_class = np.array([weights.get(Partition(s), 0) for s in shapes], dtype=object)
    size = len(tab)
    mat = np.empty((size, size), dtype=object)
    for r in range(size):
        # entry (s, p) carries the weight of the class of s^-1 p
        ranks = permcore.rank_array(inv[r][tab])
        mat[r] = w_by_class[idx[ranks]]
    return mat


def dense_spectrum_matches(n: int, weights: dict[Partition, int]) -> bool:
    """Check the character-ratio spectrum against the dense weighted adjacency matrix.

    The matrix is symmetric (classes are closed under inversion), so it is
    diagonalisable. If the product of (A - lambda I) over the claimed distinct
    eigenvalues vanishes, every eigenvalue is among them; the power sums
    tr(A^k), k < #distinct, then pin down the multiplicities.

    A is invariant under simultaneous left translation of rows and columns,
    hence so is every polynomial in A: a polynomial vanishes iff its row at the
    identity does, and all diagonal entries agree. Only that row is tracked.
    """
    eig = spectral.class_sum_eigenvalues(n, weights)
    mult: Counter = Counter()
    for a, v in eig.items():
        mult[v] += dimension(a) ** 2
    values = sorted(mult)
    a_mat = _dense_matrix(n, weights)
    size = a_mat.shape[0]
    if np.any(a_mat != a_mat.T):
        return False
    # an integer matrix has integer rational eigenvalues
    if any(v.denominator != 1 for v in values):
        return False
    row = np.zeros(size, dtype=object)
    row[0] = 1
    for v in values:
        row = row.dot(a_mat) - row * int(v)
    if np.any(row != 0):
        return False
    row = np.zeros(size, dtype=object)
    row[0] = 1
    for k in range(len(values)):
        if row[0] * size != sum(mult[v] * v**k for v in values):
            return False
        row = row.dot(a_mat)
    return True


def criterion_3(n_max: int = 7, seed: int = 0, dense_max: int = 5, samples: int = 20) -> CriterionResult:
    c = _Collector()
    for n in range(4, n_max + 1):
        spec = spectral.cayley_spectrum(spectral.uniform_derangement_spec(n))
        c(f"lambda_max = 1 at n={n}", spec.lambda_max == 1 and spec.trivial == 1)
        c(f"lambda_min = -1/(n-1) at n={n}", spec.lambda_min == spectral.omega(n, 1))
    rng = random.Random(seed)
    for n in range(2, dense_max + 1):
        shapes = [p for p in partitions_of(n) if p.count(1) < n]
        ok = True
        for _ in range(samples):
            weights = {p: rng.randint(-6, 6) for p in shapes}
            ok &= dense_spectrum_matches(n, weights)
        c(f"character ratios match the dense matrix at n={n} ({samples} weightings)", ok)
    return c.result(3, "spectrum")


# 4 ---------------------------------------------------------------------------


def criterion_4(n_max: int = 7, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for n in range(4, n_max + 1):
        rep = spectral.hoffman_bound(spectral.cayley_spectrum(spectral.uniform_derangement_spec(n)))
        c(f"uniform derangement bound = {n - 1}! at n={n}", rep.bound == math.factorial(n - 1))
        sw = spectral.solve_weights(n, 1)
        ok = bool(sw) and spectral.hoffman_bound(spectral.cayley_spectrum(sw)).bound == math.factorial(n - 1)
        c(f"solve_weights(n={n}, t=1) bound = {n - 1}!", ok)
    sw = spectral.solve_weights(5, 2)
    if sw:
        bound = spectral.hoffman_bound(spectral.cayley_spectrum(sw)).bound
        c(f"solve_weights(n=5, t=2) bound = 3! (got {bound})", bound == 6)
    else:
        c(f"solve_weights(n=5, t=2) bound = 3! (infeasible: {sw.reason} at {sw.partition})", False)
    for n in (5, 6):
        alt = spectral.an_restriction(spectral.uniform_derangement_spec(n, even=True))
        bound = spectral.hoffman_bound(alt).bound
        c(f"A_n bound = {n - 1}!/2 at n={n}", bound == math.factorial(n - 1) // 2)
    return c.result(4, "Hoffman bound")


# 5 ---------------------------------------------------------------------------


def criterion_5(n_max: int = 5, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for n in range(3, n_max + 1):
        res = search.max_t_intersecting(n, 1)
        c(f"max 1-intersecting in S_{n} = {n - 1}!", res.optimum == math.factorial(n - 1) and res.status == search.PROVED)
        cliques = search.all_max_cliques_with_identity(n, 1, size=res.optimum)
        c(f"every optimal family through id in S_{n} is a 1-coset",
          cliques and all(fam.contained_in_t_coset(f, 1) is not None for f in cliques))
        if n <= search.NAIVE_MAX_DEGREE:
            c(f"branch and bound agrees with naive search at n={n}", search.naive_max_t_intersecting(n, 1) == res.optimum)
        sw = spectral.solve_weights(n, 1)
        if sw:
            bound = spectral.hoffman_bound(spectral.cayley_spectrum(sw)).bound
            c(f"optimum <= Hoffman bound at n={n}", res.optimum <= bound)
    for n in (5,):
        res = search.max_t_intersecting(n, 1, "alt")
        alt = spectral.an_restriction(spectral.uniform_derangement_spec(n, even=True))
        c(f"A_{n} optimum <= A_n Hoffman bound", res.optimum <= spectral.hoffman_bound(alt).bound)
    return c.result(5, "extremal search")


# 6 ---------------------------------------------------------------------------


def _parity_derangements(n: int) -> tuple[int, int]:
    # sum of class sizes over fixed-point-free cycle types, split by sign
    even = odd = 0
    for p in partitions_of(n) if n else [Partition()]:
        if 1 in p:
            continue
        size = class_size(p) if n else 1
        if (n - len(p)) % 2:
            odd += size
        else:
            even += size
    return even, odd


def criterion_6(n_max: int = 9, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for t in (1, 2):
        for n in range(t + 2, n_max + 1):
            c(f"|D({n},{t})| closed form", len(fam.build_D(n, t)) == fam.build_D_size(n, t))
    for n in range(5, min(n_max, 8) + 1):
        b = fam.build_B_alternating(n, 1)
        c(f"|B({n},1)| closed form", len(b) == fam.build_B_alternating_size(n, 1))
    for n in range(1, n_max + 1):
        even, odd = _parity_derangements(n)
        dc = permcore.derangement_counts(n)
        c(f"e_{n} - o_{n} = (-1)^(n-1)(n-1)", even - odd == (-1) ** (n - 1) * (n - 1) and (dc.e, dc.o) == (even, odd))
    return c.result(6, "family sizes")


# 7 ---------------------------------------------------------------------------


def criterion_7(n_max: int = 6, seed: int = 0) -> CriterionResult:
    c = _Collector()
    t = 1
    for n in range(3, n_max + 1):
        ok = sizes_ok = True
        count = 0
        closed = fam.build_D_size(n, t)
        for tau in permcore.enumerate_group(n):
            if not fam.cross_pair_tau_ok(n, t, tau):
                continue
            count += 1
            f, g = fam.build_cross_pair_min(n, t, tau)
            ok &= fam.is_cross_t_intersecting(f, g, t)
            if tau.inverse()(1) == t + 1:
                sizes_ok &= min(len(f), len(g)) == closed
        c(f"minimal cross pairs cross-intersect at n={n} ({count} valid tau)", ok and count > 0)
        c(f"minimal cross pair size matches the closed form at n={n} (tau^-1(1) = t+1)", sizes_ok)
        f, g = fam.build_cross_pair_prod(n, t)
        c(f"product pair cross-intersects at n={n}", fam.is_cross_t_intersecting(f, g, t))
        c(f"product pair sizes match closed forms at n={n}", (len(f), len(g)) == fam.cross_prod_sizes(n, t))
        c(f"|F||G| <= ((n-t)!)^2 at n={n}", len(f) * len(g) <= math.factorial(n - t) ** 2)
    return c.result(7, "cross-intersecting pairs")


# 8 ---------------------------------------------------------------------------


def _random_intersecting(rng: random.Random, n: int, t: int, elems: list[Permutation]) -> fam.Family:
    order = elems[:]
    rng.shuffle(order)
    cap = rng.randint(1, len(order))
    chosen: list[Permutation] = []
    for p in order:
        if len(chosen) >= cap:
            break
        if all(permcore.agreements(p, q) >= t for q in chosen):
            chosen.append(p)
    return fam.Family(n, chosen)


def criterion_8(n_max: int = 6, seed: int = 0, random_families: int = 200) -> CriterionResult:
    c = _Collector()
    for n in range(2, n_max + 1):
        for t in (1, 2):
            if t > n:
                continue
            ok = True
            for src in itertools.permutations(range(1, n + 1), t):
                for dst in itertools.permutations(range(1, n + 1), t):
                    coset = fam.t_coset(n, fam.CosetSpec(tuple(zip(src, dst))))
                    u = coset.indicator()
                    ok &= project_V_t(u, t) == u
            c(f"P_V_t fixes every {t}-coset indicator at n={n}", ok)
    for n in (4, 5):
        opt = search.max_t_intersecting(n, 1).optimum
        maxima = set()
        for clique in search.all_max_cliques_with_identity(n, 1, size=opt):
            for s in clique.members:
                maxima.add(fam.Family(n, (q * s.inverse() for q in clique.members)))
        c(f"residual 0 for all {len(maxima)} maximum families at n={n}",
          all(residual_norm_sq(f.indicator(), 1) == 0 for f in maxima))
    rng = random.Random(seed)
    per_n = random_families // 2
    for n in (4, 5):
        spec = spectral.solve_weights(n, 1)
        elems = list(permcore.enumerate_group(n))
        ok = True
        for _ in range(per_n):
            rep = fam.stability_report(_random_intersecting(rng, n, 1, elems), 1, spec)
            ok &= rep.holds
        c(f"stability bound dominates D^2 for {per_n} random families at n={n}", ok)
    rep = fam.stability_report(fam.build_D(5, 1), 1, spectral.solve_weights(5, 1))
    c("stability bound dominates D^2 for D(5,1)", rep.holds and rep.distance_sq_U > 0)
    return c.result(8, "projection and stability")


# 9 ---------------------------------------------------------------------------


def criterion_9(n_max: int = 6, seed: int = 0) -> CriterionResult:
    c = _Collector()
    for n in (4, 5):
        # edge weights are linear in the class weights, so single classes suffice
        ok = True
        for p in partitions_of(n):
            if p.count(1) < n and permcore.ConjugacyClass(tuple(p), 0).sign == 1:
                ok &= spectral.phi_isomorphism_check(spectral.WeightedCayleySpec(n, n, {p: 1}))
        c(f"(1 2)-translation is a weighted isomorphism at n={n}", ok)
    for n in range(4, n_max + 1):
        rep = fam.verify_W1_counterexample(n)
        c(f"W_1 counterexample at n={n}", rep.min_on_An >= 0 and rep.value_at_transposition == -1)
    return c.result(9, "alternating group")


# 10 --------------------------------------------------------------------------


def criterion_10(n_max: int = 5, seed: int = 0, samples: int = 100) -> CriterionResult:
    c = _Collector()
    rng = random.Random(seed)
    for n in range(2, n_max + 1):
        c(f"Maurey bound for X={{id}} at n={n}", search.maurey_check(fam.Family(n, [Permutation.identity(n)])).holds)
        elems = list(permcore.enumerate_group(n))
        ok = True
        for _ in range(samples):
            k = rng.randint(1, len(elems) - 1)
            ok &= search.maurey_check(fam.Family(n, rng.sample(elems, k))).holds
        c(f"Maurey bound for {samples} random X at n={n}", ok)
    return c.result(10, "Maurey neighbourhoods")


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_all(only: list[int] | None = None, seed: int = 0) -> list[CriterionResult]:
    keys = sorted(CRITERIA) if not only else sorted(set(only))
    for k in keys:
        if k not in CRITERIA:
            raise ValueError(f"unknown criterion {k}")
    return [CRITERIA[k](seed=seed) for k in keys]
