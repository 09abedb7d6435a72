"""Spectra of weighted conjugacy-class Cayley graphs on S_n and A_n.

A weighting puts ``w_C`` on every edge ``(s, p)`` with ``s^-1 p`` in class C.
Such a graph is normal, so each isotypic component V_alpha is an eigenspace
with eigenvalue ``(1/f^alpha) sum_C w_C |C| chi_alpha(C)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg, permcore
from .characters import _chi
from .partitions import Partition, dimension, fat_partitions, partitions_of
from .permcore import Permutation, class_size


class SpectralError(ValueError):
    """A weighting or spectrum violates the hypotheses of the requested operation."""


def omega(n: int, t: int) -> Fraction:
    """-1 / (n(n-1)...(n-t+1) - 1), the target least eigenvalue."""
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got n={n}, t={t}")
    return Fraction(-1, math.perm(n, t) - 1)


@dataclass(frozen=True)
class WeightedCayleySpec:
    n: int
    t: int
    weights: Mapping[Partition, Fraction]

    def __post_init__(self):
        clean = {}
        for shape, w in self.weights.items():
            shape = Partition(shape)
            if shape.n != self.n:
                raise SpectralError(f"class {shape} is not a cycle type of S_{self.n}")
            w = Fraction(w)
            if w == 0:
                continue
            if shape.count(1) == self.n:
                raise SpectralError("the identity class cannot carry weight")
            if shape.count(1) >= self.t:
                raise SpectralError(
                    f"class {shape} has {shape.count(1)} fixed points; need fewer than t={self.t}"
                )
            clean[shape] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items(), reverse=True)))

    @property
    def is_even(self) -> bool:
        return all(permcore.ConjugacyClass(s, 0).sign == 1 for s in self.weights)

    def edge_weight(self, sigma: Permutation, pi: Permutation) -> Fraction:
        shape = Partition(permcore.cycle_type(sigma.inverse() * pi))
        return self.weights.get(shape, Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "weights": {str(k): str(v) for k, v in self.weights.items()},
        }


def uniform_derangement_spec(n: int, even: bool = False) -> WeightedCayleySpec:
    """Weight 1/d_n (or 1/e_n) on every fixed-point-free (even) class, t=1."""
    shapes = [
        p for p in partitions_of(n)
        if 1 not in p and (not even or permcore.ConjugacyClass(p, 0).sign == 1)
    ]
    total = sum(class_size(p) for p in shapes)
    return WeightedCayleySpec(n, 1, {p: Fraction(1, total) for p in shapes})


@dataclass(frozen=True)
class SpectrumTable:
    """Eigenvalue per irreducible label with its multiplicity.

    In ``"alt"`` mode the labels are representatives of the pairs {alpha, alpha'}
    (the first in canonical order), as both restrict to the same part of C[A_n].
    """

    n: int
    eigenvalues: Mapping[Partition, Fraction]
    multiplicities: Mapping[Partition, int]
    group: str = "sym"

    @property
    def order(self) -> int:
        size = math.factorial(self.n)
        return size // 2 if self.group == "alt" else size

    @property
    def trivial(self) -> Fraction:
        return self.eigenvalues[Partition((self.n,))]

    @property
    def lambda_max(self) -> Fraction:
        return max(self.eigenvalues.values())

    @property
    def lambda_min(self) -> Fraction:
        return min(self.eigenvalues.values())

    def distinct(self) -> list[Fraction]:
        return sorted(set(self.eigenvalues.values()))

    def achieving(self, value: Fraction) -> list[Partition]:
        return [p for p in self.eigenvalues if self.eigenvalues[p] == value]

    @property
    def lambda_second(self) -> Fraction:
        """Second largest eigenvalue counted with multiplicity."""
        top = self.lambda_max
        if sum(self.multiplicities[p] for p in self.achieving(top)) > 1:
            return top
        rest = [v for v in self.eigenvalues.values() if v != top]
        return max(rest) if rest else top

    @property
    def lambda_M(self) -> Fraction:
        """The negative eigenvalue of second largest modulus; 0 when there is none,
        which is the weakest value keeping every other eigenvalue above it."""
        vals = self.distinct()
        if len(vals) > 1 and vals[1] < 0:
            return vals[1]
        return Fraction(0)

    def rows(self) -> list[dict]:
        return [
            {"partition": str(p), "eigenvalue": str(v), "multiplicity": self.multiplicities[p]}
            for p, v in self.eigenvalues.items()
        ]


def class_sum_eigenvalues(n: int, weights: Mapping[Sequence[int], Fraction]) -> dict[Partition, Fraction]:
    """Eigenvalue on V_alpha of sum_C w_C * (class sum of C), for every alpha."""
    shapes = partitions_of(n)
    col = {p: j for j, p in enumerate(shapes)}
    out = {}
    for alpha in shapes:
        chi = _chi(alpha)
        total = sum(
            Fraction(w) * class_size(s) * chi[col[Partition(s)]] for s, w in weights.items()
        )
        out[alpha] = Fraction(total) / dimension(alpha)
    return out


def cayley_spectrum(spec: WeightedCayleySpec) -> SpectrumTable:
    eig = class_sum_eigenvalues(spec.n, spec.weights)
    mult = {a: dimension(a) ** 2 for a in eig}
    return SpectrumTable(spec.n, eig, mult, "sym")


def an_restriction(spec: WeightedCayleySpec) -> SpectrumTable:
    """Spectrum of the weighted graph induced on A_n by an even-class weighting."""
    if not spec.is_even:
        odd = [str(s) for s in spec.weights if permcore.ConjugacyClass(s, 0).sign != 1]
        raise SpectralError(f"support contains odd classes {odd}")
    full = class_sum_eigenvalues(spec.n, spec.weights)
    eig, mult = {}, {}
    for alpha in partitions_of(spec.n):
        conj = alpha.conjugate()
        if conj in eig:
            continue
        if full[alpha] != full[conj]:
            raise SpectralError(f"eigenvalues of {alpha} and {conj} differ for an even weighting")
        f2 = dimension(alpha) ** 2
        eig[alpha] = full[alpha]
        mult[alpha] = f2 if conj != alpha else f2 // 2
    return SpectrumTable(spec.n, eig, mult, "alt")


def phi_isomorphism_check(spec: WeightedCayleySpec) -> bool:
    """Brute-force check that s -> (1 2)s carries the weighted graph induced on A_n
    onto the one induced on S_n minus A_n, edge weight for edge weight."""
    if not spec.is_even:
        raise SpectralError("the isomorphism is only claimed for even-class weightings")
    n = spec.n
    if n < 2:
        return True
    tau = permcore.transposition(n, 1, 2)
    even = list(permcore.enumerate_group(n, even_only=True))
    odd = [tau * s for s in even]
    return all(
        spec.edge_weight(ps, pp) == spec.edge_weight(s, p)
        for s, ps in zip(even, odd)
        for p, pp in zip(even, odd)
    )


@dataclass(frozen=True)
class HoffmanReport:
    bound: Fraction
    lambda_max: Fraction
    lambda_min: Fraction
    lambda_M: Fraction
    nu: Fraction
    N: int
    achieving_partitions: list[Partition] = field(default_factory=list)

    @property
    def cross_degenerate(self) -> bool:
        return self.nu >= self.lambda_max

    def to_json(self) -> dict:
        return {
            "bound": str(self.bound),
            "lambda_max": str(self.lambda_max),
            "lambda_min": str(self.lambda_min),
            "lambda_M": str(self.lambda_M),
            "nu": str(self.nu),
            "N": self.N,
            "achieving_partitions": [str(p) for p in self.achieving_partitions],
            "cross_degenerate": self.cross_degenerate,
        }


def _check_hoffman(spectrum: SpectrumTable) -> None:
    if spectrum.lambda_min >= 0:
        raise SpectralError("least eigenvalue is non-negative; the bound is vacuous")
    if spectrum.lambda_max <= 0:
        raise SpectralError("largest eigenvalue must be positive")
    if spectrum.trivial != spectrum.lambda_max:
        raise SpectralError(
            f"constant functions have eigenvalue {spectrum.trivial}, "
            f"but the largest eigenvalue is {spectrum.lambda_max}"
        )


def hoffman_bound(spectrum: SpectrumTable, N: int | None = None) -> HoffmanReport:
    """|X| <= |l_min| N / (l_max + |l_min|) for X with no weighted edges inside."""
    _check_hoffman(spectrum)
    N = spectrum.order if N is None else N
    lmax, lmin = spectrum.lambda_max, spectrum.lambda_min
    bound = abs(lmin) * N / (lmax + abs(lmin))
    nu = max(abs(spectrum.lambda_second), abs(lmin))
    return HoffmanReport(
        bound=bound,
        lambda_max=lmax,
        lambda_min=lmin,
        lambda_M=spectrum.lambda_M,
        nu=nu,
        N=N,
        achieving_partitions=spectrum.achieving(lmin),
    )


def cross_bound(spectrum: SpectrumTable, N: int | None = None) -> Fraction:
    """(nu N / (l_1 + nu))^2 with nu = max(|l_2|, |l_N|); bounds |X||Y| for cross-independent X, Y."""
    rep = hoffman_bound(spectrum, N)
    return (rep.nu * rep.N / (rep.lambda_max + rep.nu)) ** 2


def stability_distance_bound(spectrum: SpectrumTable, alpha_frac) -> Fraction:
    """Upper bound on D^2, the squared (normalised) distance from the indicator of an
    independent set of density alpha_frac to constants + least eigenspace."""
    _check_hoffman(spectrum)
    a = Fraction(alpha_frac)
    if not 0 <= a <= 1:
        raise ValueError("alpha_frac must lie in [0, 1]")
    l1, lN, lM = spectrum.lambda_max, abs(spectrum.lambda_min), abs(spectrum.lambda_M)
    if lN == lM:
        raise SpectralError("|lambda_M| = |lambda_N|; the bound has a zero denominator")
    return ((1 - a) * lN - l1 * a) / (lN - lM) * a


# Solving for weights ---------------------------------------------------------


@dataclass(frozen=True)
class Infeasible:
    reason: str
    partition: Partition | None = None

    def __bool__(self) -> bool:
        return False


def _eigen_rows(n: int, shapes: Sequence[Partition], targets: Sequence[Partition]):
    col = {p: j for j, p in enumerate(partitions_of(n))}
    return [
        [Fraction(class_size(s) * _chi(a)[col[s]], dimension(a)) for s in shapes]
        for a in targets
    ]


def solve_weights(n: int, t: int, *, max_pivots: int = 10_000) -> WeightedCayleySpec | Infeasible:
    """Class weights (support: fewer than t fixed points) whose spectrum has top
    eigenvalue 1 on constants, omega(n,t) on every other fat label, and every
    remaining eigenvalue strictly inside (omega, 1).

    Tries the minimum-norm solution of the linear conditions first; if that is
    not strictly interior, searches vertices of the polytope that maximises the
    smallest margin to the interval ends.
    """
    w_target = omega(n, t)
    shapes = [p for p in partitions_of(n) if p.count(1) < t]
    fat = fat_partitions(n, t)
    nonfat = [a for a in partitions_of(n) if a not in fat]
    if not shapes:
        return Infeasible("no conjugacy class has fewer than t fixed points")

    a_rows, b = [], []
    for alpha in fat:
        a_rows.extend(_eigen_rows(n, shapes, [alpha]))
        b.append(Fraction(1) if alpha == fat[0] else w_target)
        if linalg.solve_affine(a_rows, b) is None:
            return Infeasible("linear conditions are inconsistent", alpha)

    x0 = linalg.min_norm_solution(a_rows, b)
    nf_rows = _eigen_rows(n, shapes, nonfat)

    def worst(x):
        vals = linalg.matvec(nf_rows, x)
        margins = [(min(v - w_target, 1 - v), a) for v, a in zip(vals, nonfat)]
        return min(margins, default=(Fraction(1), None))

    margin, culprit = worst(x0)
    if margin > 0:
        return WeightedCayleySpec(n, t, dict(zip(shapes, x0)))

    _, null = linalg.solve_affine(a_rows, b)
    if not null:
        return Infeasible("unique solution has an eigenvalue outside (omega, 1)", culprit)
    best = _max_margin_vertex(x0, null, nf_rows, w_target, max_pivots)
    if best is None:
        return Infeasible("vertex search hit its pivot budget", culprit)
    x, s = best
    if s <= 0:
        return Infeasible("no weighting puts the remaining eigenvalues strictly inside (omega, 1)", worst(x)[1])
    return WeightedCayleySpec(n, t, dict(zip(shapes, x)))


def _max_margin_vertex(x0, null, nf_rows, w_target, max_pivots):
    # Maximise the margin s subject to omega + s <= lam_a(x) <= 1 - s for every
    # non-fat a, where x = x0 + sum_j y_j null_j. Shift s = s0 + u so the origin
    # (y = 0, s = s0) is feasible, split y = p - q, and walk vertices with simplex.
    k = len(null)
    lam0 = linalg.matvec(nf_rows, x0)
    grads = [[linalg.dot(row, v) for v in null] for row in nf_rows]
    s0 = min([l0 - w_target for l0 in lam0] + [1 - l0 for l0 in lam0])
    rows, rhs = [], []
    for l0, g in zip(lam0, grads):
        rows.append([-gi for gi in g] + list(g) + [Fraction(1)])
        rhs.append(l0 - w_target - s0)
        rows.append(list(g) + [-gi for gi in g] + [Fraction(1)])
        rhs.append(1 - l0 - s0)
    rows.append([Fraction(0)] * (2 * k) + [Fraction(1)])
    rhs.append(1 - s0)  # caps the margin, keeping the program bounded
    res = linalg.simplex_max([0] * (2 * k) + [1], rows, rhs, max_pivots=max_pivots)
    if res is None:
        return None
    _, z = res
    y = [z[j] - z[k + j] for j in range(k)]
    x = [x0[i] + sum(y[j] * null[j][i] for j in range(k)) for i in range(len(x0))]
    return x, s0 + z[-1]


def describe_nonfat(spectrum: SpectrumTable, t: int) -> list[dict]:
    """Exact non-fat eigenvalues and their ratio to omega(n, t)."""
    w_target = omega(spectrum.n, t)
    fat = set(fat_partitions(spectrum.n, t))
    return [
        {"partition": str(a), "eigenvalue": str(v), "ratio_to_omega": str(v / w_target)}
        for a, v in spectrum.eigenvalues.items()
        if a not in fat
    ]


__all__ = [
    "HoffmanReport",
    "Infeasible",
    "SpectralError",
    "SpectrumTable",
    "WeightedCayleySpec",
    "an_restriction",
    "cayley_spectrum",
    "class_sum_eigenvalues",
    "cross_bound",
    "describe_nonfat",
    "hoffman_bound",
    "omega",
    "phi_isomorphism_check",
    "solve_weights",
    "stability_distance_bound",
    "uniform_derangement_spec",
]
