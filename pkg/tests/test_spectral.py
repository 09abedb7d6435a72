import math
import random
from collections import Counter
from fractions import Fraction

import flint
import pytest

from permspectra import permcore
from permspectra.acceptance import _dense_matrix, dense_spectrum_matches
from permspectra.partitions import Partition, dimension, fat_partitions, partitions_of
from permspectra.permcore import class_size
from permspectra.spectral import (
    Infeasible,
    SpectralError,
    SpectrumTable,
    WeightedCayleySpec,
    an_restriction,
    cayley_spectrum,
    class_sum_eigenvalues,
    cross_bound,
    describe_nonfat,
    hoffman_bound,
    omega,
    phi_isomorphism_check,
    solve_weights,
    stability_distance_bound,
    uniform_derangement_spec,
)


def charpoly_spectrum(n, weights, group="sym"):
    """Eigenvalues with multiplicity from the exact characteristic polynomial."""
    den = math.lcm(*(Fraction(w).denominator for w in weights.values())) if weights else 1
    mat = _dense_matrix(n, {k: int(v * den) for k, v in weights.items()})
    if group == "alt":
        even = [permcore.sign(p) == 1 for p in permcore.enumerate_group(n)]
        keep = [i for i, e in enumerate(even) if e]
        mat = mat[keep][:, keep]
    size = mat.shape[0]
    poly = flint.fmpq_mat(size, size, [int(x) for x in mat.flatten()]).charpoly()
    _, factors = poly.factor()
    out = Counter()
    for f, e in factors:
        assert f.degree() == 1, "non-rational eigenvalue"
        coeffs = f.coeffs()
        out[Fraction(-int(coeffs[0].p) * int(coeffs[1].q), int(coeffs[0].q) * int(coeffs[1].p)) / den] += e
    return out


def table_spectrum(sp):
    out = Counter()
    for a, v in sp.eigenvalues.items():
        out[v] += sp.multiplicities[a]
    return out


def test_omega():
    assert omega(5, 2) == Fraction(-1, 19)
    assert omega(4, 1) == Fraction(-1, 3)
    for n in range(2, 9):
        assert omega(n, 1) == Fraction(-1, n - 1)
    with pytest.raises(ValueError):
        omega(3, 3)


def test_uniform_n4_values():
    sp = cayley_spectrum(uniform_derangement_spec(4))
    got = {tuple(a): v for a, v in sp.eigenvalues.items()}
    assert got == {
        (4,): 1,
        (3, 1): Fraction(-1, 3),
        (2, 2): Fraction(1, 3),
        (2, 1, 1): Fraction(1, 9),
        (1, 1, 1, 1): Fraction(-1, 3),
    }
    assert table_spectrum(sp) == charpoly_spectrum(4, uniform_derangement_spec(4).weights)


def test_identity_class_example():
    assert set(class_sum_eigenvalues(4, {(1, 1, 1, 1): 1}).values()) == {1}
    with pytest.raises(SpectralError):
        WeightedCayleySpec(4, 1, {(1, 1, 1, 1): 1})


def test_spec_validation():
    with pytest.raises(SpectralError):
        WeightedCayleySpec(5, 2, {(3, 1, 1): 1})  # two fixed points
    with pytest.raises(SpectralError):
        WeightedCayleySpec(5, 1, {(3, 1): 1})  # wrong degree
    spec = WeightedCayleySpec(5, 2, {(5,): 1, (4, 1): 0})
    assert list(spec.weights) == [(5,)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_character_ratios_match_charpoly(n):
    rng = random.Random(n)
    shapes = [p for p in partitions_of(n) if p.count(1) < n]
    for _ in range(20):
        weights = {p: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for p in shapes}
        eig = class_sum_eigenvalues(n, weights)
        mine = Counter()
        for a, v in eig.items():
            mine[v] += dimension(a) ** 2
        assert mine == charpoly_spectrum(n, weights)


def test_row_sum_and_trace_identities():
    rng = random.Random(3)
    for n in range(3, 8):
        shapes = [p for p in partitions_of(n) if p.count(1) == 0]
        w = {p: Fraction(rng.randint(1, 9), 7) for p in shapes}
        sp = cayley_spectrum(WeightedCayleySpec(n, 1, w))
        assert sp.trivial == sum(v * class_size(p) for p, v in w.items())
        assert sum(sp.multiplicities[a] * v for a, v in sp.eigenvalues.items()) == 0
        assert sum(sp.multiplicities.values()) == math.factorial(n)


def test_dense_oracle_detects_wrong_spectrum(monkeypatch):
    import permspectra.spectral as spectral_mod

    weights = {Partition((4,)): 2, Partition((2, 2)): 1}
    assert dense_spectrum_matches(4, weights)
    real = spectral_mod.class_sum_eigenvalues

    def skewed(n, w):
        out = dict(real(n, w))
        out[Partition((2, 2))] += 1
        return out

    monkeypatch.setattr(spectral_mod, "class_sum_eigenvalues", skewed)
    assert not dense_spectrum_matches(4, weights)


@pytest.mark.parametrize("n", range(4, 8))
def test_hoffman_uniform(n):
    rep = hoffman_bound(cayley_spectrum(uniform_derangement_spec(n)))
    assert rep.bound == math.factorial(n - 1)
    assert rep.lambda_max == 1 and rep.lambda_min == omega(n, 1)
    assert Partition((n - 1, 1)) in rep.achieving_partitions


def test_hoffman_arithmetic():
    n = 5
    eig = {a: Fraction(0) for a in partitions_of(n)}
    eig[Partition((5,))] = Fraction(1)
    eig[Partition((4, 1))] = Fraction(-1, 19)
    mult = {a: dimension(a) ** 2 for a in partitions_of(n)}
    assert hoffman_bound(SpectrumTable(n, eig, mult)).bound == 6
    eig[Partition((4, 1))] = Fraction(-1)
    assert hoffman_bound(SpectrumTable(n, eig, mult)).bound == 60


def test_hoffman_rejects_nonnegative_spectrum():
    n = 4
    eig = {a: Fraction(1) for a in partitions_of(n)}
    mult = {a: dimension(a) ** 2 for a in partitions_of(n)}
    with pytest.raises(SpectralError):
        hoffman_bound(SpectrumTable(n, eig, mult))


def test_cross_bound():
    sp = cayley_spectrum(uniform_derangement_spec(4))
    assert hoffman_bound(sp).nu == Fraction(1, 3)
    assert cross_bound(sp) == 36
    for n in range(5, 8):
        assert cross_bound(cayley_spectrum(uniform_derangement_spec(n))) == math.factorial(n - 1) ** 2


def test_cross_bound_degenerate_flag():
    n = 4
    eig = {a: Fraction(0) for a in partitions_of(n)}
    eig[Partition((4,))] = Fraction(1)
    eig[Partition((3, 1))] = Fraction(1)
    eig[Partition((1, 1, 1, 1))] = Fraction(-1, 2)
    mult = {a: dimension(a) ** 2 for a in partitions_of(n)}
    sp = SpectrumTable(n, eig, mult)
    rep = hoffman_bound(sp)
    assert rep.cross_degenerate
    assert cross_bound(sp) == 144


def test_stability_bound_edges():
    sp = cayley_spectrum(uniform_derangement_spec(5))
    lN = abs(sp.lambda_min)
    assert stability_distance_bound(sp, 0) == 0
    assert stability_distance_bound(sp, lN / (1 + lN)) == 0
    with pytest.raises(ValueError):
        stability_distance_bound(sp, 2)


def test_lambda_M():
    sp = cayley_spectrum(uniform_derangement_spec(5))
    vals = sp.distinct()
    assert sp.lambda_M == (vals[1] if vals[1] < 0 else 0)
    assert abs(sp.lambda_M) < abs(sp.lambda_min)


@pytest.mark.parametrize("n,t", [(4, 1), (5, 1), (6, 1), (7, 1), (7, 2), (8, 2), (4, 3)])
def test_solve_weights_feasible(n, t):
    spec = solve_weights(n, t)
    assert spec, spec
    sp = cayley_spectrum(spec)
    w = omega(n, t)
    fat = fat_partitions(n, t)
    for a, v in sp.eigenvalues.items():
        if a == (n,):
            assert v == 1
        elif a in fat:
            assert v == w
        else:
            assert w < v < 1
    assert hoffman_bound(sp).bound == math.factorial(n - t)


@pytest.mark.parametrize("n,t,culprit", [(3, 1, (1, 1, 1)), (5, 2, (1, 1, 1, 1, 1)), (6, 2, (1,) * 6)])
def test_solve_weights_infeasible(n, t, culprit):
    got = solve_weights(n, t)
    assert isinstance(got, Infeasible) and not got
    assert got.partition == culprit


def test_n5_t2_unique_weighting():
    # four admissible classes, four fat equations: the solution is forced
    shapes = [p for p in partitions_of(5) if p.count(1) < 2]
    w = dict(zip(shapes, [Fraction(2, 513), Fraction(10, 513), Fraction(1, 171), Fraction(7, 513)]))
    sp = cayley_spectrum(WeightedCayleySpec(5, 2, w))
    assert all(sp.eigenvalues[a] == omega(5, 2) for a in fat_partitions(5, 2)[1:])
    assert sp.eigenvalues[Partition((1,) * 5)] == Fraction(-23, 57)
    assert hoffman_bound(sp).bound == Fraction(69, 2)
    assert table_spectrum(sp) == charpoly_spectrum(5, w)


def test_describe_nonfat():
    rows = describe_nonfat(cayley_spectrum(uniform_derangement_spec(5)), 1)
    assert {r["partition"] for r in rows} == {str(a) for a in partitions_of(5)[2:]}


def test_alternating_restriction():
    spec = WeightedCayleySpec(4, 1, {(2, 2): 1})
    sp = an_restriction(spec)
    assert sp.lambda_max == 3 and sp.order == 12
    assert sum(sp.multiplicities.values()) == 12
    assert table_spectrum(sp) == charpoly_spectrum(4, spec.weights, group="alt")
    with pytest.raises(SpectralError):
        an_restriction(uniform_derangement_spec(4))
    empty = an_restriction(WeightedCayleySpec(4, 1, {}))
    assert set(empty.eigenvalues.values()) == {0}


@pytest.mark.parametrize("n", [5, 6])
def test_alternating_hoffman(n):
    spec = uniform_derangement_spec(n, even=True)
    sp = an_restriction(spec)
    assert hoffman_bound(sp).bound == math.factorial(n - 1) // 2
    if n == 5:
        assert table_spectrum(sp) == charpoly_spectrum(n, spec.weights, group="alt")


def test_phi_isomorphism():
    for n in (4, 5):
        assert phi_isomorphism_check(uniform_derangement_spec(n, even=True))
    with pytest.raises(SpectralError):
        phi_isomorphism_check(uniform_derangement_spec(4))
