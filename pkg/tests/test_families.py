import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from permspectra import families as fam
from permspectra import permcore
from permspectra.families import (
    CosetSpec,
    Family,
    MatrixFunction,
    build_B_alternating,
    build_cross_pair_min,
    build_cross_pair_prod,
    build_D,
    contained_in_t_coset,
    double_translate,
    is_cross_t_intersecting,
    is_t_intersecting,
    matrix_function_eval,
    pair_isomorphic,
    stability_report,
    t_coset,
    translate_coset_spec,
    verify_W1_counterexample,
    w1_counterexample_matrix,
)
from permspectra.permcore import Permutation, agreements, derangement_counts, sign, transposition
from permspectra.spectral import solve_weights, uniform_derangement_spec


def P(text, n):
    return Permutation.parse(text, n)


def naive_t_intersecting(f, t):
    return all(agreements(a, b) >= t for a, b in itertools.combinations(f.members, 2))


def naive_D(n, t):
    # straight from the defining conditions, over the whole group
    out = set()
    for s in permcore.enumerate_group(n):
        if all(s(i) == i for i in range(1, t + 1)) and any(s(j) == j for j in range(t + 2, n + 1)):
            out.add(s)
    out |= {transposition(n, i, t + 1) for i in range(1, t + 1)}
    return Family(n, out)


def test_family_basics():
    f = Family(3, [Permutation.identity(3)])
    with pytest.raises(ValueError):
        Family(3, [Permutation.identity(4)])
    assert Family.from_json(f.to_json()) == f


def test_intersection_examples():
    n = 5
    assert is_t_intersecting(Family(n, [Permutation.identity(n), P("(1 2)", n)]), 3)
    assert not is_t_intersecting(Family(n, [Permutation.identity(n), P("(1 2 3 4 5)", n)]), 1)
    assert not is_cross_t_intersecting(Family(n, [Permutation.identity(n)]), Family(n, [P("(1 2 3 4 5)", n)]), 1)
    with pytest.raises(ValueError):
        is_t_intersecting(Family(n, []), 0)
    with pytest.raises(ValueError):
        is_cross_t_intersecting(Family(3, []), Family(4, []), 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_intersection_matches_naive(n, t, data):
    elems = list(permcore.enumerate_group(n))
    members = data.draw(st.lists(st.sampled_from(elems), max_size=10, unique=True))
    f = Family(n, members)
    assert is_t_intersecting(f, t) == naive_t_intersecting(f, t)


def test_cosets():
    assert len(t_coset(5, CosetSpec(((1, 1),)))) == 24
    c = t_coset(5, CosetSpec(((1, 2), (2, 1))))
    assert len(c) == 6 and is_t_intersecting(c, 2)
    assert len(t_coset(4, CosetSpec(((1, 2), (2, 1), (3, 3), (4, 4))))) == 1
    for n in range(1, 8):
        for t in range(1, n + 1):
            spec = CosetSpec(tuple((i, n + 1 - i) for i in range(1, t + 1)))
            c = t_coset(n, spec)
            assert len(c) == math.factorial(n - t)
            assert is_t_intersecting(c, t)
            assert contained_in_t_coset(c, t) == spec
    with pytest.raises(ValueError):
        CosetSpec(((1, 2), (1, 3)))
    with pytest.raises(ValueError):
        t_coset(3, CosetSpec(((1, 4),)))


def test_contained_in_coset_singleton():
    s = P("(1 2)", 4)
    assert contained_in_t_coset(Family(4, [s]), 2) == CosetSpec(((1, 2), (2, 1)))


@pytest.mark.parametrize("n,t", [(n, t) for t in (1, 2) for n in range(t + 2, 8)])
def test_build_D(n, t):
    d = build_D(n, t)
    assert len(d) == fam.build_D_size(n, t)
    assert len(d) == math.factorial(n - t) - derangement_counts(n - t).d - derangement_counts(n - t - 1).d + t
    if n <= 6:
        assert d == naive_D(n, t)
    # at n = t + 2 the only common fixed point is n: D(3,1) lies in that
    # coset, and in D(4,2) the transpositions (1 3), (2 3) agree only at 4
    assert is_t_intersecting(d, t) == (t == 1 or n >= t + 3)
    assert (contained_in_t_coset(d, t) is None) == (t > 1 or n >= t + 3)


def test_build_D_examples():
    assert len(build_D(5, 1)) == 14
    assert len(build_D(4, 1)) == 4
    with pytest.raises(ValueError):
        build_D(3, 2)


@pytest.mark.parametrize("n", range(5, 8))
def test_build_B(n):
    b = build_B_alternating(n, 1)
    assert len(b) == fam.build_B_alternating_size(n, 1)
    assert all(sign(p) == 1 for p in b)
    assert is_t_intersecting(b, 1)
    assert contained_in_t_coset(b, 1) is None


def test_build_B_sizes():
    assert len(build_B_alternating(7, 1)) == 206 == 360 - 135 - 20 + 1
    assert len(build_B_alternating(7, 2)) == fam.build_B_alternating_size(7, 2)
    with pytest.raises(ValueError):
        build_B_alternating(5, 2)


def test_cross_pair_min_equals_D_for_basic_tau():
    for n, t in [(4, 1), (5, 1), (6, 1), (6, 2), (7, 2)]:
        f, _ = build_cross_pair_min(n, t, transposition(n, 1, t + 1))
        assert f == build_D(n, t)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cross_pair_min(n):
    for text in ("(1 2)", "(1 2)(3 4)"):
        f, g = build_cross_pair_min(n, 1, P(text, n))
        assert is_cross_t_intersecting(f, g, 1)
        assert min(len(f), len(g)) == fam.build_D_size(n, 1)
        assert not (contained_in_t_coset(f | g, 1))


def test_cross_pair_min_t2():
    for n in (6, 7):
        tau = P("(1 3)", n)
        f, g = build_cross_pair_min(n, 2, tau)
        assert is_cross_t_intersecting(f, g, 2)
        assert min(len(f), len(g)) == fam.build_D_size(n, 2)


def test_cross_pair_tau_conditions():
    with pytest.raises(ValueError):
        build_cross_pair_min(5, 1, Permutation.identity(5))  # tau(1) = 1
    with pytest.raises(ValueError):
        build_cross_pair_min(5, 1, P("(1 3)(2 4 5)", 5))  # never agrees with (1 2)
    with pytest.raises(ValueError):
        build_cross_pair_min(6, 2, P("(1 3)(2 4)", 6))  # moves 2
    # admissible tau sending a late point into [t] gives a smaller first family
    f, g = build_cross_pair_min(5, 1, P("(1 3)", 5))
    assert is_cross_t_intersecting(f, g, 1)
    assert min(len(f), len(g)) == 11 < fam.build_D_size(5, 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cross_pair_prod(n):
    f, g = build_cross_pair_prod(n, 1)
    assert (len(f), len(g)) == fam.cross_prod_sizes(n, 1)
    m = n - 1
    assert len(f) * len(g) == (math.factorial(m) - derangement_counts(m).d - derangement_counts(m - 1).d) * (
        math.factorial(m) + 1
    )
    assert len(f) * len(g) <= math.factorial(m) ** 2
    if n <= 6:
        assert is_cross_t_intersecting(f, g, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 6), st.integers(1, 2), st.randoms(use_true_random=False))
def test_double_translate_invariants(n, t, rng):
    elems = list(permcore.enumerate_group(n))
    kind = rng.randrange(3)
    if kind == 0 and n >= t + 2:
        f = build_D(n, t)
    elif kind == 1:
        f = t_coset(n, CosetSpec(tuple((i, rng.choice([j for j in range(1, n + 1)])) for i in [1])))
    else:
        f = Family(n, rng.sample(elems, rng.randint(1, min(8, len(elems)))))
    pi, tau = rng.choice(elems), rng.choice(elems)
    g = double_translate(f, pi, tau)
    assert len(g) == len(f)
    assert is_t_intersecting(g, t) == is_t_intersecting(f, t)
    assert (contained_in_t_coset(g, t) is None) == (contained_in_t_coset(f, t) is None)


def test_translate_of_coset_is_coset():
    n = 5
    rng = random.Random(0)
    elems = list(permcore.enumerate_group(n))
    for _ in range(20):
        spec = CosetSpec(((1, 3), (4, 2)))
        pi, tau = rng.choice(elems), rng.choice(elems)
        moved = double_translate(t_coset(n, spec), pi, tau)
        assert moved == t_coset(n, translate_coset_spec(spec, pi, tau))
    f = build_D(4, 1)
    assert double_translate(f, Permutation.identity(4), Permutation.identity(4)) == f


def test_pair_isomorphic():
    n = 4
    d = build_D(n, 1)
    left = double_translate(d, transposition(n, 1, 2), Permutation.identity(n))
    w = pair_isomorphic((left, left), (d, d))
    assert w is not None
    pi, rho = w
    assert double_translate(d, pi, rho) == left
    f, g = build_cross_pair_min(5, 1, P("(1 2)(3 4)", 5))
    pi, rho = P("(1 4 2)", 5), P("(2 5)", 5)
    pair = (double_translate(f, pi, rho), double_translate(g, pi, rho))
    a, b = pair_isomorphic(pair, (f, g))
    assert double_translate(f, a, b) == pair[0] and double_translate(g, a, b) == pair[1]
    assert pair_isomorphic((d, d), (d, Family(n, list(d)[:2]))) is None
    coset = t_coset(n, CosetSpec(((1, 1),)))
    assert pair_isomorphic((coset, coset), (Family(n, list(coset)[:4]),) * 2) is None


def test_matrix_function():
    b = w1_counterexample_matrix(4)
    assert matrix_function_eval(b, transposition(4, 1, 2)) == -1
    assert matrix_function_eval(b, Permutation.identity(4)) == 2
    zero = MatrixFunction(3, ((0,) * 3,) * 3)
    assert zero(P("(1 2 3)", 3)) == 0
    with pytest.raises(ValueError):
        matrix_function_eval(b, Permutation.identity(5))


def test_matrix_function_is_sum_of_coset_indicators():
    n = 4
    rng = random.Random(1)
    entries = tuple(tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(n)) for _ in range(n))
    m = MatrixFunction(n, entries)
    for s in permcore.enumerate_group(n):
        direct = sum(entries[i - 1][j - 1] for i in range(1, n + 1) for j in range(1, n + 1) if s(i) == j)
        assert m(s) == direct


@pytest.mark.parametrize("n", [4, 5, 6])
def test_W1_counterexample(n):
    rep = verify_W1_counterexample(n)
    assert rep.min_on_An >= 0 and rep.value_at_transposition == -1 and rep.confirmed


def test_W1_needs_n4():
    with pytest.raises(ValueError):
        verify_W1_counterexample(3)


def test_stability_report_coset_and_D():
    n = 5
    spec = solve_weights(n, 1)
    coset = t_coset(n, CosetSpec(((2, 3),)))
    rep = stability_report(coset, 1, spec)
    assert rep.residual_V_t == 0 and rep.distance_sq_U == 0 and rep.holds
    rep = stability_report(build_D(n, 1), 1, uniform_derangement_spec(n))
    assert rep.U_equals_V_t and rep.residual_V_t > 0
    assert rep.distance_sq_U <= rep.bound and rep.holds


def test_stability_report_flags_problems():
    n = 4
    f = Family(n, [Permutation.identity(n), P("(1 2 3 4)", n)])
    rep = stability_report(f, 1, uniform_derangement_spec(n))
    assert not rep.t_intersecting and not rep.holds
    # uniform n=4 spectrum also has (1^4) at the least eigenvalue
    rep = stability_report(build_D(n, 1), 1, uniform_derangement_spec(n))
    assert not rep.U_equals_V_t


def test_construction_guardrail():
    with pytest.raises(permcore.GuardrailError):
        build_D(10, 1)
