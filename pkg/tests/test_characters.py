import itertools
import math
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from permspectra import linalg, permcore
from permspectra.characters import (
    CharacterError,
    ClassFunction,
    GroupFunction,
    _chi,
    character_table,
    determinantal_terms,
    irreducible_character,
    isotypic_projection,
    permutation_character,
    permutation_class_function,
    project_onto,
    project_V_t,
    residual_norm_sq,
    young_rule,
)
from permspectra.families import CosetSpec, t_coset
from permspectra.partitions import Partition, dimension, fat_partitions, partitions_of
from permspectra.permcore import Permutation, class_size


def representative(shape):
    cycles, start = [], 1
    for part in shape:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(sum(shape), cycles)


def brute_tabloids(beta, lam):
    # a tabloid is an ordered set partition with row sizes beta
    n = sum(beta)
    sigma = representative(lam)
    count = 0
    for labels in set(itertools.permutations([r for r, b in enumerate(beta) for _ in range(b)])):
        # labels[x-1] is the row holding x; sigma fixes it iff rows are preserved
        if all(labels[sigma(x) - 1] == labels[x - 1] for x in range(1, n + 1)):
            count += 1
    return count


@pytest.mark.parametrize("n", range(1, 7))
def test_xi_matches_tabloid_enumeration(n):
    for beta in partitions_of(n):
        for lam in partitions_of(n):
            assert permutation_character(beta, lam) == brute_tabloids(beta, lam)


def test_xi_examples():
    assert permutation_character((2, 2), (2, 2)) == 2
    for lam in partitions_of(6):
        assert permutation_character((6,), lam) == 1
        assert permutation_character((5, 1), lam) == lam.count(1)
    with pytest.raises(ValueError):
        permutation_character((2, 1), (2, 2))


def test_s4_table():
    # classes in canonical order: (4), (3,1), (2,2), (2,1,1), (1^4)
    expected = [
        [1, 1, 1, 1, 1],
        [-1, 0, -1, 1, 3],
        [0, -1, 2, 0, 2],
        [1, 0, -1, -1, 3],
        [-1, 1, 1, -1, 1],
    ]
    assert character_table(4).tolist() == expected
    chi = irreducible_character((2, 2))
    assert [chi[s] for s in [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]] == [2, 0, 2, -1, 0]


def test_s4_table_by_orthogonality_oracle():
    # extract irreducibles from permutation modules by Gram-Schmidt in the class-function inner product
    n = 4
    parts = partitions_of(n)
    sizes = [class_size(p) for p in parts]

    def ip(u, v):
        return Fraction(sum(s * a * b for s, a, b in zip(sizes, u, v)), math.factorial(n))

    found = []
    for beta in parts:  # dominance-compatible order: each M^beta adds S^beta
        v = [Fraction(permutation_character(beta, lam)) for lam in parts]
        for chi in found:
            v = [a - ip(v, chi) * b for a, b in zip(v, chi)]
        found.append(v)
    assert [[int(x) for x in v] for v in found] == character_table(n).tolist()


@pytest.mark.parametrize("n", range(1, 8))
def test_orthogonality_and_degree(n):
    tab = character_table(n)
    sizes = [class_size(p) for p in partitions_of(n)]
    gram = [[sum(s * int(a) * int(b) for s, a, b in zip(sizes, r1, r2)) for r2 in tab] for r1 in tab]
    assert gram == [[math.factorial(n) if i == j else 0 for j in range(len(tab))] for i in range(len(tab))]
    for a, row in zip(partitions_of(n), tab):
        assert row[-1] == dimension(a)


def test_standard_character():
    for n in range(2, 9):
        xi = permutation_class_function((n - 1, 1))
        chi = irreducible_character((n - 1, 1))
        assert all(xi[p] - 1 == chi[p] for p in partitions_of(n))


@pytest.mark.parametrize("n,t", [(n, t) for n in range(2, 9) for t in range(1, 4) if t < n])
def test_fat_characters_from_restricted_sum(n, t):
    for alpha in fat_partitions(n, t):
        coeff = Counter()
        for s, beta in determinantal_terms(alpha, support=t + 1):
            coeff[beta] += s
        vals = tuple(sum(c * permutation_character(b, lam) for b, c in coeff.items()) for lam in partitions_of(n))
        assert vals == _chi(alpha)


def test_young_rule():
    assert young_rule((2, 2)) == [((4,), 1), ((3, 1), 1), ((2, 2), 1)]
    assert young_rule((5,)) == [((5,), 1)]
    assert young_rule((4, 1)) == [((5,), 1), ((4, 1), 1)]
    for n in range(1, 8):
        for beta in partitions_of(n):
            young_rule(beta)  # raises CharacterError on a mismatch
    assert issubclass(CharacterError, RuntimeError)


def test_class_function_json_and_validation():
    chi = irreducible_character((2, 1))
    assert chi.to_json() == {"[3]": "-1", "[2,1]": "0", "[1,1,1]": "2"}
    with pytest.raises(ValueError):
        ClassFunction(3, {Partition((3,)): 1})
    assert chi.inner(chi) == 1


# projections -----------------------------------------------------------------


def random_sparse(rng, n, k=6):
    elems = list(permcore.enumerate_group(n))
    return GroupFunction.from_sparse(
        n, {p: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for p in rng.sample(elems, k)}
    )


def test_constant_projection():
    u = GroupFunction.constant(4, 3)
    assert isotypic_projection(u, (4,)) == u
    assert isotypic_projection(u, (3, 1)) == GroupFunction.zeros(4)
    assert project_V_t(u, 1) == u


@pytest.mark.parametrize("n", [3, 4, 5])
def test_idempotent_and_orthogonal(n):
    rng = random.Random(n)
    parts = partitions_of(n)
    for _ in range(3):
        u = random_sparse(rng, n)
        projs = {a: isotypic_projection(u, a) for a in parts}
        total = GroupFunction.zeros(n)
        for a, p in projs.items():
            assert isotypic_projection(p, a) == p
            total = total + p
            for b in parts:
                if b != a:
                    assert isotypic_projection(p, b) == GroupFunction.zeros(n)
        assert total == u


def test_coset_indicator_recovered():
    coset = t_coset(4, CosetSpec(((1, 2),)))
    u = coset.indicator()
    assert project_V_t(u, 1) == u
    assert residual_norm_sq(u, 1) == 0


def test_projection_of_identity_indicator():
    n = 4
    u = GroupFunction.indicator(n, [Permutation.identity(n)])
    p = project_V_t(u, 1)
    assert p[Permutation.identity(n)] == Fraction(sum(dimension(a) ** 2 for a in fat_partitions(n, 1)), 24)
    assert residual_norm_sq(u, 1) == u.norm_sq() - p.norm_sq()
    assert u.norm_sq() == Fraction(1, 24)


@pytest.mark.parametrize("n,t", [(4, 1), (4, 2), (5, 1)])
def test_V_t_matches_coset_span_oracle(n, t):
    # V_t is spanned by t-coset indicators; compare with Gram-Schmidt onto that span
    rng = random.Random(10 * n + t)
    cosets = []
    for src in itertools.permutations(range(1, n + 1), t):
        if list(src) != sorted(src):
            continue
        for dst in itertools.permutations(range(1, n + 1), t):
            cosets.append(t_coset(n, CosetSpec(tuple(zip(src, dst)))).indicator().values)
    u = random_sparse(rng, n, k=5)
    oracle = linalg.orthogonal_projection(cosets, u.values)
    assert list(project_V_t(u, t).values) == oracle


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 5), st.data())
def test_pythagoras(n, data):
    elems = list(permcore.enumerate_group(n))
    members = data.draw(st.lists(st.sampled_from(elems), min_size=1, max_size=8, unique=True))
    u = GroupFunction.indicator(n, members)
    t = data.draw(st.integers(1, 2))
    p = project_V_t(u, t)
    assert residual_norm_sq(u, t) + p.norm_sq() == u.norm_sq()
    assert residual_norm_sq(u, t) >= 0


def test_project_onto_rejects_wrong_degree():
    with pytest.raises(ValueError):
        project_onto(GroupFunction.zeros(3), [(4,)])


def test_projection_guardrail():
    with pytest.raises(permcore.GuardrailError):
        isotypic_projection(GroupFunction.zeros(8), (8,))
