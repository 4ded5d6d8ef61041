import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgfpos.semigroup import (
    GeneratorSet,
    apery_set,
    count_representable,
    frobenius_number,
    minimal_generators,
    selmer_bound,
    semigroup_contains,
)

from oracles import bounded_combinations, frobenius_dp, semigroup_reach


def test_membership_examples():
    S = GeneratorSet([2, 7])
    assert not semigroup_contains(S, 5)
    assert semigroup_contains(S, 9)
    S = GeneratorSet([4, 6])
    assert semigroup_contains(S, 10)
    assert not semigroup_contains(S, 7)
    one = GeneratorSet([1])
    assert all(semigroup_contains(one, x) for x in range(50))
    assert semigroup_contains(GeneratorSet([5, 9]), 0)
    assert not semigroup_contains(GeneratorSet([5, 9]), -5)


def test_apery_examples():
    assert apery_set(GeneratorSet([3, 5])) == (0, 10, 5)
    assert apery_set(GeneratorSet([2, 3])) == (0, 3)
    assert apery_set(GeneratorSet([1])) == (0,)
    with pytest.raises(ValueError):
        GeneratorSet([])
    with pytest.raises(ValueError):
        apery_set(GeneratorSet([4, 6]))


def test_frobenius_examples():
    assert frobenius_number(GeneratorSet([3, 5])) == 7
    assert frobenius_number(GeneratorSet([2, 3])) == 1
    assert frobenius_number(GeneratorSet([1])) == -1
    assert frobenius_number(GeneratorSet([6, 9, 20])) == 43
    with pytest.raises(ValueError):
        frobenius_number(GeneratorSet([4, 6]))


def test_selmer_examples():
    assert selmer_bound(GeneratorSet([3, 5])) == 7
    assert selmer_bound(GeneratorSet([6, 9, 20])) == 74
    assert selmer_bound(GeneratorSet([2, 3])) == 4
    with pytest.raises(ValueError):
        selmer_bound(GeneratorSet([1]))


def test_selmer_uses_minimal_generators():
    # 5 = 2 + 3 is redundant; the raw formula would give 2*5*0 - 2 = -2 < F = 1
    S = GeneratorSet([2, 3, 5])
    assert minimal_generators(S) == (2, 3)
    assert selmer_bound(S) == 4 >= frobenius_number(S)


def test_count_representable():
    assert count_representable([2, 3, 3, 8, 12], GeneratorSet([4, 6])) == 2
    assert count_representable([3, 5, 14], GeneratorSet([2, 7])) == 1
    assert count_representable([9, 1, 1, 40], GeneratorSet([1])) == 4


gen_sets = st.lists(st.integers(min_value=1, max_value=25), min_size=1, max_size=5)


@settings(max_examples=150)
@given(gen_sets)
def test_membership_matches_enumeration(gens):
    S = GeneratorSet(gens)
    reachable = bounded_combinations(sorted(set(gens)), 200)
    for x in range(201):
        assert semigroup_contains(S, x) == (x in reachable)


@settings(max_examples=150)
@given(gen_sets)
def test_apery_defining_conditions(gens):
    S = GeneratorSet(gens)
    R = GeneratorSet(S.reduced)
    m = R.gens[0]
    table = apery_set(R)
    assert len(table) == m
    for r, w in enumerate(table):
        assert w % m == r
        assert semigroup_contains(R, w)
        assert not semigroup_contains(R, w - m)


@settings(max_examples=150)
@given(gen_sets)
def test_members_beyond_frobenius(gens):
    if math.gcd(*gens) != 1:
        return
    S = GeneratorSet(gens)
    F = frobenius_number(S)
    assert all(semigroup_contains(S, x) for x in range(F + 1, F + 2 * max(gens) + 2))
    if F >= 0:
        assert not semigroup_contains(S, F)


def test_frobenius_and_selmer_random():
    rng = random.Random(20261016)
    checked = 0
    while checked < 200:
        gens = sorted({rng.randint(1, 40) for _ in range(rng.randint(2, 5))})
        if len(gens) < 2 or math.gcd(*gens) != 1:
            continue
        S = GeneratorSet(gens)
        assert frobenius_number(S) == frobenius_dp(gens)
        assert frobenius_number(S) <= selmer_bound(S)
        checked += 1


def test_gcd_reduction_membership():
    S = GeneratorSet([6, 9, 15])
    reach = semigroup_reach([2, 3, 5], 60)
    for x in range(180):
        assert semigroup_contains(S, x) == (x % 3 == 0 and bool(reach[x // 3]))
