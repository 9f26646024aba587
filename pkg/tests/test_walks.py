"""Walk-engine tests: frozen small values, independent brute-force oracles,
invariants, and error contracts."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglecount import (
    BruteForceBoundError,
    ResourceLimitError,
    StepRegime,
    count_day_walks_brute,
    count_matchings_prefix,
    count_tangled_direct,
    count_tangled_prefix,
    enumerate_day_walks,
    is_chamber_state,
    iter_day_walks,
    origin_state,
)
from tanglecount import walks as walks_mod

LAZY = StepRegime.LAZY_ENERGETIC_DAYS
ENERGETIC = StepRegime.ENERGETIC_DAYS
MATCHING = StepRegime.MATCHING_STEPS


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def brute_matchings(k, m):
    """Independent oracle: enumerate all +-e_i step sequences directly,
    checking the chamber condition after every step."""

    def ok(state):
        return all(a >= b for a, b in zip(state, state[1:])) and state[-1] >= 0

    def rec(state, left):
        if left == 0:
            return 1 if all(c == 0 for c in state) else 0
        total = 0
        for i in range(k - 1):
            for delta in (1, -1):
                nxt = state[:i] + (state[i] + delta,) + state[i + 1:]
                if ok(nxt):
                    total += rec(nxt, left - 1)
        return total

    return rec((0,) * (k - 1), m)


# -- count_matchings_prefix -------------------------------------------------

def test_matchings_frozen_examples():
    assert count_matchings_prefix(2, 6) == [1, 0, 1, 0, 2, 0, 5]
    assert count_matchings_prefix(3, 6) == [1, 0, 1, 0, 3, 0, 14]
    assert count_matchings_prefix(5, 0) == [1]


def test_matchings_against_independent_enumeration():
    for k in (2, 3):
        got = count_matchings_prefix(k, 8)
        for m in range(9):
            assert got[m] == brute_matchings(k, m), (k, m)


def test_matchings_catalan_closed_form():
    values = count_matchings_prefix(2, 30)
    for n in range(16):
        assert values[2 * n] == catalan(n)


def test_matchings_odd_zero_and_initial_one():
    for k in (2, 3, 4):
        values = count_matchings_prefix(k, 11)
        assert values[0] == 1
        assert all(values[m] == 0 for m in range(1, 12, 2))


def test_matchings_stabilize_in_k():
    # once k-1 >= m/2 the chamber constraint cannot bind
    reference = count_matchings_prefix(4, 6)
    for k in (5, 7, 9):
        assert count_matchings_prefix(k, 6) == reference


def test_layer_mass_is_monotone():
    # total mass after m steps counts free-endpoint walks of length m
    for k in (2, 3):
        layer = {origin_state(k): 1}
        prev = 1
        for _ in range(8):
            layer = walks_mod._apply_step(layer, 10 ** 9, 10 ** 7)
            mass = sum(layer.values())
            assert mass >= prev
            prev = mass


# -- day counting -----------------------------------------------------------

def test_tangled_direct_frozen_examples():
    assert count_tangled_direct(2, 1, LAZY) == 2
    assert count_tangled_direct(2, 1, ENERGETIC) == 1
    assert count_tangled_direct(2, 2, LAZY) == 6


def test_tangled_prefix_matches_direct():
    prefix = count_tangled_prefix(3, 6, LAZY)
    assert prefix == [count_tangled_direct(3, n, LAZY) for n in range(7)]


def test_day_counts_dominate_matchings():
    for k in (2, 3):
        f = count_matchings_prefix(k, 12)
        lazy = count_tangled_prefix(k, 6, LAZY)
        energetic = count_tangled_prefix(k, 6, ENERGETIC)
        for n in range(7):
            assert lazy[n] >= energetic[n] >= f[2 * n]


def test_day_counts_monotone_and_stable_in_k():
    n = 3
    values = [count_tangled_direct(k, n, LAZY) for k in range(2, 7)]
    assert values == sorted(values)
    # stabilization once k-1 >= n
    assert values[2] == values[3] == values[4]  # k = 4, 5, 6


# -- brute-force oracle -----------------------------------------------------

def test_enumerate_empty_walk():
    for regime in (LAZY, ENERGETIC, MATCHING):
        assert enumerate_day_walks(2, 0, regime) == [()]


def test_enumerate_k2_one_lazy_day():
    walks = enumerate_day_walks(2, 1, LAZY)
    assert len(walks) == 2
    assert ((),) in walks                      # stay
    assert (((0, 1), (0, -1)),) in walks       # up then down


def test_enumerate_length_equals_direct_count():
    assert len(enumerate_day_walks(3, 2, ENERGETIC)) == count_tangled_direct(
        3, 2, ENERGETIC
    )


def test_enumerated_walks_are_valid_and_distinct():
    walks = enumerate_day_walks(3, 3, LAZY)
    assert len(set(walks)) == len(walks)
    for walk in walks:
        state = list(origin_state(3))
        for day in walk:
            assert len(day) <= 2
            for i, delta in day:
                state[i] += delta
                assert is_chamber_state(tuple(state))
        assert all(c == 0 for c in state)


def test_matching_steps_enumeration_counts_matchings():
    f = count_matchings_prefix(3, 6)
    for m in range(7):
        assert count_day_walks_brute(3, m, MATCHING) == f[m]


@settings(deadline=None, max_examples=40)
@given(k=st.integers(2, 4), n=st.integers(0, 4), lazy=st.booleans())
def test_brute_force_agrees_with_dp(k, n, lazy):
    regime = LAZY if lazy else ENERGETIC
    assert count_day_walks_brute(k, n, regime) == count_tangled_direct(k, n, regime)


def test_iter_day_walks_streams_same_walks():
    listed = enumerate_day_walks(2, 3, ENERGETIC)
    assert list(iter_day_walks(2, 3, ENERGETIC)) == listed


# -- errors -----------------------------------------------------------------

def test_rejects_bad_k():
    with pytest.raises(ValueError):
        count_matchings_prefix(1, 4)
    with pytest.raises(ValueError):
        count_tangled_direct(0, 2, LAZY)


def test_rejects_negative_ranges():
    with pytest.raises(ValueError):
        count_matchings_prefix(2, -1)
    with pytest.raises(ValueError):
        count_tangled_direct(2, -2, LAZY)


def test_matching_regime_rejected_for_day_counts():
    with pytest.raises(ValueError):
        count_tangled_direct(2, 3, MATCHING)


def test_state_cap_raises_resource_error():
    with pytest.raises(ResourceLimitError) as exc:
        count_matchings_prefix(4, 30, state_cap=5)
    assert exc.value.cap == 5


def test_brute_force_bound_guard():
    with pytest.raises(BruteForceBoundError):
        enumerate_day_walks(2, 9, LAZY)
    with pytest.raises(BruteForceBoundError):
        count_day_walks_brute(2, 12, LAZY, bound=10)
    # a raised bound is honored
    assert count_day_walks_brute(2, 9, ENERGETIC, bound=9) == count_tangled_direct(
        2, 9, ENERGETIC
    )
