"""Transform tests: frozen hand expansions, round trips, and the
cross-module pipeline equalities."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglecount import (
    CountSequence,
    CoverageError,
    StepRegime,
    binomial_row,
    count_matchings_prefix,
    count_tangled_direct,
    count_tangled_prefix,
    inverse_binomial,
    matching_sequence,
    t_from_tilde,
    tilde_from_f,
)

F2 = CountSequence("f", 2, (1, 0, 1, 0, 2, 0, 5))


def f_sequence(k, n_max):
    return CountSequence("f", k, tuple(count_matchings_prefix(k, 2 * n_max)))


def test_binomial_row_frozen():
    assert binomial_row(0) == [1]
    assert binomial_row(4) == [1, 4, 6, 4, 1]
    assert sum(binomial_row(10)) == 1024


@given(n=st.integers(0, 60))
def test_binomial_row_matches_comb(n):
    assert binomial_row(n) == [math.comb(n, i) for i in range(n + 1)]


def test_tilde_from_f_frozen():
    assert tilde_from_f(F2, 3).values == (1, 1, 3, 11)
    assert tilde_from_f(F2, 0).values == (1,)
    f3 = f_sequence(3, 2)
    assert tilde_from_f(f3, 2)[2] == 4  # f(4) + 2 f(3) + f(2) = 3 + 0 + 1


def test_t_from_tilde_frozen():
    tt = CountSequence("t_tilde", 2, (1, 1, 3, 11))
    assert t_from_tilde(tt, 3).values == (1, 2, 6, 24)
    assert t_from_tilde(tt, 0).values == (1,)
    assert t_from_tilde(tt, 1)[1] == count_tangled_direct(
        2, 1, StepRegime.LAZY_ENERGETIC_DAYS
    )


def test_inverse_binomial_frozen():
    assert inverse_binomial([1, 2, 6, 24]) == [1, 1, 3, 11]
    assert inverse_binomial([1]) == [1]
    assert inverse_binomial([1, 1, 1, 1]) == [1, 0, 0, 0]


def test_inverse_binomial_on_count_sequence():
    tt = CountSequence("t_tilde", 2, (1, 1, 3, 11))
    t = t_from_tilde(tt, 3)
    back = inverse_binomial(t)
    assert back.label == "t_tilde"
    assert back.values == tt.values


@settings(deadline=None)
@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=25))
def test_round_trip_property(values):
    transformed = [
        sum(math.comb(n, i) * values[n - i] for i in range(n + 1))
        for n in range(len(values))
    ]
    assert inverse_binomial(transformed) == values


@pytest.mark.parametrize("k", [2, 3, 4])
def test_pipeline_matches_day_dp(k):
    n_max = 6
    tt = tilde_from_f(f_sequence(k, n_max), n_max)
    t = t_from_tilde(tt, n_max)
    assert list(tt.values) == count_tangled_prefix(
        k, n_max, StepRegime.ENERGETIC_DAYS
    )
    assert list(t.values) == count_tangled_prefix(
        k, n_max, StepRegime.LAZY_ENERGETIC_DAYS
    )


def test_growth_sanity():
    for k in (2, 3):
        t = t_from_tilde(tilde_from_f(f_sequence(k, 10), 10), 10)
        assert all(t[n + 1] >= t[n] for n in range(10))


def test_coverage_errors_name_missing_index():
    with pytest.raises(CoverageError) as exc:
        tilde_from_f(F2, 5)
    assert exc.value.missing_index == 10
    tt = CountSequence("t_tilde", 2, (1, 1))
    with pytest.raises(CoverageError) as exc:
        t_from_tilde(tt, 3)
    assert exc.value.missing_index == 3


def test_label_misuse_is_an_error():
    tt = CountSequence("t_tilde", 2, (1, 1, 3))
    with pytest.raises(ValueError):
        tilde_from_f(tt, 1)
    with pytest.raises(ValueError):
        t_from_tilde(F2, 1)
    with pytest.raises(ValueError):
        inverse_binomial(tt)


def test_count_sequence_validation():
    with pytest.raises(ValueError):
        CountSequence("t", 2, (2, 1))          # must start at 1
    with pytest.raises(ValueError):
        CountSequence("f", 2, (1, 5))          # odd index must vanish
    with pytest.raises(ValueError):
        CountSequence("t", 2, (1, -1))         # counts are nonnegative
    with pytest.raises(ValueError):
        CountSequence("g", 2, (1,))            # unknown label
    with pytest.raises(ValueError):
        CountSequence("t", 1, (1,))            # k >= 2


def test_matching_sequence_builder():
    seq = matching_sequence(3, [1, 1, 3, 14])
    assert seq.label == "f"
    assert seq.values == (1, 0, 1, 0, 3, 0, 14)
