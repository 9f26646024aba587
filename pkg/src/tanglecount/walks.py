"""Exact counting of confined lattice walks behind the diagram counts.

All counts here are over walks confined to the chamber
x_1 >= x_2 >= ... >= x_{k-1} >= 0, starting and ending at the origin,
with unit steps +-e_i.  Three counting modes are provided:

* ``count_matchings_prefix`` counts walks by single unit steps; the value
  at m steps is the number of k-noncrossing perfect matchings on m
  vertices (zero for odd m).
* ``count_tangled_direct`` counts walks by days, where a day is one unit
  step or an ordered pair of consecutive unit steps (both intermediate
  and final positions confined), optionally also a stay day.  Day counts
  at n days give the number of k-noncrossing tangled diagrams on n
  vertices, without isolated points (no stay days) or with them (stay
  days allowed).
* ``enumerate_day_walks`` / ``count_day_walks_brute`` list or count the
  same day walks by exhaustive tree search, independent of the DP, as a
  test oracle.

States are tuples of k-1 weakly decreasing nonnegative ints.  DP layers
are plain dicts mapping state to count; an absent key means count zero.
All functions are pure.
"""

from __future__ import annotations

import enum
from typing import Iterator

from .errors import BruteForceBoundError, ResourceLimitError

DEFAULT_STATE_CAP = 10_000_000
DEFAULT_BRUTE_FORCE_BOUND = 8

Step = tuple[int, int]            # (coordinate index, +1 or -1)
DayMove = tuple[Step, ...]        # () stay, (s,) single step, (s, t) pair
ChamberState = tuple[int, ...]


class StepRegime(enum.Enum):
    """How a walk is allowed to advance per tick.

    MATCHING_STEPS: one unit step per tick (walk length counted in steps).
    ENERGETIC_DAYS: per day, one unit step or two consecutive unit steps.
    LAZY_ENERGETIC_DAYS: per day, additionally allows staying in place.
    """

    MATCHING_STEPS = "matching-steps"
    ENERGETIC_DAYS = "energetic-days"
    LAZY_ENERGETIC_DAYS = "lazy-energetic-days"


def is_chamber_state(coords: tuple[int, ...]) -> bool:
    """True if coords is weakly decreasing and nonnegative."""
    if not coords:
        return False
    for a, b in zip(coords, coords[1:]):
        if a < b:
            return False
    return coords[-1] >= 0


def origin_state(k: int) -> ChamberState:
    _check_k(k)
    return (0,) * (k - 1)


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")


def legal_steps(state: ChamberState) -> list[tuple[ChamberState, Step]]:
    """All single unit steps from state that stay inside the chamber."""
    km1 = len(state)
    out = []
    for i in range(km1):
        if i == 0 or state[i - 1] > state[i]:
            out.append((state[:i] + (state[i] + 1,) + state[i + 1:], (i, +1)))
        below = state[i + 1] if i + 1 < km1 else 0
        if state[i] - 1 >= below:
            out.append((state[:i] + (state[i] - 1,) + state[i + 1:], (i, -1)))
    return out


def _apply_step(layer: dict, limit: int, cap: int) -> dict:
    """One unit-step relaxation of a DP layer.

    Drops result states whose coordinate sum exceeds ``limit`` (they could
    not return to the origin within the remaining budget).
    """
    out: dict = {}
    get = out.get
    for state, cnt in layer.items():
        km1 = len(state)
        for i in range(km1):
            if i == 0 or state[i - 1] > state[i]:
                up = state[i] + 1
                if sum(state) + 1 <= limit:
                    ns = state[:i] + (up,) + state[i + 1:]
                    out[ns] = get(ns, 0) + cnt
            below = state[i + 1] if i + 1 < km1 else 0
            if state[i] - 1 >= below:
                ns = state[:i] + (state[i] - 1,) + state[i + 1:]
                out[ns] = get(ns, 0) + cnt
        if len(out) > cap:
            raise ResourceLimitError(len(out), cap)
    return out


def count_matchings_prefix(
    k: int, m_max: int, *, state_cap: int = DEFAULT_STATE_CAP
) -> list[int]:
    """Counts of origin-to-origin chamber walks of 0..m_max unit steps.

    Entry m is the number of k-noncrossing perfect matchings on m
    vertices; odd entries are zero and entry 0 is 1 (empty walk).
    """
    _check_k(k)
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    origin = origin_state(k)
    layer = {origin: 1}
    values = [1]
    for done in range(m_max):
        layer = _apply_step(layer, m_max - done - 1, state_cap)
        values.append(layer.get(origin, 0))
    return values


def _merge(acc: dict, layer: dict) -> None:
    get = acc.get
    for state, cnt in layer.items():
        acc[state] = get(state, 0) + cnt


def count_tangled_prefix(
    k: int,
    n_max: int,
    regime: StepRegime,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[int]:
    """Day-level DP: counts of origin-to-origin day walks for 0..n_max days.

    A day applies the one-step relaxation S once (single step) or twice
    (pair of consecutive steps, intermediate position confined), so the
    day operator is S + S^2, plus the identity for the lazy regime.
    """
    _check_k(k)
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if regime is StepRegime.MATCHING_STEPS:
        raise ValueError(
            "matching-steps regime counts steps, not days; "
            "use count_matchings_prefix"
        )
    lazy = regime is StepRegime.LAZY_ENERGETIC_DAYS
    origin = origin_state(k)
    layer = {origin: 1}
    values = [1]
    for day in range(n_max):
        limit = 2 * (n_max - day - 1)
        # Intermediate positions of a two-step day may overshoot the
        # return cone by one before stepping back down.
        half = _apply_step(layer, limit + 1, state_cap)
        full = _apply_step(half, limit, state_cap)
        new: dict = dict(layer) if lazy else {}
        _merge(new, half)
        _merge(new, full)
        layer = {s: c for s, c in new.items() if sum(s) <= limit}
        if len(layer) > state_cap:
            raise ResourceLimitError(len(layer), state_cap)
        values.append(layer.get(origin, 0))
    return values


def count_tangled_direct(
    k: int,
    n: int,
    regime: StepRegime,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
) -> int:
    """Number of n-day origin-to-origin walks under the given day regime."""
    return count_tangled_prefix(k, n, regime, state_cap=state_cap)[n]


# ---------------------------------------------------------------------------
# Brute-force oracle: exhaustive tree search over day moves.

def _states_with_sum_at_most(km1: int, total: int) -> list[ChamberState]:
    out: list[ChamberState] = []

    def rec(prefix: ChamberState, upper: int, left: int) -> None:
        if len(prefix) == km1:
            out.append(prefix)
            return
        for v in range(min(upper, left) + 1):
            rec(prefix + (v,), v, left - v)

    rec((), total, total)
    return out


def _move_table(
    k: int, n: int, regime: StepRegime
) -> dict[ChamberState, list[tuple[int, ChamberState, DayMove]]]:
    """Per-state day moves as (successor sum, successor, move), sorted by sum.

    Sorting lets the search cut off every successor that cannot return to
    the origin in the remaining days with a single comparison.
    """
    table = {}
    for state in _states_with_sum_at_most(k - 1, n):
        moves: list[tuple[int, ChamberState, DayMove]] = []
        if regime is StepRegime.LAZY_ENERGETIC_DAYS:
            moves.append((sum(state), state, ()))
        for mid, step1 in legal_steps(state):
            moves.append((sum(mid), mid, (step1,)))
            if regime is not StepRegime.MATCHING_STEPS:
                for succ, step2 in legal_steps(mid):
                    moves.append((sum(succ), succ, (step1, step2)))
        moves.sort(key=lambda m: m[0])
        table[state] = moves
    return table


def _steps_per_day(regime: StepRegime) -> int:
    return 1 if regime is StepRegime.MATCHING_STEPS else 2


def iter_day_walks(
    k: int,
    n: int,
    regime: StepRegime,
    *,
    bound: int = DEFAULT_BRUTE_FORCE_BOUND,
) -> Iterator[tuple[DayMove, ...]]:
    """Yield every origin-to-origin walk of exactly n days (or n steps for
    the matching-steps regime), as a tuple of day moves.

    Exhaustive depth-first search; independent of the DP except for the
    trivial cannot-return cutoff sum(state) > steps_per_day * days_left.
    """
    _check_k(k)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > bound:
        raise BruteForceBoundError(n, bound)
    origin = origin_state(k)
    span = _steps_per_day(regime)
    table = _move_table(k, n, regime)
    walk: list[DayMove] = []

    def rec(state: ChamberState, days_left: int) -> Iterator[tuple[DayMove, ...]]:
        if days_left == 0:
            if state == origin:
                yield tuple(walk)
            return
        cutoff = span * (days_left - 1)
        for s, succ, move in table[state]:
            if s > cutoff:
                break
            walk.append(move)
            yield from rec(succ, days_left - 1)
            walk.pop()

    return rec(origin, n)


def enumerate_day_walks(
    k: int,
    n: int,
    regime: StepRegime,
    *,
    bound: int = DEFAULT_BRUTE_FORCE_BOUND,
) -> list[tuple[DayMove, ...]]:
    """Materialized list of iter_day_walks; length equals the DP count."""
    return list(iter_day_walks(k, n, regime, bound=bound))


def count_day_walks_brute(
    k: int,
    n: int,
    regime: StepRegime,
    *,
    bound: int = DEFAULT_BRUTE_FORCE_BOUND,
) -> int:
    """Count walks by the same exhaustive search, without materializing
    them (the full list can reach gigabytes near the bound)."""
    _check_k(k)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > bound:
        raise BruteForceBoundError(n, bound)
    origin = origin_state(k)
    span = _steps_per_day(regime)
    table = _move_table(k, n, regime)

    def rec(state: ChamberState, days_left: int) -> int:
        if days_left == 0:
            return 1 if state == origin else 0
        cutoff = span * (days_left - 1)
        total = 0
        for s, succ, _move in table[state]:
            if s > cutoff:
                break
            total += rec(succ, days_left - 1)
        return total

    return rec(origin, n)
