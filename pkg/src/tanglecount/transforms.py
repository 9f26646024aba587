"""Binomial-convolution transforms between the three counting sequences.

With f(m) the matching counts (by vertices m), the diagram counts follow
by two exact convolutions:

    t_tilde(n) = sum_{i=0}^{n} C(n,i) * f(2n - i)      (no isolated points)
    t(n)       = sum_{i=0}^{n} C(n,i) * t_tilde(n - i)  (isolated points allowed)

The second is the plain binomial transform; ``inverse_binomial`` undoes it
for round-trip checking.  All arithmetic is exact big-integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, overload

from .errors import CoverageError

LABELS = ("f", "t_tilde", "t")


@dataclass(frozen=True)
class CountSequence:
    """A labeled counting sequence indexed from 0.

    label "f": index is vertices m of a matching (odd entries are zero).
    label "t_tilde" / "t": index is vertices n of a diagram.
    """

    label: str
    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if not self.values:
            raise ValueError("values must be nonempty")
        if self.values[0] != 1:
            raise ValueError(f"values[0] must be 1, got {self.values[0]}")
        for i, v in enumerate(self.values):
            if v < 0:
                raise ValueError(f"counts must be nonnegative; values[{i}] = {v}")
            if self.label == "f" and i % 2 == 1 and v != 0:
                raise ValueError(f"f must vanish at odd indices; values[{i}] = {v}")
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    @property
    def last_index(self) -> int:
        return len(self.values) - 1


# Rows of Pascal's triangle, grown on demand by additions only (no
# factorials, no divisions).
_pascal: list[tuple[int, ...]] = [(1,)]


def binomial_row(n: int) -> list[int]:
    """[C(n,0), ..., C(n,n)], exact."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    while len(_pascal) <= n:
        prev = _pascal[-1]
        row = (1,) + tuple(prev[i] + prev[i + 1] for i in range(len(prev) - 1)) + (1,)
        _pascal.append(row)
    return list(_pascal[n])


def _require_label(seq: CountSequence, label: str, op: str) -> None:
    if seq.label != label:
        raise ValueError(f"{op} expects a {label!r} sequence, got {seq.label!r}")


def tilde_from_f(f_seq: CountSequence, n_max: int) -> CountSequence:
    """t_tilde(n) = sum_i C(n,i) f(2n-i) for n = 0..n_max."""
    _require_label(f_seq, "f", "tilde_from_f")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if f_seq.last_index < 2 * n_max:
        raise CoverageError("f sequence", 2 * n_max, f_seq.last_index)
    values = []
    for n in range(n_max + 1):
        row = binomial_row(n)
        values.append(sum(row[i] * f_seq[2 * n - i] for i in range(n + 1)))
    return CountSequence("t_tilde", f_seq.k, tuple(values))


def t_from_tilde(tilde_seq: CountSequence, n_max: int) -> CountSequence:
    """t(n) = sum_i C(n,i) t_tilde(n-i) for n = 0..n_max."""
    _require_label(tilde_seq, "t_tilde", "t_from_tilde")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if tilde_seq.last_index < n_max:
        raise CoverageError("t_tilde sequence", n_max, tilde_seq.last_index)
    values = []
    for n in range(n_max + 1):
        row = binomial_row(n)
        values.append(sum(row[i] * tilde_seq[n - i] for i in range(n + 1)))
    return CountSequence("t", tilde_seq.k, tuple(values))


@overload
def inverse_binomial(seq: CountSequence) -> CountSequence: ...
@overload
def inverse_binomial(seq: Sequence[int]) -> list[int]: ...


def inverse_binomial(seq):
    """Inverse of the binomial transform: a(n) = sum_i (-1)^i C(n,i) b(n-i).

    Accepts a "t" CountSequence (returning the "t_tilde" one) or any plain
    integer sequence (returning a list).
    """
    if isinstance(seq, CountSequence):
        _require_label(seq, "t", "inverse_binomial")
        vals = seq.values
        out = _inverse_binomial_values(vals)
        return CountSequence("t_tilde", seq.k, tuple(out))
    return _inverse_binomial_values(tuple(seq))


def _inverse_binomial_values(vals: tuple[int, ...]) -> list[int]:
    out = []
    for n in range(len(vals)):
        row = binomial_row(n)
        sign = 1
        acc = 0
        for i in range(n + 1):
            acc += sign * row[i] * vals[n - i]
            sign = -sign
        out.append(acc)
    return out


def matching_sequence(k: int, even_values: Sequence[int]) -> CountSequence:
    """Build an "f" CountSequence from values at even indices only.

    even_values[j] is the count on 2j vertices; odd positions are filled
    with zeros.
    """
    values = []
    for j, v in enumerate(even_values):
        values.append(v)
        values.append(0)
    return CountSequence("f", k, tuple(values[:-1]))
