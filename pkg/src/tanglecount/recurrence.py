"""Guessing, checking and unrolling linear recurrences with polynomial
coefficients.

A PRecurrence asserts sum_{j=0}^{r} p_j(n) * a(n+j) = 0 for all n >= 0,
with integer polynomials p_j.  ``guess_recurrence`` finds the minimal
(order, degree) recurrence, in that lexicographic priority, that a given
prefix satisfies: the fit is an exact rational nullspace computation, and
a candidate must additionally hold on ``verify_margin`` trailing terms
that the fit never saw.  Shapes are pre-screened by rank over a fixed
word-size prime, which can only discard shapes that provably have no
rational fit; every returned recurrence is re-verified exactly on the
full input.

``extend_sequence`` then unrolls a recurrence with exact integer
divisions, which is how counting sequences reach n = 1000 and beyond.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .errors import (
    InsufficientTermsError,
    IntegrityError,
    SingularLeadingCoefficientError,
)

try:  # exact rationals: GMP-backed when available, stdlib otherwise
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as _rational

_FILTER_PRIME = 2147483647  # Mersenne prime 2^31 - 1; products fit in int64


def _poly_eval(coeffs: Sequence[int], n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class PRecurrence:
    """sum_j p_j(n) a(n+j) = 0; coeff_polys[j] lists p_j constant-first.

    All polynomials are stored with the same length degree+1.  Canonical
    form (as produced by ``canonical``): coefficients collectively
    primitive and the leading nonzero coefficient of p_r positive.
    """

    coeff_polys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        polys = tuple(tuple(int(c) for c in p) for p in self.coeff_polys)
        if len(polys) < 2:
            raise ValueError("a recurrence needs order >= 1")
        width = len(polys[0])
        if width < 1 or any(len(p) != width for p in polys):
            raise ValueError("coefficient polynomials must share one length >= 1")
        if not any(polys[-1]):
            raise ValueError("the leading polynomial p_r must be nonzero")
        object.__setattr__(self, "coeff_polys", polys)

    @property
    def order(self) -> int:
        return len(self.coeff_polys) - 1

    @property
    def degree(self) -> int:
        best = 0
        for p in self.coeff_polys:
            for s in range(len(p) - 1, -1, -1):
                if p[s]:
                    best = max(best, s)
                    break
        return best

    def canonical(self) -> "PRecurrence":
        """Trim to the true degree, divide out the content, fix the sign."""
        d = self.degree
        polys = [list(p[: d + 1]) for p in self.coeff_polys]
        g = 0
        for p in polys:
            for c in p:
                g = gcd(g, c)
        if g > 1:
            polys = [[c // g for c in p] for p in polys]
        lead = next(c for c in reversed(polys[-1]) if c)
        if lead < 0:
            polys = [[-c for c in p] for p in polys]
        return PRecurrence(tuple(tuple(p) for p in polys))

    def apply(self, values: Sequence[int], n: int) -> int:
        """The left-hand side sum_j p_j(n) values[n+j]."""
        return sum(
            _poly_eval(p, n) * values[n + j]
            for j, p in enumerate(self.coeff_polys)
        )

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "coeff_polys": [[str(c) for c in p] for p in self.coeff_polys],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PRecurrence":
        polys = tuple(
            tuple(int(c) for c in p) for p in data["coeff_polys"]
        )
        rec = cls(polys)
        if "order" in data and int(data["order"]) != rec.order:
            raise ValueError(
                f"declared order {data['order']} != actual {rec.order}"
            )
        return rec


@dataclass(frozen=True)
class GuessConfig:
    """Search bounds and the extra-equation safety margin."""

    max_order: int = 8
    max_degree: int = 14
    verify_margin: int = 10

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.verify_margin < 10:
            raise ValueError("verify_margin must be >= 10")


def required_terms(cfg: GuessConfig) -> int:
    """Terms needed so even the largest shape has enough fit equations."""
    return (
        (cfg.max_order + 1) * (cfg.max_degree + 1)
        + cfg.max_order
        + cfg.verify_margin
    )


@dataclass(frozen=True)
class RecurrenceCheck:
    passed: bool
    first_failing_n: int | None = None


def verify_recurrence(rec: PRecurrence, seq: Sequence[int]) -> RecurrenceCheck:
    """Check the recurrence exactly at every applicable index."""
    values = list(seq)
    r = rec.order
    if len(values) < r + 1:
        raise ValueError(
            f"need at least order+1 = {r + 1} terms, got {len(values)}"
        )
    for n in range(len(values) - r):
        if rec.apply(values, n) != 0:
            return RecurrenceCheck(False, n)
    return RecurrenceCheck(True, None)


def extend_sequence(
    rec: PRecurrence, seed: Sequence[int], n_max: int
) -> list[int]:
    """Unroll the recurrence from seed values up to index n_max.

    Every step divides by p_r(n); a zero value there raises
    SingularLeadingCoefficientError (the caller can fill that one term
    independently and resume), and a non-exact division means the seed
    does not satisfy the recurrence and raises IntegrityError.
    """
    r = rec.order
    values = list(int(v) for v in seed)
    if len(values) < r:
        raise ValueError(f"seed must have at least order = {r} terms")
    if n_max < len(values):
        return values[: n_max + 1]
    lead_poly = rec.coeff_polys[-1]
    while len(values) <= n_max:
        n = len(values) - r
        lead = _poly_eval(lead_poly, n)
        if lead == 0:
            raise SingularLeadingCoefficientError(n, r)
        acc = sum(
            _poly_eval(rec.coeff_polys[j], n) * values[n + j]
            for j in range(r)
        )
        q, rem = divmod(-acc, lead)
        if rem != 0:
            raise IntegrityError(
                f"recurrence step at n={n} is not an exact integer division; "
                f"the seed does not satisfy the recurrence"
            )
        values.append(q)
    return values


# ---------------------------------------------------------------------------
# Fitting machinery.

def _fit_columns(seq: Sequence[int], r: int, d: int, n: int) -> list[int]:
    """Row of the fit matrix for shift r, degree d, at index n.

    Column j*(d+1)+s carries n^s * a(n+j), matching the coefficient
    c_{j,s} of p_j.
    """
    row = []
    for j in range(r + 1):
        a = seq[n + j]
        power = 1
        for _s in range(d + 1):
            row.append(a * power)
            power *= n
    return row


def _mod_nullity(seq_mod: list[int], r: int, d: int, n_rows: int) -> int:
    """Nullity of the full fit system over the filter prime.

    A primitive integer relation stays nonzero mod the prime, so zero
    nullity here proves there is no rational fit and the shape can be
    skipped without any exact work.
    """
    p = _FILTER_PRIME
    cols = (r + 1) * (d + 1)
    mat = np.empty((n_rows, cols), dtype=np.int64)
    for n in range(n_rows):
        c = 0
        for j in range(r + 1):
            a = seq_mod[n + j]
            power = 1
            for _s in range(d + 1):
                mat[n, c] = (a * power) % p
                c += 1
                power = (power * n) % p
    rank = 0
    row = 0
    n_r = mat.shape[0]
    for col in range(cols):
        nz = np.nonzero(mat[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            mat[[row, piv]] = mat[[piv, row]]
        inv = pow(int(mat[row, col]), p - 2, p)
        mat[row] = (mat[row] * inv) % p
        coef = mat[:, col].copy()
        coef[row] = 0
        # entries < p and coefficients < p, so products stay below 2^62
        mat -= np.outer(coef, mat[row])
        mat %= p
        rank += 1
        row += 1
        if row == n_r:
            break
    return cols - rank


def _exact_nullspace_vector(rows: list[list[int]]) -> list[int] | None:
    """One rational nullspace vector of the row system, normalized with the
    smallest-index free variable set to 1 and cleared to primitive ints."""
    mat = [[_rational(x) for x in row] for row in rows]
    n_rows = len(mat)
    n_cols = len(rows[0])
    pivot_row_of_col: dict[int, int] = {}
    row = 0
    for col in range(n_cols):
        piv = None
        for i in range(row, n_rows):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        pivot = mat[row]
        for i in range(n_rows):
            if i != row and mat[i][col]:
                f = mat[i][col]
                target = mat[i]
                for c in range(col, n_cols):
                    target[c] -= f * pivot[c]
        pivot_row_of_col[col] = row
        row += 1
        if row == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivot_row_of_col]
    if not free:
        return None
    fc = free[0]
    sol = [_rational(0)] * n_cols
    sol[fc] = _rational(1)
    for col, pr in pivot_row_of_col.items():
        sol[col] = -mat[pr][fc]
    den = 1
    for x in sol:
        den = lcm(den, int(x.denominator))
    ints = [int(x * den) for x in sol]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def guess_recurrence(
    seq: Sequence[int], cfg: GuessConfig = GuessConfig()
) -> PRecurrence | None:
    """Minimal (order, degree) recurrence fitting the sequence, or None.

    Orders are searched outermost, degrees innermost, so the result is
    canonical for the given bounds.  The fit uses every equation except
    the last ``verify_margin`` ones, which the candidate must then pass;
    finally the whole input is re-checked exactly.
    """
    values = [int(v) for v in seq]
    need = required_terms(cfg)
    if len(values) < need:
        raise InsufficientTermsError(len(values), need)
    seq_mod = [v % _FILTER_PRIME for v in values]
    for r in range(1, cfg.max_order + 1):
        usable = len(values) - r
        for d in range(cfg.max_degree + 1):
            if _mod_nullity(seq_mod, r, d, usable) == 0:
                continue
            fit_rows = usable - cfg.verify_margin
            rows = [_fit_columns(values, r, d, n) for n in range(fit_rows)]
            vec = _exact_nullspace_vector(rows)
            if vec is None:
                continue
            polys = tuple(
                tuple(vec[j * (d + 1): (j + 1) * (d + 1)])
                for j in range(r + 1)
            )
            if not any(polys[-1]):
                continue
            rec = PRecurrence(polys).canonical()
            if verify_recurrence(rec, values).passed:
                return rec
    return None
