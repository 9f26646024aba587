"""Truncated formal power series over exact rationals.

A RationalSeries holds coefficients of z^0..z^N for a fixed truncation
order N.  Ring operations truncate to the smaller operand order; all
coefficients are fractions in lowest terms.  On top of the ring sit the
two independent oracles of this package:

* ``matching_counts_via_determinant``: the exponential generating
  function of the matching counts f(2n) equals the (k-1) x (k-1)
  determinant det[ I_{i-j}(2x) - I_{i+j}(2x) ] of modified Bessel
  functions I_m(2x) = sum_j x^{m+2j} / (j! (m+j)!), with I_{-m} = I_m.
  Extracting (2n)! times the x^{2n} coefficient must give integers.

* ``verify_functional_equation``: an exact identity tying the ordinary
  generating functions T(w) = sum t(n) w^n and F(z) = sum f(2n) z^{2n}.
  See the function docstring for its precise form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence, Union

from .errors import (
    CompositionError,
    CoverageError,
    IntegrityError,
    NonUnitSeriesError,
)
from .transforms import CountSequence

Rational = Union[int, Fraction]


class RationalSeries:
    """Immutable truncated power series with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rational]):
        if not coeffs:
            raise ValueError("a series needs at least the z^0 coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalSeries is immutable")

    @property
    def order(self) -> int:
        """Truncation order N: coefficients are known through z^N."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> Fraction:
        if not 0 <= j <= self.order:
            raise IndexError(f"coefficient {j} outside truncation order {self.order}")
        return self.coeffs[j]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all zero."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return None

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1])

    # -- ring operations (result order = min of operand orders) ----------

    def __add__(self, other):
        if isinstance(other, RationalSeries):
            n = min(self.order, other.order)
            return RationalSeries(
                [self.coeffs[j] + other.coeffs[j] for j in range(n + 1)]
            )
        if isinstance(other, (int, Fraction)):
            return RationalSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (RationalSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return RationalSeries(out)
        if isinstance(other, (int, Fraction)):
            return RationalSeries([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, RationalSeries) and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"RationalSeries([{head}{tail}], order={self.order})"

    def inverse(self) -> "RationalSeries":
        """Multiplicative inverse modulo z^(N+1); needs a unit constant term."""
        if not self.coeffs[0]:
            raise NonUnitSeriesError(
                "cannot invert a series with zero constant term"
            )
        n = self.order
        inv0 = 1 / self.coeffs[0]
        out = [Fraction(0)] * (n + 1)
        out[0] = inv0
        for m in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, m + 1):
                if self.coeffs[i]:
                    acc += self.coeffs[i] * out[m - i]
            out[m] = -acc * inv0
        return RationalSeries(out)

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """Substitution self(inner(z)); inner must have zero constant term."""
        if inner.coeffs[0]:
            raise CompositionError(
                "inner series of a composition must have zero constant term"
            )
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        # Horner in the truncated ring; outer coefficients beyond order n
        # contribute nothing because inner has positive valuation.
        out = RationalSeries([Fraction(0)] * (n + 1))
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out


def series(coeffs: Sequence[Rational], order: int | None = None) -> RationalSeries:
    """Series from polynomial coefficients, zero-padded to the given order."""
    coeffs = list(coeffs)
    if order is not None:
        if order + 1 < len(coeffs):
            coeffs = coeffs[: order + 1]
        else:
            coeffs = coeffs + [0] * (order + 1 - len(coeffs))
    return RationalSeries(coeffs)


def zero(order: int) -> RationalSeries:
    return series([0], order=order)


def one(order: int) -> RationalSeries:
    return series([1], order=order)


def identity(order: int) -> RationalSeries:
    """The series z."""
    return series([0, 1], order=order)


def bessel_series(m: int, order: int) -> RationalSeries:
    """I_m(2x) = sum_{j>=0} x^(m+2j) / (j! (m+j)!), truncated."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m} (use I_{{-m}} = I_m)")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    out = [Fraction(0)] * (order + 1)
    j = 0
    while m + 2 * j <= order:
        out[m + 2 * j] = Fraction(1, factorial(j) * factorial(m + j))
        j += 1
    return RationalSeries(out)


# ---------------------------------------------------------------------------
# Determinants over the truncated-series ring.

def _det_cofactor(rows: list[list[RationalSeries]], order: int) -> RationalSeries:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = zero(order)
    sign = 1
    for j in range(n):
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = rows[0][j] * _det_cofactor(minor, order)
        acc = acc + (term if sign > 0 else -term)
        sign = -sign
    return acc


def _det_bareiss(rows: list[list[RationalSeries]], order: int) -> RationalSeries:
    """Fraction-free elimination; divisions are by the previous pivot,
    which must be a unit.  Falls back to cofactor expansion when a pivot
    of positive valuation turns up (division would lose precision)."""
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev_inv: RationalSeries | None = None
    for r in range(n - 1):
        best = None  # (valuation, i, j)
        for i in range(r, n):
            for j in range(r, n):
                v = m[i][j].valuation()
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            return zero(order)  # remaining block is zero
        val, pi, pj = best
        if val > 0:
            return _det_cofactor(rows, order)
        if pi != r:
            m[pi], m[r] = m[r], m[pi]
            sign = -sign
        if pj != r:
            for row in m:
                row[pj], row[r] = row[r], row[pj]
            sign = -sign
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = m[r][r] * m[i][j] - m[i][r] * m[r][j]
                if prev_inv is not None:
                    num = num * prev_inv
                m[i][j] = num
        prev_inv = m[r][r].inverse()
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def series_determinant(rows: Sequence[Sequence[RationalSeries]]) -> RationalSeries:
    """Determinant of a square matrix of series, truncated to the smallest
    operand order."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    order = min(e.order for row in rows for e in row)
    m = [[e.truncate(order) for e in row] for row in rows]
    if n <= 2:
        return _det_cofactor(m, order)
    return _det_bareiss(m, order)


def matching_counts_via_determinant(k: int, order: int) -> list[int]:
    """Matching counts f(2n) for 2n <= order via the Bessel determinant.

    Expands det[ I_{i-j}(2x) - I_{i+j}(2x) ], i,j = 1..k-1, over the
    truncated ring and returns (2n)! times each even coefficient.  Every
    such product must be an exact integer; anything else is a bug.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    cache: dict[int, RationalSeries] = {}

    def bessel(m: int) -> RationalSeries:
        m = abs(m)  # I_{-m} = I_m
        if m not in cache:
            cache[m] = bessel_series(m, order)
        return cache[m]

    rows = [
        [bessel(i - j) - bessel(i + j) for j in range(1, k)]
        for i in range(1, k)
    ]
    det = series_determinant(rows)
    out = []
    for n2 in range(0, order + 1, 2):
        value = det.coeff(n2) * factorial(n2)
        if value.denominator != 1:
            raise IntegrityError(
                f"(2n)! * [x^{n2}] det is not an integer for k={k}: {value}"
            )
        out.append(int(value))
    return out


# ---------------------------------------------------------------------------
# Functional equation between the diagram and matching generating functions.

@dataclass(frozen=True)
class FunctionalEquationReport:
    k: int
    order: int
    passed: bool
    first_mismatch_order: int | None = None
    lhs_coefficient: Fraction | None = None
    rhs_coefficient: Fraction | None = None

    def __str__(self):
        if self.passed:
            return f"functional equation holds through z^{self.order} (k={self.k})"
        return (
            f"functional equation FAILS at z^{self.first_mismatch_order} "
            f"(k={self.k}): lhs={self.lhs_coefficient} rhs={self.rhs_coefficient}"
        )


def _values(seq, label: str):
    if isinstance(seq, CountSequence):
        if seq.label != label:
            raise ValueError(
                f"expected a {label!r} sequence, got {seq.label!r}"
            )
        return seq.values
    return tuple(seq)


def verify_functional_equation(
    k: int, order: int, t_seq, f_seq
) -> FunctionalEquationReport:
    """Check, coefficientwise through z^order, the exact identity

        T(z^2 / (1+z+z^2)) = g(z) + g(-z / (1+z)),

    where g(z) = (1+z+z^2)/(2+z) * F(z), T(w) = sum_n t(n) w^n and
    F(z) = sum_m f(m) z^m (odd entries of f vanish).

    The substitution w = z^2/(1+z+z^2) has two formal preimage branches,
    z itself and -z/(1+z); summing g over both is what coefficient
    extraction through the substitution produces, and the identity is
    equivalent to t(n) = [z^(2n)] (1+z+z^2)^n F(z) for every n.  Dropping
    the second branch leaves an identity that is false already at z^0
    (1 versus 1/2), so both are kept.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    t_vals = _values(t_seq, "t")
    f_vals = _values(f_seq, "f")
    need_t = order // 2  # the substitution has valuation 2
    if len(t_vals) - 1 < need_t:
        raise CoverageError("t sequence", need_t, len(t_vals) - 1)
    if len(f_vals) - 1 < order:
        raise CoverageError("f sequence", order, len(f_vals) - 1)

    n = order
    quad = series([1, 1, 1], order=n)          # 1 + z + z^2
    f_gf = series(f_vals[: n + 1], order=n)
    g = quad * series([2, 1], order=n).inverse() * f_gf
    subst = series([0, 0, 1], order=n) * quad.inverse()     # z^2/(1+z+z^2)
    conj = series([0, -1], order=n) * series([1, 1], order=n).inverse()
    t_poly = series(t_vals[: need_t + 1], order=n)
    lhs = t_poly.compose(subst)
    rhs = g + g.compose(conj)
    for j in range(n + 1):
        if lhs.coeff(j) != rhs.coeff(j):
            return FunctionalEquationReport(
                k, order, False, j, lhs.coeff(j), rhs.coeff(j)
            )
    return FunctionalEquationReport(k, order, True)
