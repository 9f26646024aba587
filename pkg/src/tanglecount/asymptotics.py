"""Numerical validation of the asymptotic law t(n) ~ c * n^-theta * gamma^n.

For the diagram counts the predicted constants are, as exact rationals,

    gamma  = 4(k-1)^2 + 2(k-1) + 1
    theta  = (k-1)^2 + (k-1)/2
    rho    = 1 / (2(k-1))            dominant singularity, matching GF
    tau    = rho^2 / (rho^2+rho+1)   dominant singularity, diagram GF

and tau * gamma = 1 exactly.  Estimators work on long exact sequences:
the ratio a(n+1)/a(n) behaves like gamma * (1 - theta/n + O(1/n^2)), so
Richardson extrapolation of the ratio sequence recovers gamma, and with
gamma known, n * (1 - r_n / gamma) recovers theta.  The constant c has no
known closed form and is reported as a numeric estimate plus a stability
spread.  Ratios of big integers are formed as exact rationals and rounded
once to high-precision floats (mpmath, 128-bit significand by default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

import mpmath
from mpmath import mp
from mpmath.libmp import from_rational

DEFAULT_PRECISION_BITS = 128
DEFAULT_RICHARDSON_DEPTH = 4
DEFAULT_CK_WINDOW = 200
MIN_PRECISION_BITS = 64


def _check_precision(bits: int) -> None:
    if bits < MIN_PRECISION_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")


def _mpf_exact_ratio(p: int, q: int) -> mpmath.mpf:
    """p/q rounded once to the current working precision."""
    return mp.make_mpf(from_rational(p, q, mp.prec, mpmath.libmp.round_nearest))


def _mpf_fraction(x: Fraction) -> mpmath.mpf:
    return _mpf_exact_ratio(x.numerator, x.denominator)


@dataclass(frozen=True)
class PredictedConstants:
    k: int
    growth: int
    exponent: Fraction
    rho: Fraction
    tau: Fraction


def predicted_constants(k: int) -> PredictedConstants:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    km1 = k - 1
    growth = 4 * km1 * km1 + 2 * km1 + 1
    exponent = Fraction(km1 * km1) + Fraction(km1, 2)
    rho = Fraction(1, 2 * km1)
    tau = rho * rho / (rho * rho + rho + 1)
    assert tau * growth == 1
    return PredictedConstants(k, growth, exponent, rho, tau)


def richardson_extrapolate(values: Sequence, start_index: int, depth: int):
    """Accelerate values[i] ~ v(start_index + i) assuming an asymptotic
    expansion in powers of 1/n; each level cancels one more power."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if len(values) < depth + 1:
        raise ValueError(
            f"need at least depth+1 = {depth + 1} values, got {len(values)}"
        )
    cur = [mpmath.mpf(v) if not isinstance(v, mpmath.mpf) else v for v in values]
    for level in range(1, depth + 1):
        cur = [
            ((start_index + i + level) * cur[i + 1] - (start_index + i) * cur[i])
            / level
            for i in range(len(cur) - 1)
        ]
    return cur[-1]


def _tail_start(seq: Sequence[int], needed: int, what: str) -> int:
    if len(seq) < needed:
        raise ValueError(
            f"{what} needs at least {needed} terms, got {len(seq)}"
        )
    start = len(seq) - needed
    for n in range(start, len(seq)):
        if seq[n] <= 0:
            raise ValueError(
                f"{what} needs positive trailing terms; seq[{n}] = {seq[n]}"
            )
    return start


def estimate_growth(
    seq: Sequence[int],
    depth: int = DEFAULT_RICHARDSON_DEPTH,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Extrapolated limit of a(n+1)/a(n) over the trailing window."""
    _check_precision(precision_bits)
    start = _tail_start(seq, depth + 2, "growth estimation")
    with mp.workprec(precision_bits):
        ratios = [
            _mpf_exact_ratio(seq[n + 1], seq[n])
            for n in range(start, len(seq) - 1)
        ]
        return richardson_extrapolate(ratios, start, depth)


def estimate_exponent(
    seq: Sequence[int],
    growth: int | Fraction,
    depth: int = DEFAULT_RICHARDSON_DEPTH,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Extrapolated limit of n * (1 - a(n+1) / (growth * a(n))).

    The growth rate is supplied exactly, not estimated, so the exponent
    measurement cannot inherit the growth measurement's error.
    """
    _check_precision(precision_bits)
    g = Fraction(growth)
    if g <= 0:
        raise ValueError("growth must be positive")
    start = _tail_start(seq, depth + 2, "exponent estimation")
    with mp.workprec(precision_bits):
        vals = []
        for n in range(start, len(seq) - 1):
            x = n * (1 - Fraction(seq[n + 1]) / (g * seq[n]))
            vals.append(_mpf_fraction(x))
        return richardson_extrapolate(vals, start, depth)


def estimate_joint(
    seq: Sequence[int],
    depth: int = DEFAULT_RICHARDSON_DEPTH,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Blind mode: estimate growth first, then the exponent against the
    estimated (not predicted) growth.  Used for honesty checks."""
    _check_precision(precision_bits)
    g = estimate_growth(seq, depth, precision_bits=precision_bits)
    start = _tail_start(seq, depth + 2, "exponent estimation")
    with mp.workprec(precision_bits):
        vals = []
        for n in range(start, len(seq) - 1):
            r = _mpf_exact_ratio(seq[n + 1], seq[n])
            vals.append(n * (1 - r / g))
        return g, richardson_extrapolate(vals, start, depth)


def ck_window_values(
    seq: Sequence[int],
    pred: PredictedConstants,
    window: int = DEFAULT_CK_WINDOW,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> list[mpmath.mpf]:
    """a(n) * n^theta / gamma^n over the trailing window, via log space so
    gamma^n never overflows."""
    _check_precision(precision_bits)
    if window < 2:
        raise ValueError("window must be >= 2")
    start = _tail_start(seq, min(window + 1, len(seq)), "constant estimation")
    start = max(start, 1)  # n = 0 has no n^theta factor
    with mp.workprec(precision_bits):
        theta = _mpf_fraction(pred.exponent)
        log_gamma = mp.log(mpmath.mpf(pred.growth))
        out = []
        for n in range(start, len(seq)):
            log_c = mp.log(mpmath.mpf(seq[n])) + theta * mp.log(n) - n * log_gamma
            out.append(mp.exp(log_c))
        return out


def estimate_ck(
    seq: Sequence[int],
    pred: PredictedConstants,
    depth: int = 3,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Extrapolated limit of the normalized sequence a(n) n^theta / gamma^n."""
    vals = ck_window_values(
        seq, pred, depth + 2, precision_bits=precision_bits
    )
    with mp.workprec(precision_bits):
        return richardson_extrapolate(
            vals[-(depth + 1):], len(seq) - depth - 1, depth
        )


@dataclass(frozen=True)
class AsymptoticsReport:
    k: int
    n_used: tuple[int, int]
    estimated_growth: mpmath.mpf
    estimated_exponent: mpmath.mpf
    estimated_ck: mpmath.mpf
    predicted: PredictedConstants
    relative_errors: dict = field(default_factory=dict)
    ck_window_spread: mpmath.mpf | None = None
    depth: int = DEFAULT_RICHARDSON_DEPTH
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if not self.estimated_ck > 0:
            raise ValueError("the constant estimate must be positive")

    def _digits(self) -> int:
        return ceil(self.precision_bits * 0.30103) + 3

    def to_json_dict(self) -> dict:
        d = self._digits()
        fmt = lambda x: mpmath.nstr(x, d)
        return {
            "k": self.k,
            "n_used": list(self.n_used),
            "estimated_growth": fmt(self.estimated_growth),
            "estimated_exponent": fmt(self.estimated_exponent),
            "estimated_ck": fmt(self.estimated_ck),
            "predicted": {
                "growth": self.predicted.growth,
                "exponent": str(self.predicted.exponent),
                "rho": str(self.predicted.rho),
                "tau": str(self.predicted.tau),
            },
            "relative_errors": {k: fmt(v) for k, v in self.relative_errors.items()},
            "ck_window_spread": fmt(self.ck_window_spread)
            if self.ck_window_spread is not None
            else None,
            "depth": self.depth,
            "precision_bits": self.precision_bits,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AsymptoticsReport":
        bits = int(data["precision_bits"])
        k = int(data["k"])
        with mp.workprec(bits):
            parse = lambda s: mpmath.mpf(s)
            pred = predicted_constants(k)
            declared = data["predicted"]
            if (
                pred.growth != int(declared["growth"])
                or pred.exponent != Fraction(declared["exponent"])
            ):
                raise ValueError("predicted constants do not match k")
            spread = data.get("ck_window_spread")
            return cls(
                k=k,
                n_used=tuple(int(x) for x in data["n_used"]),
                estimated_growth=parse(data["estimated_growth"]),
                estimated_exponent=parse(data["estimated_exponent"]),
                estimated_ck=parse(data["estimated_ck"]),
                predicted=pred,
                relative_errors={
                    key: parse(v) for key, v in data["relative_errors"].items()
                },
                ck_window_spread=parse(spread) if spread is not None else None,
                depth=int(data["depth"]),
                precision_bits=bits,
            )


def analyze(
    seq: Sequence[int],
    k: int,
    *,
    depth: int = DEFAULT_RICHARDSON_DEPTH,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    ck_window: int = DEFAULT_CK_WINDOW,
) -> AsymptoticsReport:
    """Full estimator run against the predicted constants for one k."""
    pred = predicted_constants(k)
    growth = estimate_growth(seq, depth, precision_bits=precision_bits)
    exponent = estimate_exponent(
        seq, pred.growth, depth, precision_bits=precision_bits
    )
    ck = estimate_ck(seq, pred, precision_bits=precision_bits)
    window = min(ck_window, len(seq) - 1)
    ck_vals = ck_window_values(seq, pred, window, precision_bits=precision_bits)
    with mp.workprec(precision_bits):
        lo, hi = min(ck_vals), max(ck_vals)
        spread = (hi - lo) / ((hi + lo) / 2)
        rel = {
            "growth": abs(growth - pred.growth) / pred.growth,
            "exponent": abs(exponent - _mpf_fraction(pred.exponent))
            / _mpf_fraction(pred.exponent),
        }
    n_used = (len(seq) - max(window + 1, depth + 2), len(seq) - 1)
    return AsymptoticsReport(
        k=k,
        n_used=n_used,
        estimated_growth=growth,
        estimated_exponent=exponent,
        estimated_ck=ck,
        predicted=pred,
        relative_errors=rel,
        ck_window_spread=spread,
        depth=depth,
        precision_bits=precision_bits,
    )
