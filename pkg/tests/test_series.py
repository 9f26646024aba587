"""Series-kernel tests: ring laws, inverse/composition contracts, the
Bessel determinant oracle, and the functional-equation verifier."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglecount import (
    CompositionError,
    CountSequence,
    CoverageError,
    NonUnitSeriesError,
    RationalSeries,
    bessel_series,
    count_matchings_prefix,
    matching_counts_via_determinant,
    series,
    series_determinant,
    t_from_tilde,
    tilde_from_f,
    verify_functional_equation,
)
from tanglecount.series import _det_cofactor

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def random_series(order):
    return st.lists(
        rationals, min_size=order + 1, max_size=order + 1
    ).map(RationalSeries)


def pipeline(k, n_max):
    f_vals = count_matchings_prefix(k, 2 * n_max)
    f_seq = CountSequence("f", k, tuple(f_vals))
    t_seq = t_from_tilde(tilde_from_f(f_seq, n_max), n_max)
    return t_seq, f_seq


# -- ring operations --------------------------------------------------------

def test_mul_frozen():
    a = series([1, 1], order=2)
    b = series([1, -1], order=2)
    assert a * b == series([1, 0, -1], order=2)


def test_additive_identity():
    a = series([3, Fraction(1, 2), 7], order=2)
    assert a + series([0], order=2) == a
    assert a + 0 == a


def test_truncation_order_is_min():
    a = series([1, 2, 3], order=5)
    b = series([1], order=3)
    assert (a + b).order == 3
    assert (a * b).order == 3
    assert (a - b).order == 3


@settings(deadline=None, max_examples=60)
@given(a=random_series(5), b=random_series(5), c=random_series(5))
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


# -- inverse ----------------------------------------------------------------

def test_inverse_frozen_period_three():
    inv = series([1, 1, 1], order=6).inverse()
    assert inv == series([1, -1, 0, 1, -1, 0, 1])


def test_inverse_of_one():
    assert series([1], order=4).inverse() == series([1], order=4)


def test_inverse_of_two_plus_z():
    inv = series([2, 1], order=2).inverse()
    assert inv == series([Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8)])


@settings(deadline=None, max_examples=60)
@given(a=random_series(6))
def test_inverse_is_two_sided(a):
    if not a.coeff(0):
        with pytest.raises(NonUnitSeriesError):
            a.inverse()
        return
    one_s = series([1], order=6)
    assert a * a.inverse() == one_s
    assert a.inverse() * a == one_s


def test_product_with_inverse_frozen():
    a = series([1, 1, 1], order=6)
    assert a * a.inverse() == series([1], order=6)


# -- composition ------------------------------------------------------------

def test_compose_identity_both_ways():
    outer = series([2, -1, Fraction(3, 5), 0, 1], order=4)
    z = series([0, 1], order=4)
    assert outer.compose(z) == outer
    assert z.compose(outer - outer.coeff(0)) == outer - outer.coeff(0)


def test_compose_with_substitution_map():
    # z applied to z^2/(1+z+z^2) returns the map itself
    n = 6
    subst = series([0, 0, 1], order=n) * series([1, 1, 1], order=n).inverse()
    assert series([0, 1], order=n).compose(subst) == subst
    assert subst == series([0, 0, 1, -1, 0, 1, -1])


def test_compose_polynomial():
    outer = series([1, 0, 1], order=3)  # 1 + z^2
    inner = series([0, 2], order=3)     # 2z
    assert outer.compose(inner) == series([1, 0, 4, 0])


def test_compose_requires_zero_constant_term():
    with pytest.raises(CompositionError):
        series([0, 1], order=3).compose(series([1, 1], order=3))


# -- Bessel series and the determinant oracle -------------------------------

def test_bessel_frozen():
    assert bessel_series(0, 4) == series(
        [1, 0, 1, 0, Fraction(1, 4)]
    )
    assert bessel_series(2, 2) == series([0, 0, Fraction(1, 2)])
    assert bessel_series(5, 4) == series([0], order=4)


def test_bessel_rejects_negative_order():
    with pytest.raises(ValueError):
        bessel_series(-1, 4)


def test_determinant_oracle_frozen():
    assert matching_counts_via_determinant(2, 4) == [1, 1, 2]
    assert matching_counts_via_determinant(3, 6) == [1, 1, 3, 14]


def test_determinant_constant_term_is_one():
    for k in (2, 3, 4, 5, 6):
        assert matching_counts_via_determinant(k, 0) == [1]


def test_determinant_matches_walk_dp():
    for k in (2, 3, 4):
        evens = matching_counts_via_determinant(k, 20)
        walk = count_matchings_prefix(k, 20)
        assert evens == [walk[2 * n] for n in range(11)]


@settings(deadline=None, max_examples=25)
@given(
    entries=st.lists(
        st.lists(
            st.lists(rationals, min_size=4, max_size=4),
            min_size=3,
            max_size=3,
        ),
        min_size=3,
        max_size=3,
    )
)
def test_bareiss_matches_cofactor(entries):
    # unit diagonal keeps the elimination inside the invertible case
    mat = []
    for i in range(3):
        row = []
        for j in range(3):
            coeffs = list(entries[i][j])
            if i == j:
                coeffs[0] = Fraction(1)
            row.append(RationalSeries(coeffs))
        mat.append(row)
    assert series_determinant(mat) == _det_cofactor(mat, 3)


def test_determinant_of_singular_matrix_is_zero():
    a = series([1, 2, 3], order=4)
    b = series([0, 1, 1], order=4)
    mat = [[a, a, b], [a, a, b], [b, b, a]]  # two equal rows
    assert series_determinant(mat) == series([0], order=4)


# -- functional equation ----------------------------------------------------

def test_functional_equation_passes_k2():
    t_seq, f_seq = pipeline(2, 10)
    report = verify_functional_equation(2, 10, t_seq, f_seq)
    assert report.passed
    assert report.first_mismatch_order is None


def test_functional_equation_detects_corruption():
    t_seq, f_seq = pipeline(2, 10)
    bad = list(t_seq.values)
    bad[5] += 1
    report = verify_functional_equation(2, 10, bad, f_seq)
    assert not report.passed
    assert report.first_mismatch_order is not None
    assert report.first_mismatch_order <= 10
    assert report.lhs_coefficient != report.rhs_coefficient


def test_functional_equation_passes_k3_order20():
    t_seq, f_seq = pipeline(3, 20)
    assert verify_functional_equation(3, 20, t_seq, f_seq).passed


def test_functional_equation_coverage_errors():
    t_seq, f_seq = pipeline(2, 10)
    with pytest.raises(CoverageError):
        verify_functional_equation(2, 30, t_seq, f_seq)
    with pytest.raises(CoverageError):
        verify_functional_equation(2, 25, list(t_seq.values), f_seq.values[:20])


def test_coefficient_extraction_identity():
    # independent form of the same identity:
    #   t(n) = [z^(2n)] (1+z+z^2)^n F(z)
    for k in (2, 3):
        n_max = 8
        t_seq, f_seq = pipeline(k, n_max)
        order = 2 * n_max
        f_gf = series(f_seq.values[: order + 1], order=order)
        power = series([1], order=order)
        quad = series([1, 1, 1], order=order)
        for n in range(n_max + 1):
            if n:
                power = power * quad
            assert (power * f_gf).coeff(2 * n) == t_seq[n], (k, n)
