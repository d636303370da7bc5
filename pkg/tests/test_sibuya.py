import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import gammaln

from ewens_pitman import (
    BranchCutError,
    convolution_log_matrix,
    convolve_power,
    generating_function,
    log_rising,
    pmf_table,
    validate_params,
)


def brute_force_pmf(alpha: float, j: int) -> float:
    """alpha (1-alpha)(2-alpha)...(j-1-alpha) / j! by direct product."""
    out = alpha
    for i in range(1, j):
        out *= (i - alpha) / (i + 1)
    return out


def brute_force_convolution(alpha: float, k: int, m: int) -> float:
    """P(X_1 + ... + X_k = m) by explicit enumeration of compositions."""
    total = 0.0
    for parts in itertools.product(range(1, m - k + 2), repeat=k):
        if sum(parts) == m:
            prob = 1.0
            for j in parts:
                prob *= brute_force_pmf(alpha, j)
            total += prob
    return total


class TestPmfTable:
    @pytest.mark.parametrize(
        "j,expected", [(1, 0.5), (2, 0.125), (3, 0.0625)]
    )
    def test_small_values_alpha_half(self, j, expected):
        t = pmf_table(validate_params(0.5, 1.0), 5)
        assert math.exp(t.log_p[j]) == pytest.approx(expected, rel=1e-14)

    def test_first_mass_is_alpha_exactly(self):
        for alpha in (0.1, 0.37, 0.5, 0.9):
            t = pmf_table(validate_params(alpha, 1.0), 3)
            assert abs(math.exp(t.log_p[1]) - alpha) <= np.spacing(alpha)

    def test_recurrence_matches_closed_form(self):
        # closed form: log alpha + log rising(1-alpha, j-1) - log j!
        for alpha in np.arange(0.1, 0.95, 0.1):
            t = pmf_table(validate_params(alpha, 1.0), 50)
            for j in range(1, 51):
                direct = (
                    math.log(alpha)
                    + log_rising(1.0 - alpha, j - 1.0)
                    - gammaln(j + 1.0)
                )
                assert abs(t.log_p[j] - direct) < 1e-10

    def test_strictly_decreasing_and_substochastic(self):
        for alpha in (0.2, 0.5, 0.8):
            t = pmf_table(validate_params(alpha, 1.0), 200)
            assert np.all(np.diff(t.log_p[1:]) < 0.0)
            assert np.exp(t.log_p[1:]).sum() <= 1.0 + 1e-12


class TestGeneratingFunction:
    def test_at_zero(self):
        assert generating_function(0.37, 0.0) == 0.0

    def test_near_one(self):
        assert generating_function(0.5, 1.0 - 1e-14) == pytest.approx(1.0, abs=1e-6)

    def test_closed_point(self):
        assert generating_function(0.5, 0.75) == pytest.approx(0.5, rel=1e-14)

    @pytest.mark.parametrize("z", [1.0, 1.5, 100.0])
    def test_branch_cut_rejected(self, z):
        with pytest.raises(BranchCutError):
            generating_function(0.5, z)

    def test_complex_off_cut(self):
        val = generating_function(0.5, 0.5 + 0.25j)
        direct = 1.0 - (1.0 - (0.5 + 0.25j)) ** 0.5
        assert abs(val - direct) < 1e-14

    @pytest.mark.parametrize("z", [0.3, 0.6, 0.9])
    def test_partial_sums_converge(self, z):
        # sum_{j<=J} P(j) z^j approaches 1 - (1-z)^alpha within the tail bound
        alpha = 0.4
        J = 400
        t = pmf_table(validate_params(alpha, 1.0), J)
        partial = float(np.sum(np.exp(t.log_p[1:]) * z ** np.arange(1, J + 1)))
        tail_mass = 1.0 - float(np.sum(np.exp(t.log_p[1:])))
        bound = tail_mass * z ** (J + 1) + 1e-12
        assert abs(partial - generating_function(alpha, z).real) <= bound


class TestConvolvePower:
    def test_two_fold_examples(self):
        t = pmf_table(validate_params(0.5, 1.0), 6)
        conv = convolve_power(t, 2, 6)
        assert math.exp(conv.log_q[2]) == pytest.approx(0.25, rel=1e-13)
        assert math.exp(conv.log_q[3]) == pytest.approx(0.125, rel=1e-13)

    def test_support_starts_at_k(self):
        t = pmf_table(validate_params(0.3, 1.0), 6)
        conv = convolve_power(t, 3, 6)
        assert conv.log_q[2] == -np.inf
        assert np.all(np.isneginf(conv.log_q[:3]))
        assert np.all(np.isfinite(conv.log_q[3:]))

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_enumeration(self, alpha, k):
        n_max = 8
        t = pmf_table(validate_params(alpha, 1.0), n_max)
        conv = convolve_power(t, k, n_max)
        for m in range(k, n_max + 1):
            expected = brute_force_convolution(alpha, k, m)
            assert math.exp(conv.log_q[m]) == pytest.approx(expected, rel=1e-11)

    def test_substochastic_with_tail_deficit(self):
        t = pmf_table(validate_params(0.5, 1.0), 100)
        conv = convolve_power(t, 7, 100)
        mass = np.exp(conv.log_q[np.isfinite(conv.log_q)]).sum()
        assert mass < 1.0  # heavy tail: truncation leaves real deficit
        assert mass > 0.5

    @pytest.mark.parametrize("k1,k2", [(1, 2), (2, 3), (4, 4)])
    def test_convolution_consistency(self, k1, k2, conv_matrix):
        # conv(k1 + k2) equals conv(conv(k1), conv(k2)) on the shared support
        rows = conv_matrix(0.5, 120)
        a, b, c = rows[k1], rows[k2], rows[k1 + k2]
        n_max = 120
        for m in range(k1 + k2, n_max + 1):
            js = np.arange(k1, m - k2 + 1)
            direct = a[js] + b[m - js]
            direct = direct[np.isfinite(direct)]
            ref = float(np.logaddexp.reduce(np.sort(direct)))
            assert abs(c[m] - ref) < 1e-10

    def test_matrix_rows_match_single_calls(self):
        t = pmf_table(validate_params(0.7, 1.0), 40)
        rows = convolution_log_matrix(t, 10, 40)
        for k in (1, 4, 10):
            single = convolve_power(t, k, 40)
            assert_allclose(rows[k], single.log_q, rtol=0, atol=1e-12)
