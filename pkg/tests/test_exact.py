import math

import numpy as np
import pytest
from scipy.special import logsumexp

from ewens_pitman import (
    log_sum,
    markov_log_pmf_rows,
    mean_exact,
    pmf_formula,
    pmf_markov,
    tail_exact,
    validate_params,
)


class TestMarkov:
    def test_single_observation(self):
        t = pmf_markov(validate_params(0.4, 2.0), 1)
        assert math.exp(t.log_pmf[1]) == 1.0

    def test_two_observations(self):
        # second draw founds a new type with probability (theta+alpha)/(theta+1)
        alpha, theta = 0.5, 1.0
        t = pmf_markov(validate_params(alpha, theta), 2)
        p_new = (theta + alpha) / (theta + 1.0)
        assert math.exp(t.log_pmf[2]) == pytest.approx(p_new, rel=1e-14)
        assert math.exp(t.log_pmf[1]) == pytest.approx(1.0 - p_new, rel=1e-14)

    def test_three_observations_by_hand(self):
        # enumerate the chain transitions directly
        alpha, theta = 0.3, 0.7
        p2_new = (theta + alpha) / (theta + 1.0)
        p11 = 1.0 - p2_new
        # from (m=2, k=1): grow with (theta+alpha)/(theta+2)
        g1 = (theta + alpha) / (theta + 2.0)
        # from (m=2, k=2): grow with (theta+2 alpha)/(theta+2)
        g2 = (theta + 2.0 * alpha) / (theta + 2.0)
        expected = {
            1: p11 * (1.0 - g1),
            2: p11 * g1 + p2_new * (1.0 - g2),
            3: p2_new * g2,
        }
        t = pmf_markov(validate_params(alpha, theta), 3)
        for k, v in expected.items():
            assert math.exp(t.log_pmf[k]) == pytest.approx(v, rel=1e-14)

    def test_rows_are_normalised_and_finite(self):
        rows = markov_log_pmf_rows(validate_params(0.3, 0.5), 300)
        for m in (1, 10, 100, 300):
            row = rows[m]
            assert np.all(np.isfinite(row[1:]))
            assert np.exp(logsumexp(row[1:])) == pytest.approx(1.0, abs=1e-10)

    def test_deep_tail_stays_finite_at_large_n(self, dp_table):
        t = dp_table(0.5, 1.0, 2000)
        assert np.all(np.isfinite(t.log_pmf[1:]))
        # the extreme tail is far below linear-domain double range
        assert t.log_pmf[2000] < -1000.0


class TestFormula:
    def test_two_observations_by_hand(self):
        # coefficient times the cluster-sum probability, assembled manually
        t = pmf_formula(validate_params(0.5, 1.0), 2)
        # k=2: (2!/2!) * (theta/alpha)(theta/alpha+1)/(theta (theta+1)) * P(1)^2
        coeff2 = (2.0 * 3.0) / (1.0 * 2.0)
        assert math.exp(t.log_pmf[2]) == pytest.approx(coeff2 * 0.25, rel=1e-13)
        # k=1: (2!/1!) * (theta/alpha)/theta * P(X=2), P(X=2) = 1/8
        coeff1 = 2.0 * 2.0 / 1.0
        assert math.exp(t.log_pmf[1]) == pytest.approx(coeff1 * 0.125, rel=1e-13)

    def test_out_of_support(self):
        t = pmf_formula(validate_params(0.5, 1.0), 5)
        assert len(t.log_pmf) == 6  # k ranges over 1..5 only

    def test_normalisation(self, std_grid, conv_matrix):
        for alpha, theta in std_grid:
            t = pmf_formula(validate_params(alpha, theta), 120, conv=conv_matrix(alpha, 120))
            assert np.exp(logsumexp(t.log_pmf[1:])) == pytest.approx(1.0, abs=1e-10)

    def test_agrees_with_markov(self, std_grid, conv_matrix):
        for alpha, theta in std_grid:
            p = validate_params(alpha, theta)
            t1 = pmf_markov(p, 120)
            t2 = pmf_formula(p, 120, conv=conv_matrix(alpha, 120))
            assert np.max(np.abs(t1.log_pmf[1:] - t2.log_pmf[1:])) < 1e-8


class TestTail:
    def test_full_support_is_certain(self, dp_table):
        t = dp_table(0.5, 1.0, 200)
        assert tail_exact(t, 1) == pytest.approx(0.0, abs=1e-12)

    def test_two_observation_tail(self):
        t = pmf_markov(validate_params(0.5, 1.0), 2)
        assert tail_exact(t, 2) == pytest.approx(math.log(0.75), rel=1e-14)

    def test_single_term_tail(self, dp_table):
        t = dp_table(0.5, 1.0, 200)
        assert tail_exact(t, 200) == t.log_pmf[200]

    def test_matches_direct_logsumexp(self, dp_table):
        t = dp_table(0.5, 1.0, 200)
        for k0 in (50, 100, 150):
            assert tail_exact(t, k0) == pytest.approx(
                float(logsumexp(t.log_pmf[k0:])), abs=1e-12
            )

    @pytest.mark.parametrize("k0", [0, -3, 201])
    def test_out_of_range(self, k0, dp_table):
        with pytest.raises(IndexError):
            tail_exact(dp_table(0.5, 1.0, 200), k0)


class TestMean:
    def test_single_observation(self):
        assert mean_exact(pmf_markov(validate_params(0.2, 3.0), 1)) == 1.0

    def test_two_observations(self):
        # 1 * 0.25 + 2 * 0.75
        t = pmf_markov(validate_params(0.5, 1.0), 2)
        assert mean_exact(t) == pytest.approx(1.75, rel=1e-14)

    def test_matches_recursive_mean(self, dp_table):
        # E[K_{m+1}] = E[K_m] + (theta + alpha E[K_m]) / (theta + m)
        alpha, theta, n = 0.3, 1.0, 200
        mean = 1.0
        for m in range(1, n):
            mean += (theta + alpha * mean) / (theta + m)
        t = dp_table(alpha, theta, n)
        assert mean_exact(t) == pytest.approx(mean, rel=1e-12)

    def test_growth_is_bounded_and_settling(self, dp_table):
        # mean / n^alpha stays bounded and its doubling increments shrink
        alpha, theta = 0.5, 1.0
        ratios = [
            mean_exact(dp_table(alpha, theta, n)) / n**alpha
            for n in (50, 100, 200, 400, 800)
        ]
        assert all(0.1 < r < 10.0 for r in ratios)
        increments = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
        assert all(b < a for a, b in zip(increments, increments[1:]))
