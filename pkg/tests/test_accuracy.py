import math
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpf

from carmlab.accuracy import (binomial_tail_exact, carmichael_prior,
                              empirical_proportion_distribution, normal_cdf,
                              posterior_composite_given, posterior_general,
                              prime_prior, z_score)
from carmlab.errors import DomainError
from carmlab.factoring import factorize


def quadrature_normal_cdf(z: float) -> float:
    """Oracle: composite Gauss-Legendre integration of the density from -40
    (the mass below -40 is ~7e-350, invisible at the tolerances used here)."""
    if z <= -40:
        return 0.0
    nodes, weights = np.polynomial.legendre.leggauss(50)
    total = 0.0
    edges = np.linspace(-40.0, z, max(2, int(math.ceil(z + 40)) + 1))
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        x = mid + half * nodes
        total += half * float(np.sum(weights * np.exp(-x * x / 2)))
    return total / math.sqrt(2 * math.pi)


class TestNormalCdf:
    def test_symmetry_point(self):
        assert normal_cdf(0) == mpf("0.5")

    def test_fifth_percentile(self):
        assert abs(normal_cdf(-1.6448536269514722) - mpf("0.05")) < mpf("1e-12")

    def test_symmetry_identity(self):
        for z in (-37.5, -8.0, -1.25, 0.3, 4.0, 21.0):
            assert abs(normal_cdf(z) + normal_cdf(-z) - 1) < mpf("1e-30")

    def test_monotone(self):
        grid = [-40 + i for i in range(81)]
        values = [normal_cdf(z) for z in grid]
        assert all(a <= b for a, b in zip(values, values[1:]))
        # strictly increasing wherever the upper tail is still representable
        # at the working precision (it saturates to 1 past z ~ 15)
        low = [v for z, v in zip(grid, values) if z <= 10]
        assert all(a < b for a, b in zip(low, low[1:]))

    def test_against_quadrature_oracle_spots(self):
        for z in (-3.0, -1.0, 0.0, 0.5, 2.0, 6.0):
            assert abs(float(normal_cdf(z)) - quadrature_normal_cdf(z)) < 1e-12

    def test_far_tail_keeps_magnitude(self):
        tail = normal_cdf(-40)
        assert 0 < tail < mpf("1e-300")


class TestZScore:
    def test_textbook_point(self):
        assert abs(z_score(Fraction(45, 100), 100) + 1) < mpf("1e-30")

    def test_threshold_at_mean(self):
        assert z_score(Fraction(1, 2), 7) == 0

    def test_half_width_grid_point(self):
        # t = 691^2 makes the z-score exactly -69.1
        z = z_score(Fraction(45, 100), 477481)
        assert abs(10 * z + 691) < mpf("1e-25")

    def test_validation(self):
        with pytest.raises(DomainError):
            z_score(Fraction(45, 100), 0)
        with pytest.raises(DomainError):
            z_score(Fraction(3, 2), 10)

    def test_tail_mass_decreases_with_t(self):
        masses = [normal_cdf(z_score(Fraction(45, 100), t))
                  for t in (10, 50, 100, 500, 1000, 5000)]
        assert all(a > b for a, b in zip(masses, masses[1:]))


class TestPriors:
    def test_carmichael_prior_small_scale_direct(self):
        with mp.workdps(60):
            direct = ((mpf(2)**20) ** mpf("0.34") - (mpf(2)**19) ** mpf("0.34")) / 2**19
        value = carmichael_prior(20)
        assert abs(value - direct) / direct < mpf("1e-15")

    def test_carmichael_prior_log_form_identity(self):
        with mp.workdps(60):
            rearranged = mp.exp(mpf("0.34") * 1024 * mp.log(2) - 1023 * mp.log(2)) \
                * (1 - mpf(2) ** mpf("-0.34"))
        value = carmichael_prior(1024)
        assert abs(value - rearranged) / rearranged < mpf("1e-15")

    def test_carmichael_prior_monotone_decreasing(self):
        values = [carmichael_prior(b) for b in (8, 16, 64, 256, 1024, 2048)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_prime_prior_1024(self):
        assert abs(prime_prior(1024) - mpf("0.0014075046697333598736")) < mpf("1e-15")

    def test_prime_prior_matches_unsimplified_form(self):
        with mp.workdps(60):
            b = 1024
            raw = (mpf(2)**b / mp.log(mpf(2)**b)
                   - mpf(2)**(b - 1) / mp.log(mpf(2)**(b - 1))) / mpf(2)**(b - 1)
        assert abs(prime_prior(1024) - raw) / raw < mpf("1e-15")

    def test_prime_prior_against_exact_count_at_10_bits(self):
        # 75 primes in [2^9, 2^10): the density law is approximate, so only
        # report-level closeness is expected here, not a strict tolerance
        exact = Fraction(75, 512)
        model = prime_prior(10)
        assert model > 0
        assert abs(float(model) - float(exact)) < 0.05

    def test_positivity(self):
        for b in range(8, 2049, 128):
            assert prime_prior(b) > 0

    def test_small_bit_length_rejected(self):
        for fn in (carmichael_prior, prime_prior):
            with pytest.raises(DomainError):
                fn(7)


class TestPosteriors:
    def test_worst_case_1024_bits_near_one(self):
        t = 503791  # floor((ln 2^1024)^2)
        for build in (posterior_composite_given, posterior_general):
            report = build(t, threshold=Fraction(45, 100), bit_length=1024)
            assert report.posterior >= 1 - mpf("1e-6")

    def test_single_sample_cannot_separate(self):
        report = posterior_composite_given(1)
        assert report.posterior < mpf("1e-100")

    def test_no_coprime_witness_term_reduces(self):
        report = posterior_composite_given(50, fraction_A=Fraction(1, 3),
                                           fraction_B=Fraction(0))
        with mp.workdps(50):
            p = report.p
            expected = p + (1 - p) * (1 - (mpf(1) / 3) ** 50)
        assert abs(report.likelihood_given_other - expected) < mpf("1e-40")

    def test_general_posterior_dominates(self):
        for t in (10, 100, 1000):
            for bits in (64, 256, 1024):
                general = posterior_general(t, bit_length=bits).posterior
                composite = posterior_composite_given(t, bit_length=bits).posterior
                assert general >= composite

    def test_log_space_consistency(self):
        # recompute the posterior through logarithms and compare
        report = posterior_composite_given(2000, bit_length=256)
        with mp.workdps(50):
            log_prior = mp.log(report.prior_carmichael)
            log_other = mp.log(1 - report.prior_carmichael) \
                + mp.log(report.likelihood_given_other)
            log_posterior = log_prior - mp.log(mp.exp(log_prior) + mp.exp(log_other))
            assert abs(mp.exp(log_posterior) - report.posterior) / report.posterior \
                < mpf("1e-9")

    def test_degenerate_fraction(self):
        report = posterior_composite_given(10, fraction_A=Fraction(1), fraction_B=Fraction(0))
        assert report.p == 1
        assert report.z == mp.inf

    def test_inconsistent_fractions_rejected(self):
        with pytest.raises(DomainError):
            posterior_composite_given(10, fraction_A=Fraction(2, 3),
                                      fraction_B=Fraction(1, 2))
        with pytest.raises(DomainError):
            posterior_composite_given(10, fraction_A=Fraction(3, 2))

    def test_intermediates_recorded(self):
        report = posterior_general(100)
        record = report.to_json_dict()
        for key in ("sigma", "z", "p", "prior_carmichael", "prior_prime",
                    "likelihood_given_other", "posterior"):
            assert key in record
        assert record["model"] == "general"
        assert report.sigma > 0


class TestEmpiricalDistribution:
    def test_classic_carmichael_statistics(self):
        hist = empirical_proportion_distribution(561, factorize(561), t=40,
                                                 trials=2000, seed=1)
        standard_error = hist.sigma_model / math.sqrt(2000)
        assert abs(hist.mean - 240 / 560) <= 3 * standard_error
        assert abs(hist.stddev - hist.sigma_model) <= 0.1 * hist.sigma_model
        assert hist.expected_mean == Fraction(240, 560)

    def test_counts_partition_trials(self):
        hist = empirical_proportion_distribution(91, factorize(91), t=10,
                                                 trials=300, seed=4)
        assert sum(hist.counts) == 300
        assert len(hist.counts) == 11

    def test_single_draw_is_bernoulli(self):
        hist = empirical_proportion_distribution(561, t=1, trials=200, seed=3)
        assert len(hist.counts) == 2
        assert sum(hist.counts) == 200

    def test_expected_stats_absent_for_plain_composites(self):
        hist = empirical_proportion_distribution(21, factorize(21), t=5,
                                                 trials=50, seed=0)
        assert hist.expected_mean is None and hist.sigma_model is None

    def test_prime_expected_mean_is_zero(self):
        hist = empirical_proportion_distribution(97, factorize(97), t=5,
                                                 trials=50, seed=0)
        assert hist.expected_mean == 0
        assert hist.counts[0] == 50

    def test_determinism(self):
        a = empirical_proportion_distribution(561, t=11, trials=100, seed=9)
        b = empirical_proportion_distribution(561, t=11, trials=100, seed=9)
        assert a == b

    def test_csv_rows(self):
        hist = empirical_proportion_distribution(561, t=4, trials=20, seed=0)
        rows = hist.csv_rows()
        assert rows[0][:2] == (0.0, 0.25)
        assert [count for _, _, count in rows] == list(hist.counts)

    def test_validation(self):
        with pytest.raises(DomainError):
            empirical_proportion_distribution(2, t=5, trials=10)
        with pytest.raises(DomainError):
            empirical_proportion_distribution(561, t=5, trials=0)


class TestBinomialTailExact:
    def test_tiny_cases(self):
        assert binomial_tail_exact(Fraction(1, 2), 2, Fraction(1, 2)) == Fraction(1, 4)
        assert binomial_tail_exact(Fraction(1, 2), 4, Fraction(1, 2)) == Fraction(5, 16)

    def test_strict_inequality_at_integer_boundary(self):
        # k/t < 1/2 excludes k = 2 at t = 4
        value = binomial_tail_exact(Fraction(1, 2), 4, Fraction(1, 2))
        assert value == Fraction(math.comb(4, 0) + math.comb(4, 1), 16)

    def test_normal_approximation_error_is_small(self):
        exact = binomial_tail_exact(Fraction(45, 100), 2000, Fraction(1, 2))
        approx = normal_cdf(z_score(Fraction(45, 100), 2000))
        assert abs(float(exact) - float(approx)) < 0.02

    def test_validation(self):
        with pytest.raises(DomainError):
            binomial_tail_exact(Fraction(45, 100), 0, Fraction(1, 2))
        with pytest.raises(DomainError):
            binomial_tail_exact(Fraction(45, 100), 20_000, Fraction(1, 2))
        with pytest.raises(DomainError):
            binomial_tail_exact(Fraction(45, 100), 10, Fraction(3, 2))
