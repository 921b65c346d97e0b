"""Tests for the exact statistics behind the acceptance tests."""

from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from scipy.stats import norm

from src.exceptions import ValidationError
from src.stats import (
    TestKind,
    TestSpec,
    binom_tail_lower,
    binom_tail_upper,
    deviation_moment_bound,
    deviation_second_moment,
    hypergeom_mean,
    hypergeom_pmf,
    hypergeom_pmf_exact,
    hypergeom_variance,
    inv_norm_cdf,
    norm_cdf,
    percent_point_lower,
    percent_point_upper,
    run_test_T,
    run_test_zero,
    soundness_constant,
    threshold_table,
    zero_test_bound,
    zero_test_conditional,
    zero_test_worst_case,
)

BETA_ONE_SIGMA = float(norm.sf(1.0))


class TestBinomial:
    """Test suite for binomial tails and percent points."""

    def test_single_term(self):
        """Test P(X >= 2) for two fair coins."""
        assert binom_tail_upper(2, 0.5, 2) == pytest.approx(0.25)

    def test_full_mass(self):
        """Test P(X >= 0) is one."""
        assert binom_tail_upper(17, 0.3, 0) == pytest.approx(1.0)

    def test_tail_against_enumeration(self):
        """Test the tail matches enumeration of all 2^10 outcomes."""
        count = sum(1 for bits in product((0, 1), repeat=10) if sum(bits) >= 9)
        assert binom_tail_upper(10, 0.5, 9) == pytest.approx(count / 1024, abs=1e-15)
        assert count == 11

    def test_lower_tail_complements_upper(self):
        """Test P(X <= x) + P(X >= x + 1) = 1."""
        assert binom_tail_lower(20, 0.3, 5) + binom_tail_upper(20, 0.3, 6) == pytest.approx(1.0)

    def test_percent_point_upper(self):
        """Test x+ for ten fair coins at 5%."""
        assert percent_point_upper(10, 0.5, 0.05) == 9

    def test_percent_point_sentinel(self):
        """Test x+ = m + 1 when even x = m fails."""
        assert percent_point_upper(10, 0.5, 0.0005) == 11

    def test_percent_point_at_zero(self):
        """Test p = 0 gives x+ = 1."""
        assert percent_point_upper(10, 0.0, 0.05) == 1

    def test_percent_point_lower_sentinel(self):
        """Test x- = -1 when even x = 0 fails."""
        assert percent_point_lower(10, 0.5, 0.0005) == -1
        assert percent_point_lower(10, 0.5, 0.05) == 1

    def test_index_out_of_range(self):
        """Test tail indices beyond m + 1 are refused."""
        with pytest.raises(ValidationError):
            binom_tail_upper(5, 0.5, 7)


class TestNormal:
    """Test suite for normal quantiles."""

    def test_median(self):
        """Test the quantile at one half is zero."""
        assert inv_norm_cdf(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_known_quantile(self):
        """Test the 97.5% quantile."""
        assert inv_norm_cdf(0.975) == pytest.approx(1.959964, abs=1e-6)

    def test_inverse_property(self):
        """Test cdf(quantile(q)) = q on a grid."""
        for q in np.linspace(0.001, 0.999, 41):
            assert norm_cdf(inv_norm_cdf(q)) == pytest.approx(q, abs=1e-9)

    def test_rejects_endpoints(self):
        """Test q outside (0, 1) is refused."""
        with pytest.raises(ValidationError):
            inv_norm_cdf(1.0)


class TestAcceptance:
    """Test suite for T(m, p*, beta) and T(m, 0)."""

    def test_centre_passes(self):
        """Test the centre of the region passes."""
        spec = TestSpec(m=100, p_star=0.3, alpha=0.05, beta_tail=0.1)
        passed, conclusion = run_test_T(spec, 30)
        assert passed
        assert conclusion.lower < 0.3 < conclusion.upper

    def test_one_sigma_region(self):
        """Test the region [45, 55] at m = 100, p* = 1/2, z = 1."""
        spec = TestSpec(m=100, p_star=0.5, alpha=0.05, beta_tail=BETA_ONE_SIGMA)
        low, high = spec.region()
        assert low == pytest.approx(45.0, abs=1e-6)
        assert high == pytest.approx(55.0, abs=1e-6)
        assert run_test_T(spec, 50)[0]
        assert run_test_T(spec, 56) == (False, None)

    def test_one_sided_has_no_upper_end(self):
        """Test T- only bounds the count from below."""
        spec = TestSpec(m=100, p_star=0.5, alpha=0.05, beta_tail=BETA_ONE_SIGMA, kind=TestKind.ONE_SIDED)
        passed, conclusion = run_test_T(spec, 100)
        assert passed
        assert conclusion.upper == 1.0
        assert spec.acceptance_probability == pytest.approx(1 - BETA_ONE_SIGMA)

    def test_degenerate_target(self):
        """Test p* in {0, 1} is refused by the interval test."""
        with pytest.raises(ValidationError):
            run_test_T(TestSpec(m=10, p_star=1.0, alpha=0.05, beta_tail=0.1), 10)

    def test_zero_test(self):
        """Test T(m, 0) passes only on zero successes."""
        assert run_test_zero(100, 0, 0.05) == (True, pytest.approx(0.19))
        assert run_test_zero(100, 1, 0.05)[0] is False

    def test_zero_bound(self):
        """Test (1 - alpha) / (m alpha)."""
        assert zero_test_bound(100, 0.05) == pytest.approx(0.19)

    def test_threshold_table_rows(self):
        """Test one row per m with region and percent points."""
        rows = threshold_table([10, 100], 0.5, 0.05, 0.1)
        assert [row["m"] for row in rows] == [10, 100]
        assert rows[0]["percent_point_upper"] == 9
        assert rows[1]["region_lower"] < 50 < rows[1]["region_upper"]

    @pytest.mark.slow
    def test_ideal_pass_rate(self):
        """Test ideal i.i.d. data pass about 1 - 2 beta of the time."""
        rng = np.random.default_rng(2024)
        spec = TestSpec(m=10000, p_star=0.5, alpha=0.05, beta_tail=0.1)
        trials = 4000
        passes = sum(run_test_T(spec, int(x))[0] for x in rng.binomial(10000, 0.5, size=trials))
        assert passes / trials == pytest.approx(0.8, abs=0.03)


class TestHypergeometric:
    """Test suite for the hypergeometric distribution."""

    def test_small_pmf(self):
        """Test n=4, m=2, k=2, x=1 by enumerating draws."""
        draws = list(combinations(range(4), 2))
        hits = sum(1 for d in draws if len(set(d) & {0, 1}) == 1)
        assert hypergeom_pmf_exact(4, 2, 2, 1) == Fraction(hits, len(draws)) == Fraction(2, 3)

    def test_normalization(self):
        """Test the pmf sums to one."""
        assert sum(hypergeom_pmf_exact(10, 4, 3, x) for x in range(5)) == 1
        assert sum(hypergeom_pmf(10, 4, 3, x) for x in range(5)) == pytest.approx(1.0)

    def test_variance_against_enumeration(self):
        """Test the closed-form variance equals the enumerated one for all n <= 12."""
        for n in range(2, 13):
            for m in range(n + 1):
                for k in range(n + 1):
                    pmf = [hypergeom_pmf_exact(n, m, k, x) for x in range(m + 1)]
                    mean = sum(x * p for x, p in enumerate(pmf))
                    variance = sum((x - mean) ** 2 * p for x, p in enumerate(pmf))
                    assert hypergeom_variance(n, m, k) == pytest.approx(float(variance), abs=1e-12)
                    assert variance <= Fraction(m, 4)
                    assert hypergeom_mean(n, m, k) == pytest.approx(float(mean))

    def test_variance_examples(self):
        """Test k = 0 and the n=4, m=2, k=2 value."""
        assert hypergeom_variance(10, 3, 0) == 0.0
        assert hypergeom_variance(4, 2, 2) == pytest.approx(1 / 3)
        assert hypergeom_variance(100, 50, 50) <= 12.5

    def test_large_n_uses_scipy(self):
        """Test the float path above the exact limit stays normalized."""
        assert sum(hypergeom_pmf(200, 20, 30, x) for x in range(21)) == pytest.approx(1.0)


class TestSoundness:
    """Test suite for soundness constants and the zero-test adversary."""

    def test_constant_collapses_at_half(self):
        """Test c = 1 / (2 sqrt(alpha)) when the quantile vanishes."""
        assert soundness_constant(200, 100, 0.5, 0.05, 0.5) == pytest.approx(0.5 / 0.05**0.5)

    def test_constant_example(self):
        """Test n = 2m, p* = 1/2, z = 1."""
        assert soundness_constant(200, 100, 0.5, 0.05, BETA_ONE_SIGMA) == pytest.approx(6.708, abs=1e-3)

    def test_constant_rejects_full_sample(self):
        """Test n = m is refused."""
        with pytest.raises(ValidationError):
            soundness_constant(100, 100, 0.5, 0.05, 0.1)

    def test_deviation_moment_bounded(self):
        """Test the conditional squared deviation stays below its bound for every k."""
        n, m, c1 = 60, 30, 1.0
        bound = deviation_moment_bound(n, m, c1)
        for k in range(n + 1):
            assert deviation_second_moment(n, m, k, 0.5, c1) <= bound + 1e-12

    def test_zero_test_worst_case(self):
        """Test the adversarial mixture meets the bound for m <= 200."""
        for m in (1, 5, 19, 20, 100, 200):
            mixture = zero_test_worst_case(m, 0.05)
            assert mixture.pass_probability >= 0.05 - 1e-12
            assert mixture.conditional_success <= mixture.bound + 1e-12

    def test_conditional_is_exact(self):
        """Test the exact conditional for a half-weight adversary."""
        pass_probability, conditional = zero_test_conditional(3, Fraction(1, 2))
        assert pass_probability == Fraction(5, 8)
        assert conditional == Fraction(1, 5)
