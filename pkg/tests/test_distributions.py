import math

import numpy as np
import pytest

from pragen.distributions import (
    DEFAULT_AGE_SPEC,
    DEFAULT_COMPANION_RATE,
    DEFAULT_EMERGENCY_RATE,
    DEFAULT_FEMALE_RATE,
    DEFAULT_LOR_SPEC,
    DEFAULT_LOS_SPEC,
    DEFAULT_PRIVATE_RATE,
    Empirical,
    EmpiricalTable,
    LogNormalSpec,
    RatePolynomial,
    Uniform,
    fit_rate_from_classes,
    parse_empirical_table,
    sample_age,
    sample_lognormal,
    sample_lor,
    sample_los,
    age_samples,
    lor_samples,
    los_samples,
)
from pragen.tables import load_builtin_table


class TestLogNormalSpec:
    def test_parameter_conversion_roundtrip(self):
        for spec in (DEFAULT_AGE_SPEC, DEFAULT_LOS_SPEC, DEFAULT_LOR_SPEC):
            mean, std = spec.roundtrip()
            assert math.isclose(mean, spec.mean, rel_tol=1e-9)
            assert math.isclose(std, spec.std_dev, rel_tol=1e-9)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            LogNormalSpec(mean=0.0, std_dev=1.0)
        with pytest.raises(ValueError):
            LogNormalSpec(mean=5.0, std_dev=1.0, min=4.0, max=4.0)
        with pytest.raises(ValueError):
            LogNormalSpec(mean=float("nan"), std_dev=1.0)

    def test_untruncated_mean_large_sample(self):
        rng = np.random.default_rng(123)
        spec = LogNormalSpec(mean=4.0214, std_dev=1.2458)
        draws = [sample_lognormal(spec, rng) for _ in range(100_000)]
        assert abs(np.mean(draws) - spec.mean) / spec.mean < 0.01

    def test_tiny_std_concentrates_at_mean(self):
        rng = np.random.default_rng(0)
        spec = LogNormalSpec(mean=7.0, std_dev=1e-6)
        draws = [sample_lognormal(spec, rng) for _ in range(100)]
        assert max(abs(d - 7.0) for d in draws) < 1e-4

    def test_fixed_seed_reproduces_stream(self):
        a = [sample_lognormal(DEFAULT_LOS_SPEC, np.random.default_rng(42)) for _ in range(5)]
        b = [sample_lognormal(DEFAULT_LOS_SPEC, np.random.default_rng(42)) for _ in range(5)]
        assert a == b

    def test_truncation_respected(self):
        rng = np.random.default_rng(9)
        spec = LogNormalSpec(mean=4.0, std_dev=3.0, min=2.0, max=6.0)
        for _ in range(2000):
            assert 2.0 <= sample_lognormal(spec, rng) <= 6.0


class TestSampleAge:
    def test_uniform_point_mass(self):
        rng = np.random.default_rng(1)
        assert all(sample_age(Uniform(30, 30), rng) == 30 for _ in range(20))

    def test_default_lognormal_mean_with_truncation(self):
        rng = np.random.default_rng(7)
        ages = age_samples(DEFAULT_AGE_SPEC, 100_000, rng)
        assert ages.min() >= 18 and ages.max() <= 100
        assert 59 <= ages.mean() <= 64  # upper truncation pulls the mean down

    def test_single_cell_table(self):
        table = EmpiricalTable(kind="age_only", ages=(50,), loses=(), weights=(1.0,))
        rng = np.random.default_rng(3)
        assert all(sample_age(Empirical(table), rng) == 50 for _ in range(20))


class TestSampleLos:
    def test_default_lognormal_mean(self):
        rng = np.random.default_rng(11)
        loses = los_samples(DEFAULT_LOS_SPEC, 100_000, rng)
        assert loses.min() >= 1
        assert 3.6 <= loses.mean() <= 4.5

    def test_uniform_point_mass(self):
        rng = np.random.default_rng(2)
        assert sample_los(Uniform(3, 3), rng) == 3

    def test_uniform_rejects_zero_stays(self):
        with pytest.raises(ValueError):
            sample_los(Uniform(0, 3), np.random.default_rng(0))

    def test_joint_point_mass_conditions_on_class(self):
        table = EmpiricalTable(
            kind="joint_age_los",
            ages=(58, 63),
            loses=(7, 12),
            weights=(0.5, 0.5),
        )
        rng = np.random.default_rng(5)
        assert sample_los(Empirical(table), rng, age=62) == 7
        assert sample_los(Empirical(table), rng, age=64) == 12

    def test_joint_empty_class_falls_back_to_marginal(self):
        table = EmpiricalTable(
            kind="joint_age_los", ages=(58,), loses=(7,), weights=(1.0,)
        )
        rng = np.random.default_rng(5)
        with pytest.warns(UserWarning, match="marginal"):
            assert sample_los(Empirical(table), rng, age=30) == 7


class TestSampleLor:
    def test_emergency_is_always_zero(self):
        rng = np.random.default_rng(0)
        assert sample_lor(DEFAULT_LOR_SPEC, True, rng) == 0
        assert sample_lor(Uniform(4, 9), True, rng) == 0

    def test_uniform_point_mass(self):
        rng = np.random.default_rng(0)
        assert sample_lor(Uniform(2, 2), False, rng) == 2

    def test_default_lognormal_mean(self):
        rng = np.random.default_rng(13)
        lors = lor_samples(DEFAULT_LOR_SPEC, 100_000, rng)
        assert lors.min() >= 0
        assert 5.5 <= lors.mean() <= 6.8


class TestRatePolynomial:
    def test_female_rate_at_zero_is_intercept(self):
        assert DEFAULT_FEMALE_RATE.raw_at(0) == 0.438171831286241

    def test_constant_polynomial(self):
        poly = RatePolynomial((0.0, 0.0, 0.0, 0.5))
        for age in (0, 18, 63, 100):
            assert poly.rate_at(age) == 0.5

    def test_companion_rate_matches_direct_evaluation(self):
        x = 60
        direct = 5.65061344e-8 * x**3 + 2.83196514e-5 * x**2 + 3.01802321e-3 * x + 0.0977778296
        assert math.isclose(DEFAULT_COMPANION_RATE.raw_at(60), direct, abs_tol=1e-12)
        assert 0.0 <= DEFAULT_COMPANION_RATE.rate_at(60) <= 1.0

    def test_all_defaults_clamped_over_wide_age_range(self):
        ages = np.arange(0, 121)
        for poly in (
            DEFAULT_FEMALE_RATE,
            DEFAULT_PRIVATE_RATE,
            DEFAULT_EMERGENCY_RATE,
            DEFAULT_COMPANION_RATE,
        ):
            rates = poly.rate_at(ages)
            assert np.all((rates >= 0.0) & (rates <= 1.0))


class TestFitRateFromClasses:
    def test_exact_cubic_recovered(self):
        target = RatePolynomial((1e-6, -2e-4, 6e-3, 0.4))
        points = [(x, float(target.raw_at(x))) for x in (20.0, 40.0, 55.0, 70.0, 90.0)]
        poly, residual = fit_rate_from_classes(points)
        assert residual < 1e-16
        for got, want in zip(poly.coefficients, target.coefficients):
            assert math.isclose(got, want, abs_tol=1e-9)

    def test_constant_points(self):
        poly, _ = fit_rate_from_classes([(20.0, 0.3), (40.0, 0.3), (60.0, 0.3), (80.0, 0.3)])
        assert all(abs(c) < 1e-12 for c in poly.coefficients[:3])
        assert math.isclose(poly.coefficients[3], 0.3, abs_tol=1e-12)

    def test_recovers_default_female_rate(self):
        points = [(x, float(DEFAULT_FEMALE_RATE.raw_at(x))) for x in (20, 40, 60, 80, 100)]
        poly, _ = fit_rate_from_classes(points)
        for got, want in zip(poly.coefficients, DEFAULT_FEMALE_RATE.coefficients):
            assert math.isclose(got, want, abs_tol=1e-6)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            fit_rate_from_classes([(20.0, 0.5), (40.0, 0.5), (60.0, 0.5)])

    def test_degenerate_midpoints_reduce_degree(self):
        points = [(20.0, 0.2), (20.0, 0.2), (60.0, 0.6), (60.0, 0.6)]
        with pytest.warns(UserWarning, match="distinct"):
            poly, _ = fit_rate_from_classes(points)
        assert math.isclose(float(poly.raw_at(40.0)), 0.4, abs_tol=1e-9)

    def test_rejects_rates_outside_unit_interval(self):
        with pytest.raises(ValueError):
            fit_rate_from_classes([(20.0, 1.2), (40.0, 0.5), (60.0, 0.5), (80.0, 0.5)])


AGE_TABLE_TEXT = """
kind: age_only
age_min: 18
age_max: 100
40, 0.5
60, 0.5
"""


class TestEmpiricalTable:
    def test_two_cell_normalization_and_mean(self):
        table = parse_empirical_table(AGE_TABLE_TEXT)
        assert table.weights == (0.5, 0.5)
        rng = np.random.default_rng(17)
        ages = age_samples(Empirical(table), 50_000, rng)
        assert abs(ages.mean() - 50.0) < 0.5

    def test_unnormalized_weights(self):
        table = parse_empirical_table("kind: los_only\n3, 1\n5, 3\n")
        assert table.weights == (0.25, 0.75)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            parse_empirical_table("kind: age_only\n40, -0.5\n60, 0.5\n")

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError):
            parse_empirical_table("kind: age_only\n")

    def test_unknown_header_rejected(self):
        with pytest.raises(ValueError, match="unknown header"):
            parse_empirical_table("kind: age_only\nnonsense: 1\n40, 1\n")

    def test_out_of_support_rejected(self):
        with pytest.raises(ValueError, match="outside declared support"):
            parse_empirical_table("kind: age_only\n101, 1.0\n")

    def test_duplicate_cells_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            parse_empirical_table("kind: age_only\n40, 0.5\n40, 0.5\n")

    def test_los_zero_mass_warns_and_is_skipped(self):
        with pytest.warns(UserWarning, match="los=0"):
            table = parse_empirical_table("kind: los_only\n0, 0.5\n4, 0.5\n")
        loses, weights = table.los_cells()
        assert list(loses) == [4] and weights[0] == 1.0
        assert table.mean_los() == 4.0

    def test_builtin_joint_marginal_chi_square(self):
        # age-class marginal of sampled pairs matches the table marginal
        from scipy import stats

        table = load_builtin_table("joint_type_2")
        rng = np.random.default_rng(23)
        n = 100_000
        ages = age_samples(Empirical(table), n, rng)
        starts = np.asarray([table.class_of(int(a)) for a in ages])
        cells, weights = table.age_cells(18, 100)
        observed = np.asarray([(starts == s).sum() for s in cells])
        keep = weights * n >= 5  # chi-square validity
        chi2 = float(np.sum((observed[keep] - n * weights[keep]) ** 2 / (n * weights[keep])))
        critical = stats.chi2.ppf(0.99, df=int(keep.sum()) - 1)
        assert chi2 < critical


class TestDeterminism:
    def test_same_seed_same_streams(self):
        for choice in (DEFAULT_AGE_SPEC, Uniform(20, 80)):
            a = age_samples(choice, 100, np.random.default_rng(99))
            b = age_samples(choice, 100, np.random.default_rng(99))
            assert np.array_equal(a, b)

    def test_supports_hold_on_large_samples(self):
        rng = np.random.default_rng(31)
        ages = age_samples(DEFAULT_AGE_SPEC, 1_000_000, rng)
        assert ages.min() >= 18 and ages.max() <= 100
        loses = los_samples(DEFAULT_LOS_SPEC, 1_000_000, rng)
        assert loses.min() >= 1
        lors = lor_samples(DEFAULT_LOR_SPEC, 1_000_000, rng)
        assert lors.min() >= 0
