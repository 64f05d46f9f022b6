"""Tests for the benchmark objective suite.

Expected values were computed independently before the implementation:
by hand for the small closed-form cases and with 60-digit mpmath
arithmetic for Griewank/Yang, then rounded to float64.
"""

import numpy as np
import pytest

from batopt.benchmarks import (
    ObjectiveSpec,
    evaluate,
    evaluate_deterministic,
    get_spec,
    list_suite,
)

SUITE_NAMES = [
    "Sphere", "Griewank", "Schwefel", "Quartic", "Rosenbrock",
    "Yang", "Zakharov", "Step", "Rastrigin",
]

EXPECTED_BOUNDS = {
    "Sphere": (-5.12, 5.12),
    "Griewank": (-600.0, 600.0),
    "Schwefel": (-10.0, 10.0),
    "Quartic": (-100.0, 100.0),
    "Rosenbrock": (-5.0, 5.0),
    "Yang": (-2.0 * np.pi, 2.0 * np.pi),
    "Zakharov": (-5.0, 5.0),
    "Step": (-100.0, 100.0),
    "Rastrigin": (-5.12, 5.12),
}

# frozen oracle value: 2/4000 - cos(1)*cos(1/sqrt(2)) + 1 at 60 digits
GRIEWANK_AT_ONES_2D = 0.5897380911762422
# frozen oracle value: (|1|+|1|)*exp(-(sin(1)+sin(1))) at 60 digits
YANG_AT_ONES_2D = 0.3716529504500023


class TestSuiteContents:
    def test_nine_functions_in_order(self):
        assert [s.name for s in list_suite()] == SUITE_NAMES

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_bounds_and_minimum(self, name):
        spec = get_spec(name)
        assert spec.bounds == EXPECTED_BOUNDS[name]
        assert spec.known_min_value == 0.0
        assert spec.dimension == 30

    def test_only_quartic_is_stochastic(self):
        assert [s.name for s in list_suite() if s.stochastic] == ["Quartic"]

    def test_get_spec_case_insensitive(self):
        assert get_spec("sphere").name == "Sphere"
        assert get_spec("ROSENBROCK", dimension=2).dimension == 2

    def test_get_spec_unknown_name(self):
        with pytest.raises(ValueError, match="unknown objective"):
            get_spec("ackley")

    def test_with_dimension_keeps_minimizer_shape(self):
        spec = get_spec("rosenbrock").with_dimension(5)
        assert spec.dimension == 5
        np.testing.assert_array_equal(spec.known_minimizer, np.ones(5))


class TestSpotValues:
    def test_sphere_at_origin(self):
        assert evaluate(get_spec("sphere"), np.zeros(30)) == 0.0

    def test_sphere_at_ones(self):
        assert evaluate(get_spec("sphere"), np.ones(30)) == pytest.approx(30.0, abs=1e-12)

    def test_rosenbrock_at_ones(self):
        assert evaluate(get_spec("rosenbrock"), np.ones(30)) == 0.0

    def test_rosenbrock_at_origin_2d(self):
        assert evaluate(get_spec("rosenbrock", 2), np.zeros(2)) == pytest.approx(1.0, abs=1e-12)

    def test_schwefel_at_ones_2d(self):
        assert evaluate(get_spec("schwefel", 2), np.ones(2)) == pytest.approx(3.0, abs=1e-12)

    def test_step_inside_flat_cell(self):
        assert evaluate(get_spec("step", 2), np.array([0.4, -0.4])) == 0.0

    def test_rastrigin_at_origin(self):
        assert evaluate(get_spec("rastrigin"), np.zeros(30)) == 0.0

    def test_rastrigin_half_ones_2d(self):
        # hand value: 2*(0.25 - 10*cos(pi) + 10) = 40.5
        assert evaluate(get_spec("rastrigin", 2), np.full(2, 0.5)) == pytest.approx(40.5, abs=1e-12)

    def test_griewank_at_ones_2d(self):
        value = evaluate(get_spec("griewank", 2), np.ones(2))
        assert value == pytest.approx(GRIEWANK_AT_ONES_2D, abs=1e-12)

    def test_yang_at_ones_2d(self):
        value = evaluate(get_spec("yang", 2), np.ones(2))
        assert value == pytest.approx(YANG_AT_ONES_2D, abs=1e-12)

    def test_zakharov_hand_value_2d(self):
        # 1+4 + 2.5^2 + 2.5^4 with weighted sum 1*1/2 + 2*2/2 = 2.5
        assert evaluate(get_spec("zakharov", 2), np.array([1.0, 2.0])) == pytest.approx(
            50.3125, abs=1e-12
        )

    def test_quartic_at_origin_is_pure_noise(self):
        spec = get_spec("quartic")
        for seed in range(5):
            value = evaluate(spec, np.zeros(30), np.random.default_rng(seed))
            assert 0.0 <= value < 1.0


class TestKnownMinima:
    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_minimizer_attains_minimum(self, name):
        spec = get_spec(name)
        value = evaluate_deterministic(spec, spec.known_minimizer)
        assert abs(value - spec.known_min_value) <= 1e-12

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_minimizer_not_beaten_by_random_points(self, name, rng):
        spec = get_spec(name, dimension=6)
        baseline = evaluate_deterministic(spec, spec.known_minimizer)
        xs = rng.uniform(spec.lower_bound, spec.upper_bound, size=(1000, 6))
        for x in xs:
            assert baseline <= evaluate_deterministic(spec, x)


class TestProperties:
    @pytest.mark.parametrize("name", ["Sphere", "Griewank", "Schwefel", "Zakharov", "Rastrigin"])
    def test_even_functions(self, name, rng):
        spec = get_spec(name, dimension=8)
        for x in rng.uniform(spec.lower_bound, spec.upper_bound, size=(200, 8)):
            assert evaluate(spec, x) == pytest.approx(evaluate(spec, -x), abs=1e-12)

    @pytest.mark.parametrize("name", [n for n in SUITE_NAMES if n != "Quartic"])
    def test_deterministic_reproducibility(self, name, rng):
        spec = get_spec(name, dimension=7)
        for x in rng.uniform(spec.lower_bound, spec.upper_bound, size=(50, 7)):
            assert evaluate(spec, x) == evaluate(spec, x)

    def test_quartic_same_rng_state_same_value(self):
        spec = get_spec("quartic", 4)
        x = np.array([1.0, -2.0, 0.5, 3.0])
        a = evaluate(spec, x, np.random.default_rng(42))
        b = evaluate(spec, x, np.random.default_rng(42))
        assert a == b

    def test_out_of_bounds_still_defined(self):
        spec = get_spec("sphere", 2)
        assert evaluate(spec, np.array([100.0, 0.0])) == 10000.0


class TestErrors:
    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="expected 30 components"):
            evaluate(get_spec("sphere"), np.zeros(3))

    def test_non_finite_input(self):
        with pytest.raises(ValueError, match="non-finite"):
            evaluate(get_spec("sphere", 2), np.array([np.nan, 0.0]))
        with pytest.raises(ValueError, match="non-finite"):
            evaluate(get_spec("sphere", 2), np.array([np.inf, 0.0]))

    def test_stochastic_requires_rng(self):
        with pytest.raises(ValueError, match="random generator"):
            evaluate(get_spec("quartic"), np.zeros(30))

    def test_invalid_spec_fields(self):
        with pytest.raises(ValueError, match="dimension"):
            ObjectiveSpec("bad", 0, -1.0, 1.0, lambda x: 0.0)
        with pytest.raises(ValueError, match="lower_bound"):
            ObjectiveSpec("bad", 2, 1.0, -1.0, lambda x: 0.0)
