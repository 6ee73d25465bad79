"""Reference generators: integration accuracy and pinned analytics."""

import math

import numpy as np
import pytest

from pemix import (
    InvalidInputError,
    LorenzParams,
    MackeyGlassParams,
    lorenz_series,
    lorenz_trajectory,
    mackey_glass_series,
    sine_series,
)
from pemix.generators import lorenz_rhs

from oracles import bisect_root


class TestLorenz:
    def test_shapes_and_metadata(self):
        params = LorenzParams(steps=500)
        series = lorenz_series(params)
        trajectory = lorenz_trajectory(params)
        assert len(series) == 500
        assert trajectory.shape == (500, 3)
        np.testing.assert_array_equal(series.values, trajectory[:, 0])
        assert series.spacing == 0.005
        assert series.origin == 0.0

    def test_deterministic(self):
        a = lorenz_series(LorenzParams(steps=300)).values
        b = lorenz_series(LorenzParams(steps=300)).values
        np.testing.assert_array_equal(a, b)

    def test_skip_drops_leading_samples_exactly(self):
        full = lorenz_series(LorenzParams(steps=400))
        tail = lorenz_series(LorenzParams(steps=300, skip=100))
        np.testing.assert_array_equal(tail.values, full.values[100:])
        assert tail.origin == pytest.approx(100 * 0.005)

    def test_equilibrium_has_zero_derivative_and_stays_fixed(self):
        params = LorenzParams(steps=200)
        c = math.sqrt(params.b * (params.r - 1.0))
        state = (c, c, params.r - 1.0)
        dx, dy, dz = lorenz_rhs(state, params)
        assert abs(dx) <= 1e-10
        assert abs(dy) <= 1e-10
        assert abs(dz) <= 1e-10
        trajectory = lorenz_trajectory(LorenzParams(initial=state, steps=200))
        drift = np.abs(trajectory - np.asarray(state)).max()
        assert drift <= 1e-9, f"equilibrium drifted by {drift}"

    def test_fourth_order_convergence(self):
        # Halving the step shrinks the endpoint error by about 2**4;
        # comparing against a quarter-step reference gives a ratio near 17.
        def endpoint(h):
            steps = int(round(0.4 / h)) + 1
            return lorenz_trajectory(LorenzParams(h=h, steps=steps))[-1]

        h = 0.004
        reference = endpoint(h / 4)
        e_coarse = np.abs(endpoint(h) - reference).max()
        e_fine = np.abs(endpoint(h / 2) - reference).max()
        ratio = e_coarse / e_fine
        assert 12.0 <= ratio <= 20.0, f"convergence ratio {ratio}"

    def test_stays_on_attractor(self):
        values = lorenz_series(LorenzParams(steps=20_000)).values
        assert np.isfinite(values).all()
        assert np.abs(values).max() < 60.0

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            LorenzParams(h=0.0)
        with pytest.raises(InvalidInputError):
            LorenzParams(steps=0)


class TestMackeyGlass:
    def test_shapes_and_metadata(self):
        series = mackey_glass_series(MackeyGlassParams(steps=400))
        assert len(series) == 400
        assert series.spacing == 0.1
        assert series.values[0] == 1.2

    def test_pure_decay_matches_closed_form(self):
        # With no feedback the dynamics reduce to dx/dt = -gamma*x, so
        # x(10) = 1.2 * exp(-1); sample 100 sits at t = 10.
        series = mackey_glass_series(MackeyGlassParams(beta=0.0, steps=200))
        expected = 1.2 * math.exp(-1.0)
        assert series.values[100] == pytest.approx(expected, abs=1e-9)

    def test_equilibrium_root_and_fixed_point(self):
        params = MackeyGlassParams(steps=5000)
        star = bisect_root(
            lambda x: params.beta * x / (1.0 + x**params.q) - params.gamma * x,
            0.5,
            1.5,
        )
        assert star == pytest.approx(1.0, abs=1e-9)
        held = mackey_glass_series(MackeyGlassParams(x0=star, steps=5000))
        assert np.abs(held.values - star).max() <= 1e-9

    def test_skip_drops_leading_samples_exactly(self):
        full = mackey_glass_series(MackeyGlassParams(steps=600))
        tail = mackey_glass_series(MackeyGlassParams(steps=400, skip=200))
        np.testing.assert_array_equal(tail.values, full.values[200:])

    def test_bounded_on_default_parameters(self):
        values = mackey_glass_series(MackeyGlassParams(steps=50_000)).values
        assert np.isfinite(values).all()
        assert values.min() > 0.0
        assert values.max() < 2.0

    def test_delay_must_be_step_multiple(self):
        with pytest.raises(InvalidInputError):
            MackeyGlassParams(t0=17.05, h=0.1)

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            MackeyGlassParams(gamma=0.0)
        with pytest.raises(InvalidInputError):
            MackeyGlassParams(beta=-0.1)
        with pytest.raises(InvalidInputError):
            MackeyGlassParams(q=-1.0)


class TestSine:
    def test_basic_shape(self):
        series = sine_series(2.0, 100, 1000)
        assert len(series) == 1000
        assert series.values[0] == 0.0
        assert series.values.max() == pytest.approx(2.0, abs=1e-6)
        assert series.spacing == 1.0

    def test_periodicity(self):
        series = sine_series(1.0, 50, 500)
        np.testing.assert_allclose(
            series.values[:450], series.values[50:], rtol=0, atol=1e-12
        )

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            sine_series(1.0, 3, 100)
        with pytest.raises(InvalidInputError):
            sine_series(1.0, 50, 20)
        with pytest.raises(InvalidInputError):
            sine_series(math.inf, 50, 100)
