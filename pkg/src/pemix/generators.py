"""Reference signal generators: chaotic flows and a pure tone.

Both differential systems are integrated with the classical fixed-step
fourth-order Runge-Kutta scheme.  The delayed system interpolates its
delayed value linearly between grid points for the half-step stages,
which keeps the interpolation error below the scheme's own order for
the step sizes used here.  Sample ``n`` of an output series is the
state at time ``n * h`` after the skipped stretch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .series import TimeSeries

__all__ = [
    "LorenzParams",
    "MackeyGlassParams",
    "lorenz_rhs",
    "lorenz_trajectory",
    "lorenz_series",
    "mackey_glass_series",
    "sine_series",
]


@dataclass(frozen=True)
class LorenzParams:
    """Parameters for the three-variable convection flow.

    Defaults reproduce a strongly chaotic regime on a 0.005 time step.
    ``skip`` discards that many leading samples while still returning
    ``steps`` samples in total.
    """

    a: float = 16.0
    b: float = 4.0
    r: float = 45.0
    initial: tuple[float, float, float] = (-13.0, -12.0, 52.0)
    h: float = 0.005
    steps: int = 500_000
    skip: int = 0

    def __post_init__(self) -> None:
        if not (self.h > 0.0) or not math.isfinite(self.h):
            raise InvalidInputError(f"step size must be finite and > 0, got {self.h}")
        if self.steps < 1:
            raise InvalidInputError(f"steps must be >= 1, got {self.steps}")
        if self.skip < 0:
            raise InvalidInputError(f"skip must be >= 0, got {self.skip}")
        if len(self.initial) != 3:
            raise InvalidInputError("initial state must have three components")


def lorenz_rhs(
    state: tuple[float, float, float],
    params: LorenzParams,
) -> tuple[float, float, float]:
    """Time derivative of the flow at a state."""
    x, y, z = state
    return (
        params.a * (y - x),
        x * (params.r - z) - y,
        x * y - params.b * z,
    )


def lorenz_trajectory(params: LorenzParams) -> np.ndarray:
    """Integrate the flow; returns the full state as shape ``(steps, 3)``."""
    a, b, r, h = params.a, params.b, params.r, params.h
    half = h / 2.0
    sixth = h / 6.0
    skip, steps = params.skip, params.steps
    total = skip + steps
    out = np.empty((steps, 3), dtype=np.float64)
    x, y, z = (float(c) for c in params.initial)
    for i in range(total):
        if i >= skip:
            row = i - skip
            out[row, 0] = x
            out[row, 1] = y
            out[row, 2] = z
        if i == total - 1:
            break
        k1x = a * (y - x)
        k1y = x * (r - z) - y
        k1z = x * y - b * z
        x2 = x + half * k1x
        y2 = y + half * k1y
        z2 = z + half * k1z
        k2x = a * (y2 - x2)
        k2y = x2 * (r - z2) - y2
        k2z = x2 * y2 - b * z2
        x3 = x + half * k2x
        y3 = y + half * k2y
        z3 = z + half * k2z
        k3x = a * (y3 - x3)
        k3y = x3 * (r - z3) - y3
        k3z = x3 * y3 - b * z3
        x4 = x + h * k3x
        y4 = y + h * k3y
        z4 = z + h * k3z
        k4x = a * (y4 - x4)
        k4y = x4 * (r - z4) - y4
        k4z = x4 * y4 - b * z4
        x += sixth * (k1x + 2.0 * (k2x + k3x) + k4x)
        y += sixth * (k1y + 2.0 * (k2y + k3y) + k4y)
        z += sixth * (k1z + 2.0 * (k2z + k3z) + k4z)
    return out


def lorenz_series(params: LorenzParams = LorenzParams()) -> TimeSeries:
    """First coordinate of the flow as a time series."""
    trajectory = lorenz_trajectory(params)
    return TimeSeries(
        values=np.ascontiguousarray(trajectory[:, 0]),
        spacing=params.h,
        unit="seconds",
        origin=params.skip * params.h,
    )


@dataclass(frozen=True)
class MackeyGlassParams:
    """Parameters for the delayed feedback system.

    The delay ``t0`` must be an integer multiple of the step ``h``.
    ``beta = 0`` is allowed; it reduces the system to pure exponential
    decay, which is useful as an analytic check.
    """

    beta: float = 0.2
    gamma: float = 0.1
    q: float = 10.0
    t0: float = 17.0
    x0: float = 1.2
    h: float = 0.1
    steps: int = 1_500_000
    skip: int = 0

    def __post_init__(self) -> None:
        if self.beta < 0.0 or not math.isfinite(self.beta):
            raise InvalidInputError(f"beta must be finite and >= 0, got {self.beta}")
        if not (self.gamma > 0.0) or not math.isfinite(self.gamma):
            raise InvalidInputError(f"gamma must be finite and > 0, got {self.gamma}")
        if not (self.q > 0.0) or not math.isfinite(self.q):
            raise InvalidInputError(f"q must be finite and > 0, got {self.q}")
        if not (self.h > 0.0) or not math.isfinite(self.h):
            raise InvalidInputError(f"step size must be finite and > 0, got {self.h}")
        if not (self.t0 > 0.0) or not math.isfinite(self.t0):
            raise InvalidInputError(f"delay must be finite and > 0, got {self.t0}")
        if self.steps < 1:
            raise InvalidInputError(f"steps must be >= 1, got {self.steps}")
        if self.skip < 0:
            raise InvalidInputError(f"skip must be >= 0, got {self.skip}")
        ratio = self.t0 / self.h
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            raise InvalidInputError(
                f"delay {self.t0} must be an integer multiple of step {self.h}"
            )

    @property
    def delay_steps(self) -> int:
        return int(round(self.t0 / self.h))


def mackey_glass_series(params: MackeyGlassParams = MackeyGlassParams()) -> TimeSeries:
    """Integrate the delayed feedback system; returns the scalar state.

    History before time zero is the constant ``x0``.  Half-step stages
    read the delayed value as the average of the two bracketing grid
    values; both bracketing values are already known because the delay
    is at least one step.
    """
    beta, gamma, q, h = params.beta, params.gamma, params.q, params.h
    x0 = params.x0
    d = params.delay_steps
    half = h / 2.0
    sixth = h / 6.0
    skip, steps = params.skip, params.steps
    total = skip + steps
    xs = np.empty(total, dtype=np.float64)
    x = float(x0)
    for i in range(total):
        xs[i] = x
        if i == total - 1:
            break
        m = i - d
        xd_now = xs[m] if m >= 0 else x0
        xd_next = xs[m + 1] if m + 1 >= 0 else x0
        xd_half = 0.5 * (xd_now + xd_next)
        g_now = beta * xd_now / (1.0 + xd_now**q)
        g_half = beta * xd_half / (1.0 + xd_half**q)
        g_next = beta * xd_next / (1.0 + xd_next**q)
        k1 = g_now - gamma * x
        k2 = g_half - gamma * (x + half * k1)
        k3 = g_half - gamma * (x + half * k2)
        k4 = g_next - gamma * (x + h * k3)
        x += sixth * (k1 + 2.0 * (k2 + k3) + k4)
    values = xs[skip:].copy() if skip else xs
    return TimeSeries(
        values=values,
        spacing=h,
        unit="seconds",
        origin=skip * h,
    )


def sine_series(amplitude: float, period_samples: int, n: int) -> TimeSeries:
    """Pure sinusoid sampled ``period_samples`` times per cycle.

    Raises:
        InvalidInputError: If the period is under 4 samples, the length
            is shorter than one period, or the amplitude is not finite.
    """
    if not isinstance(period_samples, (int, np.integer)) or period_samples < 4:
        raise InvalidInputError(
            f"period must be an integer >= 4 samples, got {period_samples}"
        )
    if n < period_samples:
        raise InvalidInputError(
            f"need at least one full period ({period_samples} samples), got n={n}"
        )
    if not math.isfinite(amplitude):
        raise InvalidInputError(f"amplitude must be finite, got {amplitude}")
    t = np.arange(int(n), dtype=np.float64)
    values = amplitude * np.sin(2.0 * math.pi * t / float(period_samples))
    return TimeSeries(values=values, spacing=1.0, unit="samples", origin=0.0)
