"""Synthetic local mixing, bin averaging, and the bin-size sweep.

The mixing surrogate replaces each observation with a Gaussian draw
whose mean and deviation come from the observation's clipped
neighborhood, destroying sub-neighborhood ordering while keeping the
slow envelope.  Bin averaging is the corresponding remedy: averaging
``j`` consecutive points coarsens the sampling until neighboring points
decorrelate again.  The sweep runs the reversal diagnostic across bin
sizes and recommends the smallest size that restores the monotone
stride ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .entropy import PEConfig, multi_tau_pe
from .errors import InsufficientDataError, InvalidInputError
from .reversal import reversal_series
from .series import TimeSeries

__all__ = [
    "AnsatzConfig",
    "BinSweepResult",
    "mixing_ansatz",
    "bin_average",
    "bin_sweep",
    "recommend_bin_size",
    "ZERO_RBAR_TOL",
]

# A mean reversal score at or below this counts as "reached zero".
ZERO_RBAR_TOL = 1e-12

# Generator behind mixing draws; recorded in output metadata.
RNG_ALGORITHM = "pcg64"


@dataclass(frozen=True)
class AnsatzConfig:
    """Neighborhood half-width and seed for the mixing surrogate.

    ``k`` is the half-width: point ``n`` draws from the statistics of
    ``x[n-k] .. x[n+k]``, clipped at the series edges.  ``k = 0``
    reproduces the input unchanged.
    """

    k: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.k, (int, np.integer)) or self.k < 0:
            raise InvalidInputError(f"k must be an integer >= 0, got {self.k}")
        if not isinstance(self.seed, (int, np.integer)):
            raise InvalidInputError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "seed", int(self.seed))


def mixing_ansatz(series: TimeSeries, config: AnsatzConfig) -> TimeSeries:
    """Replace each point with a draw from its neighborhood statistics.

    Point ``n`` becomes ``Normal(mu_n, sigma_n**2)`` where ``mu_n`` and
    ``sigma_n`` are the sample mean and sample deviation (ddof=1) of the
    clipped window ``x[max(n-k, 0) .. min(n+k, N-1)]``.  A one-point
    window has ``sigma = 0``.  Draws come from ``numpy``'s PCG64
    generator seeded with ``config.seed``, one per point in series
    order, so equal seeds give equal output.

    Raises:
        InvalidInputError: On non-finite input values.
        InsufficientDataError: If the series has fewer than ``2k + 1``
            points, so not even the middle point has a full window.
    """
    x = series.values
    n = x.shape[0]
    k = config.k
    if n <= 2 * k:
        raise InsufficientDataError(
            f"series of length {n} is too short for neighborhood half-width k={k} "
            f"(needs more than {2 * k} points)"
        )
    bad = ~np.isfinite(x)
    if bad.any():
        pos = int(np.argmax(bad))
        raise InvalidInputError(f"non-finite value at position {pos}: {x[pos]}")
    mu = np.empty(n, dtype=np.float64)
    sigma = np.zeros(n, dtype=np.float64)
    if k == 0:
        mu[:] = x
    else:
        width = 2 * k + 1
        windows = np.lib.stride_tricks.sliding_window_view(x, width)
        mu[k : n - k] = windows.mean(axis=-1)
        sigma[k : n - k] = windows.std(axis=-1, ddof=1)
        for i in range(k):
            left = x[: i + k + 1]
            mu[i] = left.mean()
            sigma[i] = left.std(ddof=1)
            right = x[n - 1 - i - k :]
            mu[n - 1 - i] = right.mean()
            sigma[n - 1 - i] = right.std(ddof=1)
    rng = np.random.default_rng(config.seed)
    draws = rng.standard_normal(n)
    return series.replace_values(mu + sigma * draws)


def bin_average(series: TimeSeries, j: int) -> TimeSeries:
    """Non-overlapping average of every ``j`` consecutive observations.

    Output point ``n`` is the mean of input points ``n*j .. n*j + j - 1``;
    a trailing remainder shorter than ``j`` is dropped.  Example:
    ``[1..7]`` with ``j = 2`` gives ``[1.5, 3.5, 5.5]``.  The output
    spacing is ``j`` times the input spacing and the origin moves to the
    center of the first bin.

    Raises:
        InvalidInputError: If ``j < 1`` or the series is shorter than ``j``.
    """
    if not isinstance(j, (int, np.integer)) or j < 1:
        raise InvalidInputError(f"bin size must be an integer >= 1, got {j}")
    j = int(j)
    n = len(series)
    if n < j:
        raise InvalidInputError(f"series of length {n} is shorter than one bin of {j}")
    n_bins = n // j
    values = series.values[: n_bins * j].reshape(n_bins, j).mean(axis=1)
    return TimeSeries(
        values=values,
        spacing=series.spacing * j,
        unit=series.unit,
        origin=series.origin + series.spacing * (j - 1) / 2.0,
    )


@dataclass(frozen=True)
class BinSweepResult:
    """Mean reversal score per candidate bin size plus the recommendation.

    ``r_bars[i]`` is NaN where ``sufficient[i]`` is False, meaning bin
    size ``bin_sizes[i]`` left fewer points than one entropy window.
    ``achieved_zero`` tells whether the recommended size actually drove
    the mean score to zero (within tolerance) rather than merely
    minimizing it.
    """

    bin_sizes: np.ndarray
    r_bars: np.ndarray
    sufficient: np.ndarray
    recommended_j: int
    achieved_zero: bool

    def __post_init__(self) -> None:
        sizes = np.asarray(self.bin_sizes, dtype=np.int64)
        r_bars = np.asarray(self.r_bars, dtype=np.float64)
        sufficient = np.asarray(self.sufficient, dtype=bool)
        if not (sizes.shape == r_bars.shape == sufficient.shape) or sizes.ndim != 1:
            raise InvalidInputError("sweep arrays must be matching 1-D arrays")
        object.__setattr__(self, "bin_sizes", sizes)
        object.__setattr__(self, "r_bars", r_bars)
        object.__setattr__(self, "sufficient", sufficient)


def recommend_bin_size(
    bin_sizes: Sequence[int] | np.ndarray,
    r_bars: Sequence[float] | np.ndarray,
    tol: float = ZERO_RBAR_TOL,
) -> tuple[int, bool]:
    """Pick a bin size from a sweep's mean reversal scores.

    Preference order: the smallest size whose score is zero within
    ``tol``; otherwise the first local minimum, where a plateau of equal
    scores counts as one candidate represented by its smallest size.
    NaN scores (insufficient data) are skipped.

    Example: scores ``[0.8, 0.5, 0.5, 0.7]`` for sizes ``1..4``
    recommend size 2, the first point of the plateau.

    Returns:
        ``(recommended_size, achieved_zero)``.

    Raises:
        InsufficientDataError: If every score is NaN.
    """
    pairs = [
        (int(j), float(r))
        for j, r in zip(bin_sizes, r_bars)
        if np.isfinite(r)
    ]
    if not pairs:
        raise InsufficientDataError("no bin size left enough data to score")
    for j, r in pairs:
        if r <= tol:
            return j, True
    # Collapse plateaus into runs, then take the first run that sits
    # strictly below both neighbors (series ends count as higher).
    runs: list[tuple[int, float]] = []
    for j, r in pairs:
        if not runs or runs[-1][1] != r:
            runs.append((j, r))
    for idx, (j, r) in enumerate(runs):
        below_prev = idx == 0 or runs[idx - 1][1] > r
        below_next = idx == len(runs) - 1 or runs[idx + 1][1] > r
        if below_prev and below_next:
            return j, False
    raise AssertionError("a finite sequence always has a first local minimum")


def bin_sweep(
    series: TimeSeries,
    j_range: Iterable[int],
    pe_config: PEConfig,
) -> BinSweepResult:
    """Mean reversal score of the bin-averaged series for each bin size.

    For every candidate ``j`` the series is bin averaged, the windowed
    entropy traces are computed for all configured strides, and the mean
    reversal score over the full span is recorded.  Sizes that leave
    fewer points than one entropy window are marked insufficient and
    skipped by the recommendation.

    Raises:
        InvalidInputError: On an empty or non-positive candidate list.
        InsufficientDataError: If no candidate leaves enough data.
    """
    sizes = sorted({int(j) for j in j_range})
    if not sizes:
        raise InvalidInputError("bin size range is empty")
    if sizes[0] < 1:
        raise InvalidInputError(f"bin sizes must be >= 1, got {sizes[0]}")
    n = len(series)
    r_bars = np.full(len(sizes), np.nan, dtype=np.float64)
    sufficient = np.zeros(len(sizes), dtype=bool)
    for idx, j in enumerate(sizes):
        if n // j < pe_config.window:
            continue
        binned = bin_average(series, j)
        traces = multi_tau_pe(binned, pe_config)
        r_bars[idx] = reversal_series(traces).r_bar
        sufficient[idx] = True
    if not sufficient.any():
        raise InsufficientDataError(
            f"every bin size in {sizes[0]}..{sizes[-1]} leaves fewer than "
            f"{pe_config.window} points"
        )
    recommended, achieved_zero = recommend_bin_size(sizes, r_bars)
    return BinSweepResult(
        bin_sizes=np.asarray(sizes, dtype=np.int64),
        r_bars=r_bars,
        sufficient=sufficient,
        recommended_j=recommended,
        achieved_zero=achieved_zero,
    )
