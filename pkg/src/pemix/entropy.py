"""Normalized permutation entropy, globally and over sliding windows.

Entropy is Shannon entropy of the ordinal pattern distribution divided
by ``log(ell!)``, so values live in [0, 1]: 0 for a single repeated
pattern (e.g. a monotone stretch), 1 for the uniform distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidInputError
from .ordinal import PatternConfig, PatternDistribution, encode_patterns, pattern_distribution
from .series import TimeSeries

__all__ = [
    "PEConfig",
    "PETrace",
    "PETraceSet",
    "permutation_entropy",
    "global_pe",
    "windowed_pe",
    "multi_tau_pe",
]

# Cells (window rows x ell! columns) per cumulative-histogram chunk.
# Bounds the sliding computation's working memory to a few tens of MB.
_CHUNK_CELLS = 2_000_000


@dataclass(frozen=True)
class PEConfig:
    """Shape of a windowed, multi-stride entropy computation.

    Attributes:
        ell: Points per ordinal pattern, >= 2.
        window: Observations per sliding window; must fit at least one
            pattern at the largest stride: ``window >= (ell-1)*tau_max + 1``.
        tau_min: Smallest stride, >= 1.
        tau_max: Largest stride, >= tau_min.
        hop: Anchor step between consecutive windows, >= 1.
    """

    ell: int = 4
    window: int = 5000
    tau_min: int = 1
    tau_max: int = 6
    hop: int = 1

    def __post_init__(self) -> None:
        for name in ("ell", "window", "tau_min", "tau_max", "hop"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.ell < 2:
            raise InvalidInputError(f"ell must be >= 2, got {self.ell}")
        if self.tau_min < 1:
            raise InvalidInputError(f"tau_min must be >= 1, got {self.tau_min}")
        if self.tau_max < self.tau_min:
            raise InvalidInputError(
                f"tau_max must be >= tau_min, got {self.tau_max} < {self.tau_min}"
            )
        if self.hop < 1:
            raise InvalidInputError(f"hop must be >= 1, got {self.hop}")
        needed = (self.ell - 1) * self.tau_max + 1
        if self.window < needed:
            raise InvalidInputError(
                f"window={self.window} cannot fit one pattern at tau={self.tau_max} "
                f"(needs >= {needed})"
            )

    @property
    def taus(self) -> tuple[int, ...]:
        return tuple(range(self.tau_min, self.tau_max + 1))


@dataclass(frozen=True)
class PETrace:
    """Windowed entropy values for one stride.

    ``anchors[i]`` is the index of the last observation inside window
    ``i``; anchors increase by the hop.  ``values[i]`` is that window's
    normalized entropy.
    """

    tau: int
    anchors: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        anchors = np.asarray(self.anchors, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        if anchors.shape != values.shape or anchors.ndim != 1:
            raise InvalidInputError("anchors and values must be matching 1-D arrays")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.anchors.shape[0])


@dataclass(frozen=True)
class PETraceSet:
    """Aligned entropy traces for every stride of a contiguous range."""

    traces: tuple[PETrace, ...]

    def __post_init__(self) -> None:
        traces = tuple(self.traces)
        if len(traces) < 1:
            raise InvalidInputError("a trace set needs at least one trace")
        taus = [t.tau for t in traces]
        if taus != list(range(taus[0], taus[0] + len(taus))):
            raise InvalidInputError(f"traces must cover a contiguous stride range, got {taus}")
        first = traces[0].anchors
        for t in traces[1:]:
            if not np.array_equal(t.anchors, first):
                raise InvalidInputError("all traces in a set must share the same anchors")
        object.__setattr__(self, "traces", traces)

    @property
    def tau_min(self) -> int:
        return self.traces[0].tau

    @property
    def tau_max(self) -> int:
        return self.traces[-1].tau

    @property
    def taus(self) -> np.ndarray:
        return np.arange(self.tau_min, self.tau_max + 1, dtype=np.int64)

    @property
    def anchors(self) -> np.ndarray:
        return self.traces[0].anchors

    def matrix(self) -> np.ndarray:
        """Entropy values stacked as shape ``(n_strides, n_anchors)``."""
        return np.stack([t.values for t in self.traces], axis=0)


def _normalized_entropy(probs: np.ndarray, ell: int) -> np.ndarray:
    """Shared kernel: entropy of probability rows, normalized to [0, 1].

    Both the single-distribution path and the sliding-window path reduce
    to this function, so the two agree bit for bit on identical counts.
    """
    logs = np.log(np.where(probs > 0.0, probs, 1.0))
    plogp = probs * logs
    h = -(plogp.sum(axis=-1)) / math.log(math.factorial(ell))
    # A perfectly uniform tally can land one rounding step above 1.0.
    return np.minimum(h + 0.0, 1.0)


def permutation_entropy(dist: PatternDistribution, ell: int) -> float:
    """Normalized permutation entropy of one pattern distribution.

    Raises:
        InvalidInputError: If ``probs`` length is not ``ell!``.
        InsufficientDataError: If the distribution tallied no windows.
    """
    nfact = math.factorial(ell)
    if dist.probs.shape[0] != nfact:
        raise InvalidInputError(
            f"distribution has {dist.probs.shape[0]} cells, expected {nfact} for ell={ell}"
        )
    if dist.count < 1:
        raise InsufficientDataError("cannot compute entropy of an empty distribution")
    return float(_normalized_entropy(dist.probs, ell))


def global_pe(series: TimeSeries, ell: int, tau: int) -> float:
    """Entropy of the pattern distribution over the whole series."""
    dist = pattern_distribution(series, PatternConfig(ell=ell, tau=tau))
    return permutation_entropy(dist, ell)


def windowed_pe(series: TimeSeries, config: PEConfig, tau: int) -> PETrace:
    """Sliding-window entropy trace at one stride.

    Windows hold ``config.window`` consecutive observations and advance
    by ``config.hop``; each value is anchored at the index of its
    window's last observation, so traces computed at different strides
    align anchor for anchor.

    Raises:
        InvalidInputError: If ``tau`` does not fit the window, or the
            series has non-finite values.
        InsufficientDataError: If the series is shorter than one window.
    """
    if tau < 1:
        raise InvalidInputError(f"tau must be >= 1, got {tau}")
    span = (config.ell - 1) * tau
    if config.window < span + 1:
        raise InvalidInputError(
            f"window={config.window} cannot fit one pattern at tau={tau}"
        )
    n = len(series)
    if n < config.window:
        raise InsufficientDataError(
            f"series of length {n} is shorter than one window of {config.window}"
        )
    codes = encode_patterns(series.values, config.ell, tau)
    anchors = np.arange(config.window - 1, n, config.hop, dtype=np.int64)
    values = _sliding_entropy(codes, anchors, config.window, config.ell, span)
    return PETrace(tau=tau, anchors=anchors, values=values)


def _sliding_entropy(
    codes: np.ndarray,
    anchors: np.ndarray,
    window: int,
    ell: int,
    span: int,
) -> np.ndarray:
    """Entropy per anchored window via chunked cumulative pattern counts."""
    nfact = math.factorial(ell)
    per_window = window - span
    hop = int(anchors[1] - anchors[0]) if anchors.shape[0] > 1 else 1
    out = np.empty(anchors.shape[0], dtype=np.float64)
    rows = max(_CHUNK_CELLS // nfact - window, 1)
    chunk = max(rows // hop, 1)
    for s in range(0, anchors.shape[0], chunk):
        sub = anchors[s : s + chunk]
        first = sub - (window - 1)  # first pattern start per window
        last = sub - span  # last pattern start per window, inclusive
        base = int(first[0])
        seg = codes[base : int(last[-1]) + 1]
        cum = np.zeros((seg.shape[0] + 1, nfact), dtype=np.int64)
        cum[np.arange(1, seg.shape[0] + 1), seg] = 1
        np.cumsum(cum, axis=0, out=cum)
        counts = cum[last - base + 1] - cum[first - base]
        out[s : s + sub.shape[0]] = _normalized_entropy(counts / per_window, ell)
    return out


def multi_tau_pe(series: TimeSeries, config: PEConfig) -> PETraceSet:
    """Windowed entropy at every stride of the configured range.

    All traces share the same anchors, which is what makes the
    per-anchor stride ordering in the reversal stage well defined.
    """
    traces = tuple(windowed_pe(series, config, tau) for tau in config.taus)
    return PETraceSet(traces=traces)
