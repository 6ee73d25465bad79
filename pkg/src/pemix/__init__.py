"""Local-mixing diagnostics for evenly sampled time series.

The toolkit computes windowed permutation entropy at a range of sampling
strides, scores how strongly the per-window stride ordering deviates
from the monotone ordering expected of a well-resolved signal, and scans
bin-averaging sizes to estimate the scale on which neighboring samples
have been mixed.
"""

from .entropy import (
    PEConfig,
    PETrace,
    PETraceSet,
    global_pe,
    multi_tau_pe,
    permutation_entropy,
    windowed_pe,
)
from .errors import InsufficientDataError, InvalidInputError, PemixError
from .generators import (
    LorenzParams,
    MackeyGlassParams,
    lorenz_series,
    lorenz_trajectory,
    mackey_glass_series,
    sine_series,
)
from .ingest import CleaningReport, fill_gaps, load_csv, prefilter, regularize
from .mixing import (
    AnsatzConfig,
    BinSweepResult,
    bin_average,
    bin_sweep,
    mixing_ansatz,
    recommend_bin_size,
)
from .ordinal import (
    OrdinalPattern,
    PatternConfig,
    PatternDistribution,
    TiePolicy,
    encode_patterns,
    index_to_pattern,
    ordinal_pattern,
    pattern_distribution,
    pattern_index,
)
from .reversal import (
    FocalTauVector,
    MonotoneReference,
    ReversalSeries,
    focal_tau_vector,
    lambda_for_range,
    reversal_metric,
    reversal_series,
    windowed_rbar,
)
from .series import Quality, TimeSeries, read_series_csv, write_series_csv

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PemixError",
    "InvalidInputError",
    "InsufficientDataError",
    "Quality",
    "TimeSeries",
    "read_series_csv",
    "write_series_csv",
    "TiePolicy",
    "OrdinalPattern",
    "PatternConfig",
    "PatternDistribution",
    "ordinal_pattern",
    "pattern_index",
    "index_to_pattern",
    "encode_patterns",
    "pattern_distribution",
    "PEConfig",
    "PETrace",
    "PETraceSet",
    "permutation_entropy",
    "global_pe",
    "windowed_pe",
    "multi_tau_pe",
    "MonotoneReference",
    "FocalTauVector",
    "ReversalSeries",
    "lambda_for_range",
    "focal_tau_vector",
    "reversal_metric",
    "reversal_series",
    "windowed_rbar",
    "AnsatzConfig",
    "BinSweepResult",
    "mixing_ansatz",
    "bin_average",
    "bin_sweep",
    "recommend_bin_size",
    "LorenzParams",
    "MackeyGlassParams",
    "lorenz_series",
    "lorenz_trajectory",
    "mackey_glass_series",
    "sine_series",
    "CleaningReport",
    "load_csv",
    "regularize",
    "fill_gaps",
    "prefilter",
]
