"""Estimators for long-run stock-index regularities, plus a seeded
generalized-Wiener simulator that serves as their oracle."""

from .errors import (
    DegenerateFit,
    DegenerateInput,
    DegenerateX,
    DuplicateDate,
    EmptySeries,
    InsufficientData,
    MalformedRow,
    MarketRegError,
    NonPositivePrice,
    NoVolumeData,
    PathRejectionLimit,
    UnknownColumn,
)
from .series import (
    MIN_DAYS_PER_MONTH,
    DailyRecord,
    DailySeries,
    FluctuationSeries,
    MonthlyAggregate,
    log_series,
    monthly_aggregates,
)
from .ingest import (
    IngestConfig,
    ValidationSummary,
    parse_daily_file,
    parse_daily_path,
    validate_series,
    write_daily_file,
)
from .estimators import (
    DEFAULT_BIN_WIDTH,
    FitResult,
    GaussianOffsetFit,
    Histogram,
    RegularityReport,
    analyze_index,
    build_histogram,
    daily_fluctuations,
    detect_variance_spike,
    fit_daily_growth,
    fit_gaussian_offset,
    fit_monthly_growth,
    fit_variance_decline,
    fit_volume_growth,
    fluctuation_moments,
    linear_least_squares,
    pearson_correlation,
)
from .simulate import (
    GbmParams,
    VolatilitySchedule,
    simulate_gbm,
    simulate_volume,
    synthetic_dates,
    wiener_increments,
)
from .benchmarks import CROSS_INDEX_A_M_CORRELATION, INDEX_BENCHMARKS

__version__ = "0.1.0"

__all__ = [
    "MarketRegError",
    "NonPositivePrice",
    "InsufficientData",
    "MalformedRow",
    "DuplicateDate",
    "EmptySeries",
    "UnknownColumn",
    "DegenerateX",
    "DegenerateInput",
    "DegenerateFit",
    "NoVolumeData",
    "PathRejectionLimit",
    "DailyRecord",
    "DailySeries",
    "FluctuationSeries",
    "MonthlyAggregate",
    "MIN_DAYS_PER_MONTH",
    "log_series",
    "monthly_aggregates",
    "IngestConfig",
    "ValidationSummary",
    "parse_daily_file",
    "parse_daily_path",
    "validate_series",
    "write_daily_file",
    "DEFAULT_BIN_WIDTH",
    "FitResult",
    "Histogram",
    "GaussianOffsetFit",
    "RegularityReport",
    "linear_least_squares",
    "fit_daily_growth",
    "daily_fluctuations",
    "fluctuation_moments",
    "build_histogram",
    "fit_gaussian_offset",
    "fit_monthly_growth",
    "fit_variance_decline",
    "detect_variance_spike",
    "fit_volume_growth",
    "pearson_correlation",
    "analyze_index",
    "GbmParams",
    "VolatilitySchedule",
    "wiener_increments",
    "simulate_gbm",
    "simulate_volume",
    "synthetic_dates",
    "INDEX_BENCHMARKS",
    "CROSS_INDEX_A_M_CORRELATION",
    "__version__",
]
