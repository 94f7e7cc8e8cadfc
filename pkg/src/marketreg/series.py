"""Core daily time-series types, log transform and calendar-month aggregation.

Time is measured in trading days: record k sits at t = k no matter how many
calendar days separate it from record k-1. Monthly quantities group records
by calendar (year, month) and keep only months with enough trading days to
give a usable dispersion estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date as Date

import numpy as np

from .errors import InsufficientData, NonPositivePrice

# Partial first/last months below this many trading days are dropped so that
# per-month standard deviations are not dominated by tiny samples.
MIN_DAYS_PER_MONTH = 10


@dataclass(frozen=True)
class DailyRecord:
    """One trading day: closing price and, optionally, traded volume.

    A close must be positive for any estimation to make sense. Violations are
    surfaced by ``ingest.validate_series`` and rejected with NonPositivePrice
    by the operations that take logarithms or divide by the previous close,
    so that programmatically built series can still be inspected.
    """

    date: Date
    close: float
    volume: int | None = None

    def __post_init__(self):
        if self.volume is not None and self.volume < 0:
            raise ValueError(f"volume must be >= 0, got {self.volume}")


@dataclass(frozen=True)
class DailySeries:
    """Ordered daily records for one index.

    The trading-day index of ``records[k]`` is k; ``t_origin`` is the
    calendar date of t = 0. Dates must be strictly increasing. Instances are
    immutable; every operation on them is a pure function.
    """

    records: tuple[DailyRecord, ...]
    index_name: str = "unnamed"

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise ValueError("a DailySeries needs at least one record")
        for prev, cur in zip(self.records, self.records[1:]):
            if cur.date <= prev.date:
                raise ValueError(
                    f"dates must be strictly increasing, {cur.date} follows {prev.date}"
                )

    def __len__(self) -> int:
        return len(self.records)

    @property
    def t_origin(self) -> Date:
        """Calendar date of trading day t = 0."""
        return self.records[0].date

    def closes(self) -> np.ndarray:
        return np.array([r.close for r in self.records], dtype=float)

    def volumes(self) -> list[int | None]:
        return [r.volume for r in self.records]

    def has_volume(self) -> bool:
        return any(r.volume is not None for r in self.records)

    def with_volumes(self, volumes) -> "DailySeries":
        """Copy of the series with the volume column replaced."""
        volumes = list(volumes)
        if len(volumes) != len(self.records):
            raise ValueError("volume column length must match the series")
        recs = tuple(
            DailyRecord(r.date, r.close, None if v is None else int(v))
            for r, v in zip(self.records, volumes)
        )
        return DailySeries(recs, self.index_name)


@dataclass(frozen=True)
class FluctuationSeries:
    """Day-over-day percentage changes, one per record pair of the source.

    Element k-1 is the percentage change from day k-1 to day k, so the
    series is one shorter than the price series it came from.
    """

    values: tuple[float, ...]
    source: str = "unnamed"

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("every fluctuation must be finite")

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


@dataclass(frozen=True)
class MonthlyAggregate:
    """Mean and population standard deviation of ln(close) over one calendar month.

    ``tau`` counts retained months from 0; ``month`` is the (year, month)
    the aggregate was computed from, kept so that spikes can be located on
    the calendar.
    """

    tau: int
    mean_log: float
    std_log: float
    n_days: int
    month: tuple[int, int] | None = None

    def __post_init__(self):
        if self.std_log < 0:
            raise ValueError("std_log must be >= 0")
        if self.n_days < 1:
            raise ValueError("n_days must be >= 1")

    @property
    def var_log(self) -> float:
        return self.std_log**2


def log_series(series: DailySeries) -> list[tuple[int, float]]:
    """Natural log of each close against its trading-day index.

    Raises NonPositivePrice if any close is <= 0.
    """
    out = []
    for t, rec in enumerate(series.records):
        if rec.close <= 0:
            raise NonPositivePrice(
                f"close at t={t} ({rec.date.isoformat()}) is {rec.close}"
            )
        out.append((t, math.log(rec.close)))
    return out


def monthly_aggregates(
    series: DailySeries, min_days: int = MIN_DAYS_PER_MONTH
) -> list[MonthlyAggregate]:
    """Aggregate ln(close) by calendar month.

    Each retained month yields the arithmetic mean and the population
    (divide-by-n) standard deviation of ln(close) over its trading days.
    Months with fewer than ``min_days`` trading days are dropped and tau is
    assigned sequentially over the months that remain.

    Raises InsufficientData when the series is shorter than 2 records or no
    month qualifies.
    """
    if len(series) < 2:
        raise InsufficientData("need at least 2 records to aggregate monthly")
    logs = log_series(series)
    by_month: dict[tuple[int, int], list[float]] = {}
    for (_, ln_close), rec in zip(logs, series.records):
        by_month.setdefault((rec.date.year, rec.date.month), []).append(ln_close)

    out: list[MonthlyAggregate] = []
    tau = 0
    for key in sorted(by_month):
        values = by_month[key]
        if len(values) < min_days:
            continue
        arr = np.asarray(values)
        out.append(
            MonthlyAggregate(
                tau=tau,
                mean_log=float(arr.mean()),
                std_log=float(arr.std()),  # population convention, ddof=0
                n_days=len(values),
                month=key,
            )
        )
        tau += 1
    if not out:
        raise InsufficientData(f"no calendar month has at least {min_days} trading days")
    return out
