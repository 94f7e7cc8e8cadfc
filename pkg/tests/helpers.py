"""Builders and independent oracles shared across the test modules.

The oracles here deliberately avoid the library's own code paths: the line
fit solves the normal equations in exact rational arithmetic, and the
monthly statistics use the stdlib statistics module over a plain groupby.
"""

from __future__ import annotations

import math
import statistics
from datetime import date as Date
from fractions import Fraction

from marketreg.series import DailyRecord, DailySeries


def month_dates(n_days: int, days_per_month: int = 21, start_year: int = 2019) -> list[Date]:
    """Consecutive dates with exactly ``days_per_month`` per calendar month."""
    assert days_per_month <= 28
    out = []
    for k in range(n_days):
        month_index, day = divmod(k, days_per_month)
        year, month = divmod(month_index, 12)
        out.append(Date(start_year + year, month + 1, day + 1))
    return out


def series_from_closes(
    closes,
    name: str = "test",
    days_per_month: int = 21,
    volumes=None,
) -> DailySeries:
    closes = list(closes)
    dates = month_dates(len(closes), days_per_month)
    if volumes is None:
        volumes = [None] * len(closes)
    records = tuple(
        DailyRecord(d, float(c), v) for d, c, v in zip(dates, closes, volumes)
    )
    return DailySeries(records, name)


def exponential_series(alpha: float, n_days: int, s0: float = 1000.0,
                       days_per_month: int = 21, name: str = "exp") -> DailySeries:
    return series_from_closes(
        (s0 * math.exp(alpha * k) for k in range(n_days)),
        name=name,
        days_per_month=days_per_month,
    )


def ols_oracle(points):
    """Least squares with intercept via exact rational normal equations.

    Returns (slope, intercept, r_squared, stderr_slope) as floats, or None
    when all x coincide. Independent of the numpy implementation under test.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] * p[0] for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    det = n * sxx - sx * sx
    if det == 0:
        return None
    slope = Fraction(n * sxy - sx * sy, det)
    intercept = Fraction(sy - slope * sx, n)
    sse = sum((y - (intercept + slope * x)) ** 2 for x, y in pts)
    y_mean = Fraction(sy, n)
    sst = sum((y - y_mean) ** 2 for _, y in pts)
    r2 = 1.0 if sst == 0 else float(1 - Fraction(sse, sst))
    stderr = 0.0
    if n > 2:
        sxx_centered = sxx - Fraction(sx * sx, n)
        stderr = math.sqrt(float(Fraction(sse, n - 2) / sxx_centered))
    return float(slope), float(intercept), r2, stderr


def monthly_oracle(series: DailySeries, min_days: int = 10):
    """Brute-force recomputation of the per-month mean/std of ln(close)."""
    groups: dict[tuple[int, int], list[float]] = {}
    for rec in series.records:
        groups.setdefault((rec.date.year, rec.date.month), []).append(math.log(rec.close))
    out = []
    for key in sorted(groups):
        vals = groups[key]
        if len(vals) >= min_days:
            out.append((key, statistics.fmean(vals), statistics.pstdev(vals), len(vals)))
    return out
