"""Published regularity parameters for six major stock indices.

Reference values estimated from roughly two decades of daily data ending in
April 2019. Units: ``a`` and ``nu`` in percent per day, ``mu`` and ``sigma``
in percent, ``m`` and ``w`` per month. The S&P 500 row carries no volume
growth figure (None).
"""

from __future__ import annotations

INDEX_BENCHMARKS: dict[str, dict[str, float | None]] = {
    "S&P 500": {"a": 0.03, "mu": 0.032, "sigma": 1.203, "m": 0.006, "w": -2.78e-6, "nu": None},
    "SSE Composite": {"a": 0.04, "mu": 0.101, "sigma": 2.805, "m": 0.009, "w": -3.09e-5, "nu": 0.12},
    "Nikkei": {"a": 0.01, "mu": 0.027, "sigma": 1.494, "m": 0.003, "w": -1.02e-6, "nu": 0.53},
    "DAX": {"a": 0.03, "mu": 0.025, "sigma": 1.466, "m": 0.006, "w": -4.42e-6, "nu": 0.02},
    "FTSE 100": {"a": 0.01, "mu": 0.011, "sigma": 1.165, "m": 0.002, "w": -1.78e-6, "nu": 0.003},
    "NIFTY": {"a": 0.05, "mu": 0.057, "sigma": 1.495, "m": 0.010, "w": -3.41e-6, "nu": 0.04},
}

# Correlation between the a and m columns above; the daily and monthly
# growth rates move together across markets.
CROSS_INDEX_A_M_CORRELATION = 0.987


def benchmark_columns(field: str) -> list[float | None]:
    """One column of the benchmark table, in its canonical row order."""
    return [row[field] for row in INDEX_BENCHMARKS.values()]
