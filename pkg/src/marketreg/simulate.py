"""Seeded Wiener increments, geometric-Brownian price paths and synthetic volumes.

The relative price change per step is a*dt + b*dW with dW = eps*sqrt(dt) and
eps standard normal, applied directly in its finite-difference form so that
simulated daily fluctuations match the estimators' definition without any
transformation bias.

Randomness is pinned for reproducibility: a PCG64 stream supplies 53-bit
uniforms and standard normals come from the inverse CDF (scipy's ndtri), so
identical seeds give bit-identical sequences on every platform.

The synthetic calendar packs exactly 21 trading days into every calendar
month, which makes the monthly-growth identity m = (a) * 21 exact on
noiseless input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date as Date

import numpy as np
from scipy.special import ndtri

from .errors import PathRejectionLimit
from .series import DailyRecord, DailySeries

TRADING_DAYS_PER_MONTH = 21
EPOCH_YEAR = 2000
REDRAW_LIMIT = 1000


@dataclass(frozen=True)
class GbmParams:
    """Generating parameters of one price path.

    ``a`` is the drift in fraction per day, ``b`` the volatility in fraction
    per sqrt(day); ``dt`` defaults to one trading day.
    """

    a: float
    b: float
    s0: float
    n_days: int
    seed: int
    dt: float = 1.0

    def __post_init__(self):
        if self.s0 <= 0:
            raise ValueError("s0 must be > 0")
        if self.b < 0:
            raise ValueError("b must be >= 0")
        if self.n_days < 1:
            raise ValueError("n_days must be >= 1")
        if self.dt <= 0:
            raise ValueError("dt must be > 0")


@dataclass(frozen=True)
class VolatilitySchedule:
    """Per-step volatility level: constant, or declining linearly over the path."""

    mode: str
    b_start: float
    b_end: float = 0.0

    def __post_init__(self):
        if self.mode not in ("constant", "linear-decay"):
            raise ValueError(f"unknown schedule mode {self.mode!r}")
        if self.b_start < 0:
            raise ValueError("b_start must be >= 0")
        if self.mode == "linear-decay" and not self.b_start >= self.b_end >= 0:
            raise ValueError("linear-decay needs b_start >= b_end >= 0")

    @classmethod
    def constant(cls, b: float) -> "VolatilitySchedule":
        return cls("constant", b, b)

    @classmethod
    def linear_decay(cls, b_start: float, b_end: float) -> "VolatilitySchedule":
        return cls("linear-decay", b_start, b_end)

    def levels(self, n_steps: int) -> np.ndarray:
        """Volatility coefficient for each of ``n_steps`` increments."""
        if self.mode == "constant" or n_steps <= 1:
            return np.full(n_steps, self.b_start)
        return np.linspace(self.b_start, self.b_end, n_steps)


def _standard_normals(rng: np.random.Generator, n: int) -> np.ndarray:
    # Inverse-CDF over the generator's 53-bit uniforms; the clamp only guards
    # the measure-zero u == 0 draw.
    u = np.maximum(rng.random(n), 2.0**-54)
    return ndtri(u)


def wiener_increments(n: int, dt: float = 1.0, seed: int = 0) -> np.ndarray:
    """n independent Wiener increments eps*sqrt(dt), eps standard normal.

    The same seed always yields the same sequence, bit for bit.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if dt <= 0:
        raise ValueError("dt must be > 0")
    rng = np.random.default_rng(seed)
    return _standard_normals(rng, n) * math.sqrt(dt)


def synthetic_dates(n: int) -> list[Date]:
    """Consecutive synthetic trading days, 21 per calendar month, from a fixed epoch."""
    dates = []
    for k in range(n):
        month_index, day = divmod(k, TRADING_DAYS_PER_MONTH)
        year, month = divmod(month_index, 12)
        dates.append(Date(EPOCH_YEAR + year, month + 1, day + 1))
    return dates


def simulate_gbm(
    params: GbmParams,
    schedule: VolatilitySchedule | None = None,
    index_name: str = "simulated",
) -> DailySeries:
    """Simulate one price path S_{k+1} = S_k * (1 + a*dt + b_k*dW_k).

    ``schedule`` overrides the constant volatility ``params.b`` when given.
    A step that would drive the price nonpositive is rejected and its
    increment redrawn from the same stream; clamping instead would bias the
    drift this module exists to verify. More than REDRAW_LIMIT consecutive
    redraws raise PathRejectionLimit, which signals absurd parameters.
    """
    schedule = schedule or VolatilitySchedule.constant(params.b)
    n_steps = params.n_days - 1
    rng = np.random.default_rng(params.seed)
    sqrt_dt = math.sqrt(params.dt)
    b_levels = schedule.levels(n_steps) if n_steps > 0 else np.empty(0)
    dws = _standard_normals(rng, n_steps) * sqrt_dt if n_steps > 0 else np.empty(0)

    prices = np.empty(params.n_days)
    prices[0] = params.s0
    drift = params.a * params.dt
    for k in range(n_steps):
        dw = dws[k]
        nxt = prices[k] * (1.0 + drift + b_levels[k] * dw)
        redraws = 0
        while nxt <= 0:
            redraws += 1
            if redraws > REDRAW_LIMIT:
                raise PathRejectionLimit(
                    f"{REDRAW_LIMIT} consecutive redraws at step {k}; parameters are absurd"
                )
            dw = float(_standard_normals(rng, 1)[0]) * sqrt_dt
            nxt = prices[k] * (1.0 + drift + b_levels[k] * dw)
        prices[k + 1] = nxt

    records = tuple(
        DailyRecord(day, float(price))
        for day, price in zip(synthetic_dates(params.n_days), prices)
    )
    return DailySeries(records, index_name)


def simulate_volume(
    nu: float, n0: float, noise_sd: float, n_days: int, seed: int
) -> np.ndarray:
    """Synthetic daily transaction counts N_k = round(n0 * exp(nu*k + eta_k)).

    eta_k is zero-mean normal with standard deviation ``noise_sd``; counts
    are nonnegative integers by construction.
    """
    if n0 < 1:
        raise ValueError("n0 must be >= 1")
    if noise_sd < 0:
        raise ValueError("noise_sd must be >= 0")
    if n_days < 1:
        raise ValueError("n_days must be >= 1")
    rng = np.random.default_rng(seed)
    eta = _standard_normals(rng, n_days) * noise_sd if noise_sd > 0 else np.zeros(n_days)
    k = np.arange(n_days)
    counts = np.rint(n0 * np.exp(nu * k + eta)).astype(np.int64)
    return np.maximum(counts, 0)
