"""Synthetic hourly weather and load profiles for tests and the quickstart.

The studied site's measured series are not redistributable, so these
generators produce clearly-labeled stand-ins: physically shaped hourly
series (diurnal/seasonal structure, autocorrelated cloudiness) that are
then monotonically warped so the annual min / mean / max match the
published site statistics exactly. Per-hour values are synthetic; only
those three moments are calibrated.
"""

from __future__ import annotations

import numpy as np

from .dataio import WeatherSeries
from .solar import HOURS_PER_YEAR, SiteSpec, sun_positions_year

# Annual (min, mean, max) calibration targets for the studied site:
# irradiance in W/m2, temperature in degC, load in MW.
SITE_STATS = {
    "ghi": (0.0, 153.0991, 1002.0),
    "dni": (0.0, 163.6844, 998.0),
    "dhi": (0.0, 58.8176, 490.0),
    "t_amb": (-14.5, 8.2508, 27.8),
    "load": (0.0217, 0.4686, 2.3153),
}

DEFAULT_SEED = 2022


def warp_to_stats(x: np.ndarray, lo: float, mean: float, hi: float) -> np.ndarray:
    """Monotone remap of a series to exact (min, mean, max).

    Rescales to [0, 1], raises to a power p found by bisection so the
    mean lands on target (the mean of y**p is strictly decreasing in p),
    then maps affinely onto [lo, hi]. The extremes are fixed points of
    the power warp, so min and max are exact by construction.
    """
    x = np.asarray(x, dtype=np.float64)
    if not lo < mean < hi:
        raise ValueError("need lo < mean < hi")
    span = x.max() - x.min()
    if span <= 0:
        raise ValueError("input series is constant; cannot warp")
    y = (x - x.min()) / span
    target = (mean - lo) / (hi - lo)

    def mean_at(p: float) -> float:
        return float(np.mean(y**p))

    p_lo, p_hi = 1e-4, 1.0
    if mean_at(1.0) > target:  # need more curvature downward
        p_lo = 1.0
        p_hi = 2.0
        while mean_at(p_hi) > target:
            p_hi *= 2.0
            if p_hi > 1e6:
                raise ValueError("mean target unreachable by power warp")
    for _ in range(200):
        p_mid = 0.5 * (p_lo + p_hi)
        if mean_at(p_mid) > target:
            p_lo = p_mid
        else:
            p_hi = p_mid
    p = 0.5 * (p_lo + p_hi)
    return lo + (hi - lo) * y**p


def _ar1(rng: np.random.Generator, n: int, rho: float) -> np.ndarray:
    """Autocorrelated noise in [0, 1] (min-max normalized after smoothing)."""
    u = rng.random(n)
    out = np.empty(n)
    out[0] = u[0]
    for i in range(1, n):
        out[i] = rho * out[i - 1] + (1.0 - rho) * u[i]
    out -= out.min()
    peak = out.max()
    if peak > 0:
        out /= peak
    return out


def synthetic_weather(seed: int = DEFAULT_SEED, site: SiteSpec | None = None) -> WeatherSeries:
    """One synthetic non-leap year of (ghi, dni, dhi, t_amb).

    Irradiance is zero at or below the 1 degree elevation floor and is
    deliberately concentrated toward high-sun hours (the sin-elevation
    gates below), which reproduces the site's observed anisotropy:
    beam-heavy clear middays, diffuse-only low-sun hours. The per-hour
    values are synthetic; only the annual min/mean/max are calibrated.
    """
    if site is None:
        site = SiteSpec(
            latitude=43.893648, longitude=-86.4447, timezone_offset=-5.0, tilt_deg=36.5
        )
    rng = np.random.default_rng(seed)
    angles = sun_positions_year(site)
    sin_alpha = np.sin(np.radians(np.maximum(angles["elevation"], 0.0)))
    lit = angles["elevation"] > 1.0
    hour_of_day = np.arange(HOURS_PER_YEAR) % 24
    day = np.arange(HOURS_PER_YEAR) // 24

    clear = _ar1(rng, HOURS_PER_YEAR, rho=0.92)  # 1 = clear sky, 0 = overcast

    ghi_base = np.maximum(sin_alpha - 0.47, 0.0) ** 1.1 * (0.3 + 0.7 * clear**2) * lit
    dni_base = np.maximum(sin_alpha - 0.42, 0.0) ** 0.9 * clear**3 * lit
    dhi_base = np.maximum(sin_alpha - 0.10, 0.0) ** 1.3 * (0.35 + 0.65 * (1.0 - clear)) * lit

    season = -np.cos(2.0 * np.pi * (day - 14) / 365.0)  # trough mid-January
    diurnal = np.cos(2.0 * np.pi * (hour_of_day - 15) / 24.0)  # peak 15:00
    t_base = season + 0.35 * diurnal + 0.6 * _ar1(rng, HOURS_PER_YEAR, rho=0.97)

    return WeatherSeries(
        ghi=warp_to_stats(ghi_base, *SITE_STATS["ghi"]),
        dni=warp_to_stats(dni_base, *SITE_STATS["dni"]),
        dhi=warp_to_stats(dhi_base, *SITE_STATS["dhi"]),
        t_amb=warp_to_stats(t_base, *SITE_STATS["t_amb"]),
    )


def synthetic_load(seed: int = DEFAULT_SEED) -> np.ndarray:
    """One synthetic year of residential sub-feeder load in MW."""
    rng = np.random.default_rng(seed + 1)
    hour_of_day = np.arange(HOURS_PER_YEAR) % 24
    day = np.arange(HOURS_PER_YEAR) // 24

    morning = np.exp(-0.5 * ((hour_of_day - 8.0) / 2.0) ** 2)
    evening = np.exp(-0.5 * ((hour_of_day - 19.0) / 2.5) ** 2)
    weekday = np.where(day % 7 < 5, 1.0, 0.85)
    season = 1.0 + 0.25 * np.cos(2.0 * np.pi * (day - 195) / 365.0)
    noise = 0.3 + 0.7 * _ar1(rng, HOURS_PER_YEAR, rho=0.8)

    base = (0.25 + 0.5 * morning + 0.9 * evening) * weekday * season * noise
    return warp_to_stats(base, *SITE_STATS["load"])


def random_week(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Unstructured one-week (dni, dhi, ghi, load) draw for property tests.

    Values are bounded but otherwise arbitrary: the dispatch invariants
    must hold for any nonnegative inputs, not just plausible weather.
    """
    n = 168
    dni = rng.uniform(0.0, 1000.0, n) * (rng.random(n) < 0.6)
    dhi = rng.uniform(0.0, 500.0, n) * (rng.random(n) < 0.8)
    ghi = rng.uniform(0.0, 1100.0, n)
    load = rng.uniform(0.0, 3.0, n)
    return dni, dhi, ghi, load
