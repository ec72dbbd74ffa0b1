"""Sun-position geometry for fixed-tilt arrays.

Angle conventions: latitude positive north, longitude positive east,
surface azimuth measured from due south (0 = south, positive toward
west), solar azimuth on the same axis.  All angles in degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

HOURS_PER_YEAR = 8760


@dataclass(frozen=True)
class SiteSpec:
    """Fixed array site: location, timezone and panel orientation."""

    latitude: float
    longitude: float
    timezone_offset: float
    tilt_deg: float
    surface_azimuth_deg: float = 0.0  # 0 = due south, positive toward west

    def __post_init__(self):
        if not -90.0 <= self.latitude <= 90.0:
            raise ConfigError(f"latitude {self.latitude} outside [-90, 90]")
        if not 0.0 <= self.tilt_deg <= 90.0:
            raise ConfigError(f"tilt {self.tilt_deg} outside [0, 90]")


@dataclass(frozen=True)
class SolarPosition:
    """Sun angles for one timestep (degrees); elevation + zenith = 90."""

    declination: float
    hour_angle: float
    elevation: float
    zenith: float
    azimuth: float


def declination(day_of_year) -> np.ndarray | float:
    """Solar declination via Cooper's formula, degrees in [-23.45, 23.45].

    Accepts a scalar or array of day numbers (1..365).
    """
    n = np.asarray(day_of_year)
    if np.any(n < 1) or np.any(n > 365):
        raise ValueError(f"day_of_year must be in 1..365, got {day_of_year}")
    delta = 23.45 * np.sin(np.radians(360.0 * (284.0 + n) / 365.0))
    return float(delta) if np.isscalar(day_of_year) else delta


def _solar_angles(site: SiteSpec, hour_index):
    """Vectorized declination / hour angle / elevation / zenith / azimuth.

    Hours are local standard time; the timestep center (hour + 0.5) is
    used, with the 4 min-per-degree longitude correction and no
    equation-of-time term.
    """
    idx = np.asarray(hour_index, dtype=np.float64)
    if np.any(idx < 0) or np.any(idx >= HOURS_PER_YEAR):
        raise ValueError("hour index outside the simulated year (0..8759)")
    day = np.floor(idx / 24.0) + 1.0
    clock = np.mod(idx, 24.0) + 0.5

    delta = 23.45 * np.sin(np.radians(360.0 * (284.0 + day) / 365.0))
    # Local standard time meridian sits at 15 deg per hour of UTC offset.
    solar_time = clock + 4.0 * (site.longitude - 15.0 * site.timezone_offset) / 60.0
    omega = 15.0 * (solar_time - 12.0)

    phi = np.radians(site.latitude)
    dec = np.radians(delta)
    ha = np.radians(omega)

    sin_alpha = np.sin(phi) * np.sin(dec) + np.cos(phi) * np.cos(dec) * np.cos(ha)
    sin_alpha = np.clip(sin_alpha, -1.0, 1.0)
    alpha = np.degrees(np.arcsin(sin_alpha))
    theta_z = 90.0 - alpha

    # Azimuth from due south, positive toward west (sign of the hour angle).
    cos_tz = sin_alpha
    sin_tz = np.sqrt(np.maximum(0.0, 1.0 - cos_tz * cos_tz))
    denom = sin_tz * np.cos(phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_gamma = np.where(
            denom > 1e-12,
            (cos_tz * np.sin(phi) - np.sin(dec)) / np.where(denom > 1e-12, denom, 1.0),
            1.0,
        )
    gamma = np.sign(omega) * np.degrees(np.arccos(np.clip(cos_gamma, -1.0, 1.0)))
    return delta, omega, alpha, theta_z, gamma


def sun_position(site: SiteSpec, hour_index: int) -> SolarPosition:
    """Sun position for one local hour index (0..8759) of the year."""
    delta, omega, alpha, theta_z, gamma = _solar_angles(site, float(hour_index))
    return SolarPosition(
        declination=float(delta),
        hour_angle=float(omega),
        elevation=float(alpha),
        zenith=float(theta_z),
        azimuth=float(gamma),
    )


def sun_positions_year(site: SiteSpec) -> dict[str, np.ndarray]:
    """All 8,760 hourly sun positions as arrays keyed by angle name."""
    idx = np.arange(HOURS_PER_YEAR)
    delta, omega, alpha, theta_z, gamma = _solar_angles(site, idx)
    return {
        "declination": delta,
        "hour_angle": omega,
        "elevation": alpha,
        "zenith": theta_z,
        "azimuth": gamma,
    }


def incidence_cosine(pos: SolarPosition, site: SiteSpec, face: str = "front") -> float:
    """max(0, cos AOI) between the sun and the requested module face.

    The rear face is the front plane's normal flipped: tilt 180 - beta,
    azimuth rotated 180 degrees, so the rear cosine is the clamped
    negative of the front expression and the two are never positive at
    the same time.
    """
    return float(
        incidence_cosines(
            np.asarray(pos.zenith), np.asarray(pos.azimuth), site, face
        )
    )


def incidence_cosines(zenith_deg, azimuth_deg, site: SiteSpec, face: str = "front"):
    """Vectorized form of :func:`incidence_cosine`."""
    if face not in ("front", "rear"):
        raise ValueError(f"face must be 'front' or 'rear', got {face!r}")
    tz = np.radians(np.asarray(zenith_deg, dtype=np.float64))
    gs = np.radians(np.asarray(azimuth_deg, dtype=np.float64))
    beta = np.radians(site.tilt_deg)
    gamma = np.radians(site.surface_azimuth_deg)
    cos_aoi = np.cos(tz) * np.cos(beta) + np.sin(tz) * np.sin(beta) * np.cos(gs - gamma)
    if face == "rear":
        cos_aoi = -cos_aoi
    return np.maximum(0.0, cos_aoi)
