"""Plane-of-array irradiance models.

Monofacial arrays use the global-tilt ratio form; bifacial arrays use a
beam + isotropic-diffuse + ground-reflected decomposition per face, with
a constant rear-side reflection loss and a bifaciality weighting for the
rear contribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .solar import SiteSpec, SolarPosition, incidence_cosines

# Below this solar elevation (degrees) every plane-of-array component is
# zeroed; it also guards the sin(elevation) singularity of the tilt ratio.
ELEVATION_FLOOR_DEG = 1.0


@dataclass(frozen=True)
class BifacialParams:
    """Ground albedo, rear reflection loss and bifaciality weighting."""

    albedo: float = 0.5
    rear_loss: float = 0.789
    bifaciality: float = 0.7

    def __post_init__(self):
        for name in ("albedo", "rear_loss", "bifaciality"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class IrradianceBreakdown:
    """Beam / sky-diffuse / ground-reflected components on one face (W/m2)."""

    beam: float
    diffuse: float
    reflected: float

    @property
    def total(self) -> float:
        return self.beam + self.diffuse + self.reflected


def ghi_from_components(dni, dhi, zenith_deg):
    """Reconstruct GHI = DHI + DNI * cos(zenith), cos clamped at 0.

    Accepts scalars or arrays; raises on negative irradiance inputs.
    """
    dni = np.asarray(dni, dtype=np.float64)
    dhi = np.asarray(dhi, dtype=np.float64)
    if np.any(dni < 0) or np.any(dhi < 0):
        raise ValueError("negative irradiance input")
    cos_tz = np.maximum(0.0, np.cos(np.radians(np.asarray(zenith_deg, dtype=np.float64))))
    out = dhi + dni * cos_tz
    return float(out) if out.ndim == 0 else out


def transpose_monofacial(ghi, elevation_deg, tilt_deg, floor_deg: float = ELEVATION_FLOOR_DEG):
    """Global tilted irradiance GHI * sin(elev + tilt) / sin(elev).

    Returns 0 at or below the elevation floor; the result is clamped
    non-negative.  Identity: tilt 0 returns GHI unchanged.
    """
    ghi = np.asarray(ghi, dtype=np.float64)
    if np.any(ghi < 0):
        raise ValueError("negative GHI input")
    alpha = np.asarray(elevation_deg, dtype=np.float64)
    up = np.sin(np.radians(alpha + tilt_deg))
    down = np.sin(np.radians(alpha))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(alpha > floor_deg, up / np.where(alpha > floor_deg, down, 1.0), 0.0)
    out = np.maximum(0.0, ghi * ratio)
    return float(out) if out.ndim == 0 else out


def _face_components(dni, dhi, ghi, cos_aoi, tilt_deg, p, face):
    """Shared beam/diffuse/reflected arithmetic for one module face.

    Strictly linear in the inputs (no elevation gating), so component
    means scale exactly with input means: dark hours contribute zero
    because their irradiance is zero, not because of a mask. The beam
    term therefore trusts DNI to vanish when the sun is down.
    """
    beta = np.radians(tilt_deg)
    sky_vf = (1.0 + np.cos(beta)) / 2.0
    gnd_vf = (1.0 - np.cos(beta)) / 2.0
    if face == "front":
        diffuse = dhi * sky_vf
        reflected = p.albedo * ghi * gnd_vf
    else:
        diffuse = dhi * gnd_vf
        reflected = p.rear_loss * p.albedo * ghi * sky_vf
    return dni * cos_aoi, diffuse, reflected


def bifacial_face(
    dni,
    dhi,
    ghi,
    pos: SolarPosition,
    site: SiteSpec,
    p: BifacialParams,
    face: str,
) -> IrradianceBreakdown:
    """Per-face irradiance breakdown for a single timestep.

    `ghi` is the measured (or reconstructed) global horizontal value
    feeding the ground-reflected term.
    """
    cos_aoi = incidence_cosines(pos.zenith, pos.azimuth, site, face)
    beam, diffuse, reflected = _face_components(
        np.float64(dni), np.float64(dhi), np.float64(ghi), cos_aoi, site.tilt_deg, p, face
    )
    return IrradianceBreakdown(float(beam), float(diffuse), float(reflected))


def bifacial_front(dni, dhi, ghi, pos, site, p):
    return bifacial_face(dni, dhi, ghi, pos, site, p, "front")


def bifacial_rear(dni, dhi, ghi, pos, site, p):
    return bifacial_face(dni, dhi, ghi, pos, site, p, "rear")


def bifacial_effective(front_total, rear_total, p: BifacialParams):
    """Power-effective plane irradiance: front + bifaciality * rear."""
    out = np.asarray(front_total, dtype=np.float64) + p.bifaciality * np.asarray(
        rear_total, dtype=np.float64
    )
    return float(out) if out.ndim == 0 else out


def bifacial_series(
    dni: np.ndarray,
    dhi: np.ndarray,
    ghi: np.ndarray,
    zenith_deg: np.ndarray,
    azimuth_deg: np.ndarray,
    site: SiteSpec,
    p: BifacialParams,
) -> dict[str, np.ndarray]:
    """Vectorized per-face components over a whole series.

    Returns arrays keyed front_beam/front_diffuse/front_reflected/front,
    the rear equivalents, and the bifaciality-weighted total.
    """
    out: dict[str, np.ndarray] = {}
    for face in ("front", "rear"):
        cos_aoi = incidence_cosines(zenith_deg, azimuth_deg, site, face)
        beam, diffuse, reflected = _face_components(
            dni, dhi, ghi, cos_aoi, site.tilt_deg, p, face
        )
        out[f"{face}_beam"] = beam
        out[f"{face}_diffuse"] = diffuse
        out[f"{face}_reflected"] = reflected
        out[face] = beam + diffuse + reflected
    out["effective"] = bifacial_effective(out["front"], out["rear"], p)
    return out
