"""PV module and array electrical model (NOCT cell temperature, linear
power-temperature derating, inverter clip)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

STC_IRRADIANCE = 1000.0  # W/m2
STC_CELL_TEMP = 25.0  # degC
NOCT_IRRADIANCE = 800.0  # W/m2
NOCT_AMBIENT = 20.0  # degC


@dataclass(frozen=True)
class ModuleSpec:
    """One PV module: nameplate rating and thermal coefficients."""

    p_rated_w: float
    efficiency_stc: float
    technology: str  # "monofacial" | "bifacial"
    gamma_p_per_c: float = -0.0034
    noct_c: float = 42.0
    area_m2: float = field(default=0.0)

    def __post_init__(self):
        if self.p_rated_w <= 0:
            raise ConfigError("p_rated_w must be positive")
        if not 0.0 < self.efficiency_stc < 0.3:
            raise ConfigError("efficiency_stc must be in (0, 0.3)")
        if not -0.01 <= self.gamma_p_per_c <= 0.0:
            raise ConfigError("gamma_p_per_c must be in [-0.01, 0]")
        if self.technology not in ("monofacial", "bifacial"):
            raise ConfigError(f"unknown technology {self.technology!r}")
        if self.area_m2 <= 0:
            # Implied by nameplate and STC efficiency.
            object.__setattr__(
                self, "area_m2", self.p_rated_w / (STC_IRRADIANCE * self.efficiency_stc)
            )


@dataclass(frozen=True)
class ArraySpec:
    """A fielded array: module count, loss factors and the inverter cap."""

    n_pv: int
    module: ModuleSpec
    derate: float = 0.95
    inverter_efficiency: float = 0.97
    inverter_ac_limit_mw: float = 2.5

    def __post_init__(self):
        if self.n_pv < 0:
            raise ConfigError("n_pv must be >= 0")
        if not 0.0 < self.derate <= 1.0:
            raise ConfigError("derate must be in (0, 1]")
        if not 0.0 < self.inverter_efficiency <= 1.0:
            raise ConfigError("inverter_efficiency must be in (0, 1]")


def cell_temperature(g_eff, t_amb, module: ModuleSpec):
    """NOCT linear model: T_cell = T_amb + G * (NOCT - 20) / 800."""
    g = np.asarray(g_eff, dtype=np.float64)
    if np.any(g < 0):
        raise ValueError("negative plane irradiance")
    out = np.asarray(t_amb, dtype=np.float64) + g * (module.noct_c - NOCT_AMBIENT) / NOCT_IRRADIANCE
    return float(out) if out.ndim == 0 else out


def dc_module_power(g_eff, t_cell, module: ModuleSpec):
    """DC watts of one module: rated * (G/1000) * (1 + gamma*(T-25)), >= 0.

    At STC (G = 1000, T = 25) this returns exactly the nameplate rating.
    """
    g = np.asarray(g_eff, dtype=np.float64)
    if np.any(g < 0):
        raise ValueError("negative plane irradiance")
    t = np.asarray(t_cell, dtype=np.float64)
    p = module.p_rated_w * (g / STC_IRRADIANCE) * (
        1.0 + module.gamma_p_per_c * (t - STC_CELL_TEMP)
    )
    out = np.maximum(0.0, p)
    return float(out) if out.ndim == 0 else out


def module_dc_series(g_eff: np.ndarray, t_amb: np.ndarray, module: ModuleSpec) -> np.ndarray:
    """Per-module DC watts over a series (temperature model included)."""
    return dc_module_power(g_eff, cell_temperature(g_eff, t_amb, module), module)


def inverted_array_power(array: ArraySpec, g_eff, t_amb):
    """AC megawatts out of the inverter for the whole array.

    min(n_pv * module_dc * derate * inverter_eff, ac_limit); linear in
    n_pv below the clip and constant above it.
    """
    p_dc = dc_module_power(g_eff, cell_temperature(g_eff, t_amb, array.module), array.module)
    p_ac_mw = array.n_pv * np.asarray(p_dc) * array.derate * array.inverter_efficiency / 1e6
    out = np.minimum(p_ac_mw, array.inverter_ac_limit_mw)
    return float(out) if np.ndim(out) == 0 else out


def inverted_power_series(
    array: ArraySpec, module_dc_w: np.ndarray
) -> np.ndarray:
    """AC MW series from a precomputed per-module DC series.

    Splitting the per-module DC computation from the n_pv scaling lets
    the optimizer reuse one irradiance/temperature pass across every
    candidate sizing.
    """
    p_ac = array.n_pv * module_dc_w * array.derate * array.inverter_efficiency / 1e6
    return np.minimum(p_ac, array.inverter_ac_limit_mw)
