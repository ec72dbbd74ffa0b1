"""Pumped-storage plant: pump power to flow, flow to turbine power, and
reservoir volume stepping with hard capacity bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

RHO_WATER = 1000.0  # kg/m3
GRAVITY = 9.81  # m/s2


@dataclass(frozen=True)
class PshSpec:
    """Upper-reservoir plant parameters (constant head)."""

    head_m: float = 110.0
    v_max_m3: float = 6.0e6
    v_min_m3: float = 0.0
    v_init_m3: float = 3.0e6
    eta_pump: float = 0.9
    eta_turbine: float = 0.9
    pump_power_max_mw: float = 2.0
    turbine_unit_rating_mw: float = 0.5
    n_ht: int = 5

    def __post_init__(self):
        if self.head_m <= 0:
            raise ConfigError("head_m must be positive")
        if not (self.v_min_m3 <= self.v_init_m3 <= self.v_max_m3):
            raise ConfigError("require v_min <= v_init <= v_max")
        for name in ("eta_pump", "eta_turbine"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ConfigError(f"{name} must be in (0, 1]")
        if self.n_ht < 0:
            raise ConfigError("n_ht must be >= 0")

    @property
    def turbine_cap_mw(self) -> float:
        return self.n_ht * self.turbine_unit_rating_mw

    def pump_flow_per_mw(self) -> float:
        """m3/s of pumped flow per MW of electrical pump input."""
        return self.eta_pump * 1e6 / (RHO_WATER * GRAVITY * self.head_m)

    def turbine_mw_per_flow(self) -> float:
        """MW of electrical output per m3/s of turbined flow."""
        return self.eta_turbine * RHO_WATER * GRAVITY * self.head_m / 1e6


@dataclass(frozen=True)
class ReservoirState:
    volume_m3: float


def pump_flow(p_pump_mw: float, spec: PshSpec) -> float:
    """Pumped flow in m3/s for a given electrical input, linear in power."""
    if p_pump_mw < 0 or p_pump_mw > spec.pump_power_max_mw + 1e-12:
        raise ValueError(
            f"pump power {p_pump_mw} MW outside [0, {spec.pump_power_max_mw}]"
        )
    return p_pump_mw * spec.pump_flow_per_mw()


def turbine_power(q_m3s: float, spec: PshSpec) -> float:
    """Electrical MW generated from a turbined flow, capped at the plant rating."""
    if q_m3s < 0:
        raise ValueError("flow must be >= 0")
    return min(q_m3s * spec.turbine_mw_per_flow(), spec.turbine_cap_mw)


def step_reservoir(
    state: ReservoirState, q_in_m3s: float, q_out_m3s: float, dt_s: float, spec: PshSpec
) -> ReservoirState:
    """Advance the reservoir volume one step by mass balance.

    The dispatcher must pre-limit flows so the bounds are never crossed;
    simultaneous pumping and generation is a logic error.
    """
    if q_in_m3s < 0 or q_out_m3s < 0:
        raise ValueError("flows must be >= 0")
    if q_in_m3s > 0 and q_out_m3s > 0:
        raise RuntimeError("pump and turbine requested in the same step")
    volume = state.volume_m3 + (q_in_m3s - q_out_m3s) * dt_s
    if volume > spec.v_max_m3 + 1e-6 or volume < spec.v_min_m3 - 1e-6:
        raise RuntimeError(
            f"dispatch requested a flow crossing reservoir bounds "
            f"(volume {volume} m3 outside [{spec.v_min_m3}, {spec.v_max_m3}])"
        )
    return ReservoirState(min(max(volume, spec.v_min_m3), spec.v_max_m3))
