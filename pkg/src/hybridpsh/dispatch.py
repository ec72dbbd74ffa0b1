"""Hourly energy-management loop and the annual reliability/storage metrics.

Priority order per hour: PV (+ wind) serves the load; surplus pumps
water, then is sold up to the export cap, then curtailed; deficits are
met by turbines, then grid purchases up to the import cap, and the rest
is recorded as unserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import dispatch_core
from .errors import MetricUndefinedError
from .psh import PshSpec

HOURS_PER_YEAR = 8760
MWH_PER_GWH = 1000.0


@dataclass(frozen=True)
class GridSpec:
    """Grid interconnection caps (MW) and tariff prices ($/kWh)."""

    p_purchase_max_mw: float = 0.5
    p_sale_max_mw: float = 2.5
    price_buy_per_kwh: float = 0.10
    price_sell_per_kwh: float = 0.04

    def __post_init__(self):
        if self.p_purchase_max_mw < 0 or self.p_sale_max_mw < 0:
            raise ValueError("grid caps must be >= 0")
        if self.price_buy_per_kwh < 0 or self.price_sell_per_kwh < 0:
            raise ValueError("grid prices must be >= 0")


@dataclass
class DispatchSeries:
    """Per-hour power flows (MW) and end-of-hour reservoir volume (m3)."""

    p_inv: np.ndarray
    p_wt: np.ndarray
    p_pump: np.ndarray
    p_hydro: np.ndarray
    p_gp: np.ndarray
    p_gsold: np.ndarray
    p_deficit: np.ndarray
    p_curtailed: np.ndarray
    volume: np.ndarray
    q_pump: np.ndarray = field(repr=False, default=None)  # m3/s


@dataclass(frozen=True)
class AnnualEnergies:
    """Annual ledger (GWh except pumped water, which is m3)."""

    e_inv: float
    e_hydro: float
    e_pump: float
    e_gpurch: float
    e_load: float
    e_gsold: float
    e_deficit: float
    e_curtailed: float
    pumped_water_m3: float


def simulate_year(
    p_inv_mw: np.ndarray,
    p_load_mw: np.ndarray,
    psh: PshSpec,
    grid: GridSpec,
    p_wt_mw: np.ndarray | None = None,
) -> tuple[DispatchSeries, AnnualEnergies]:
    """Run the dispatch loop over aligned hourly series.

    `p_inv_mw` is the inverted array output; `p_wt_mw` is an optional
    wind series (zero when absent - the studied system has no wind
    plant, the input slot exists for the balance identity).  Series may
    be any equal length; a full year is 8,760 hours.
    """
    p_inv = np.ascontiguousarray(p_inv_mw, dtype=np.float64)
    p_load = np.ascontiguousarray(p_load_mw, dtype=np.float64)
    if p_wt_mw is None:
        p_wt = np.zeros_like(p_inv)
    else:
        p_wt = np.ascontiguousarray(p_wt_mw, dtype=np.float64)
    if not (p_inv.shape == p_load.shape == p_wt.shape) or p_inv.ndim != 1:
        raise ValueError(
            f"misaligned series lengths: inv {p_inv.shape}, load {p_load.shape}, "
            f"wind {p_wt.shape}"
        )

    p_avail = p_inv + p_wt
    p_pump, p_hydro, p_gp, p_gsold, p_deficit, p_curt, volume = dispatch_core(
        p_avail,
        p_load,
        psh.pump_power_max_mw,
        psh.turbine_cap_mw,
        grid.p_purchase_max_mw,
        grid.p_sale_max_mw,
        psh.v_init_m3,
        psh.v_min_m3,
        psh.v_max_m3,
        psh.pump_flow_per_mw(),
        psh.turbine_mw_per_flow(),
    )
    q_pump = p_pump * psh.pump_flow_per_mw()

    steps = DispatchSeries(
        p_inv=p_inv,
        p_wt=p_wt,
        p_pump=p_pump,
        p_hydro=p_hydro,
        p_gp=p_gp,
        p_gsold=p_gsold,
        p_deficit=p_deficit,
        p_curtailed=p_curt,
        volume=volume,
        q_pump=q_pump,
    )
    ledger = AnnualEnergies(
        e_inv=float(np.sum(p_inv)) / MWH_PER_GWH,
        e_hydro=float(np.sum(p_hydro)) / MWH_PER_GWH,
        e_pump=float(np.sum(p_pump)) / MWH_PER_GWH,
        e_gpurch=float(np.sum(p_gp)) / MWH_PER_GWH,
        e_load=float(np.sum(p_load)) / MWH_PER_GWH,
        e_gsold=float(np.sum(p_gsold)) / MWH_PER_GWH,
        e_deficit=float(np.sum(p_deficit)) / MWH_PER_GWH,
        e_curtailed=float(np.sum(p_curt)) / MWH_PER_GWH,
        pumped_water_m3=float(np.sum(q_pump)) * 3600.0,
    )
    return steps, ledger


def rsf(ledger: AnnualEnergies) -> float:
    """Storage usage factor: hydro energy over total delivered system energy.

    The denominator counts inverted PV, hydro discharge and grid
    purchases - every delivery path of the system.
    """
    e_system = ledger.e_inv + ledger.e_hydro + ledger.e_gpurch
    if e_system <= 0:
        raise MetricUndefinedError("storage factor undefined: system delivered no energy")
    return ledger.e_hydro / e_system


def index_of_reliability(steps: DispatchSeries, p_load_mw: np.ndarray) -> float:
    """1 minus the normalized unserved load.

    Shortfall per hour is load minus (PV + wind + hydro + purchases),
    floored at zero so export hours do not credit reliability.
    """
    p_load = np.asarray(p_load_mw, dtype=np.float64)
    if p_load.shape != steps.p_inv.shape:
        raise ValueError("load series misaligned with dispatch series")
    total_load = float(np.sum(p_load))
    if total_load <= 0:
        raise MetricUndefinedError("reliability undefined: total load is zero")
    served = steps.p_inv + steps.p_wt + steps.p_hydro + steps.p_gp
    shortfall = np.maximum(p_load - served, 0.0)
    return 1.0 - float(np.sum(shortfall)) / total_load
