"""Annualized system cost and levelized cost of served energy."""

from __future__ import annotations

from dataclasses import dataclass

from .dispatch import AnnualEnergies
from .errors import ConfigError, MetricUndefinedError

KWH_PER_GWH = 1.0e6


@dataclass(frozen=True)
class ComponentCost:
    """Cost line for one component type, in dollars per unit."""

    capital: float = 0.0
    om_annual: float = 0.0
    lifetime_yr: float = 25.0
    replacement: float = 0.0

    def __post_init__(self):
        if self.lifetime_yr <= 0:
            raise ConfigError("component lifetime must be positive")
        if self.capital < 0 or self.om_annual < 0 or self.replacement < 0:
            raise ConfigError("component costs must be >= 0")


@dataclass(frozen=True)
class CostModel:
    """Component cost table plus financing terms and grid tariffs."""

    pv_module: ComponentCost
    hydro_turbine: ComponentCost
    pump: ComponentCost
    inverter: ComponentCost
    balance_of_system: ComponentCost
    discount_rate: float = 0.05
    project_life_yr: int = 25
    price_buy_per_kwh: float = 0.10
    price_sell_per_kwh: float = 0.04

    def __post_init__(self):
        if not 0.0 <= self.discount_rate < 1.0:
            raise ConfigError("discount_rate must be in [0, 1)")
        if self.project_life_yr < 1:
            raise ConfigError("project_life_yr must be >= 1")

    def scaled(self, factor: float) -> "CostModel":
        """Every dollar entry (components and tariffs) multiplied by factor."""

        def scale(c: ComponentCost) -> ComponentCost:
            return ComponentCost(
                c.capital * factor, c.om_annual * factor, c.lifetime_yr, c.replacement * factor
            )

        return CostModel(
            pv_module=scale(self.pv_module),
            hydro_turbine=scale(self.hydro_turbine),
            pump=scale(self.pump),
            inverter=scale(self.inverter),
            balance_of_system=scale(self.balance_of_system),
            discount_rate=self.discount_rate,
            project_life_yr=self.project_life_yr,
            price_buy_per_kwh=self.price_buy_per_kwh * factor,
            price_sell_per_kwh=self.price_sell_per_kwh * factor,
        )


@dataclass(frozen=True)
class CostSummary:
    acs_per_yr: float
    e_served_kwh: float
    lcoe_per_kwh: float


def capital_recovery_factor(i: float, n: float) -> float:
    """CRF = i(1+i)^n / ((1+i)^n - 1); the i -> 0 limit is 1/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if i < 0:
        raise ValueError("discount rate must be >= 0")
    if i == 0.0:
        return 1.0 / n
    growth = (1.0 + i) ** n
    return i * growth / (growth - 1.0)


def annualized_replacement(c: ComponentCost, i: float, project_life_yr: float) -> float:
    """Present-value replacements (at lifetime multiples) spread by the CRF."""
    if c.replacement <= 0 or c.lifetime_yr >= project_life_yr:
        return 0.0
    pv = 0.0
    t = c.lifetime_yr
    while t < project_life_yr:
        pv += c.replacement / (1.0 + i) ** t
        t += c.lifetime_yr
    return pv * capital_recovery_factor(i, project_life_yr)


def annualized_component_cost(c: ComponentCost, i: float, project_life_yr: float) -> float:
    """$/yr per unit: annualized capital + O&M + annualized replacements."""
    crf = capital_recovery_factor(i, project_life_yr)
    return c.capital * crf + c.om_annual + annualized_replacement(c, i, project_life_yr)


def annualized_system_cost(n_pv: int, n_ht: int, costs: CostModel, ledger: AnnualEnergies) -> float:
    """Total $/yr for a sizing, net of export revenue, floored at zero.

    Component counts: one pump, one inverter, one balance-of-system
    entry per module, and the decision counts for modules and turbines.
    """
    i = costs.discount_rate
    life = costs.project_life_yr
    total = (
        n_pv * annualized_component_cost(costs.pv_module, i, life)
        + n_ht * annualized_component_cost(costs.hydro_turbine, i, life)
        + annualized_component_cost(costs.pump, i, life)
        + annualized_component_cost(costs.inverter, i, life)
        + n_pv * annualized_component_cost(costs.balance_of_system, i, life)
    )
    revenue = ledger.e_gsold * KWH_PER_GWH * costs.price_sell_per_kwh
    return max(0.0, total - revenue)


def levelized_cost(n_pv: int, n_ht: int, ledger: AnnualEnergies, costs: CostModel) -> CostSummary:
    """LCOE over energy actually served (annual load minus unserved)."""
    e_served = (ledger.e_load - ledger.e_deficit) * KWH_PER_GWH
    if e_served <= 0:
        raise MetricUndefinedError("LCOE undefined: no energy served")
    acs = annualized_system_cost(n_pv, n_ht, costs, ledger)
    return CostSummary(acs_per_yr=acs, e_served_kwh=e_served, lcoe_per_kwh=acs / e_served)
