"""Run configuration: one YAML file describing site, plant, costs and search.

Every study is reproducible from (config file, seed); the sha256 of the
canonical dump is stamped into result summaries so outputs can be traced
back to the exact configuration that produced them.
"""

from __future__ import annotations

import dataclasses
import hashlib
from dataclasses import dataclass
from pathlib import Path

import yaml

from .dispatch import GridSpec
from .economics import ComponentCost, CostModel
from .errors import ConfigError
from .irradiance import BifacialParams
from .moead import MoeadConfig, SearchSpace, VariableBounds
from .psh import PshSpec
from .pv import ArraySpec, ModuleSpec
from .solar import SiteSpec

TECHNOLOGIES = ("mpv", "bpv")


@dataclass(frozen=True)
class ArraySettings:
    """Array electrical settings shared by every candidate sizing."""

    derate: float = 0.95
    inverter_efficiency: float = 0.97
    inverter_ac_limit_mw: float = 2.5

    def build(self, n_pv: int, module: ModuleSpec) -> ArraySpec:
        return ArraySpec(
            n_pv=n_pv,
            module=module,
            derate=self.derate,
            inverter_efficiency=self.inverter_efficiency,
            inverter_ac_limit_mw=self.inverter_ac_limit_mw,
        )


@dataclass(frozen=True)
class CostTable:
    """Component costs (per-technology PV line) plus financing terms."""

    pv_module_mpv: ComponentCost
    pv_module_bpv: ComponentCost
    hydro_turbine: ComponentCost
    pump: ComponentCost
    inverter: ComponentCost
    balance_of_system: ComponentCost
    discount_rate: float = 0.05
    project_life_yr: int = 25

    def model_for(self, technology: str, grid: GridSpec) -> CostModel:
        if technology not in TECHNOLOGIES:
            raise ConfigError(f"unknown technology {technology!r}; expected one of {TECHNOLOGIES}")
        module_cost = self.pv_module_mpv if technology == "mpv" else self.pv_module_bpv
        return CostModel(
            pv_module=module_cost,
            hydro_turbine=self.hydro_turbine,
            pump=self.pump,
            inverter=self.inverter,
            balance_of_system=self.balance_of_system,
            discount_rate=self.discount_rate,
            project_life_yr=self.project_life_yr,
            price_buy_per_kwh=grid.price_buy_per_kwh,
            price_sell_per_kwh=grid.price_sell_per_kwh,
        )


@dataclass(frozen=True)
class RunConfig:
    site: SiteSpec
    bifacial: BifacialParams
    modules: dict[str, ModuleSpec]
    array: ArraySettings
    psh: PshSpec
    grid: GridSpec
    costs: CostTable
    search: SearchSpace
    moead: MoeadConfig
    weather_csv: str | None = None
    load_csv: str | None = None

    def __post_init__(self):
        if set(self.modules) != set(TECHNOLOGIES):
            raise ConfigError(f"modules must define exactly {TECHNOLOGIES}")

    def module_for(self, technology: str) -> ModuleSpec:
        try:
            return self.modules[technology]
        except KeyError:
            raise ConfigError(
                f"unknown technology {technology!r}; expected one of {TECHNOLOGIES}"
            ) from None


def default_config() -> RunConfig:
    """Calibrated defaults: Ludington-area site, two module catalogues,
    a 2.5 MW plant against a 22 kV sub-feeder load."""
    return RunConfig(
        site=SiteSpec(
            latitude=43.893648,
            longitude=-86.4447,
            timezone_offset=-5.0,
            tilt_deg=36.5,
            surface_azimuth_deg=0.0,
        ),
        bifacial=BifacialParams(albedo=0.5, rear_loss=0.789, bifaciality=0.7),
        modules={
            "mpv": ModuleSpec(p_rated_w=420.0, efficiency_stc=0.188, technology="monofacial"),
            "bpv": ModuleSpec(p_rated_w=462.0, efficiency_stc=0.2068, technology="bifacial"),
        },
        array=ArraySettings(),
        psh=PshSpec(),
        grid=GridSpec(),
        costs=CostTable(
            # Capital at 0.36 $/W (420 W) and 0.40 $/W (462 W).
            pv_module_mpv=ComponentCost(capital=151.2, om_annual=2.0, lifetime_yr=25.0),
            pv_module_bpv=ComponentCost(capital=184.8, om_annual=2.0, lifetime_yr=25.0),
            hydro_turbine=ComponentCost(capital=400_000.0, om_annual=4_000.0, lifetime_yr=25.0),
            pump=ComponentCost(capital=300_000.0, om_annual=3_000.0, lifetime_yr=25.0),
            # 0.06 $/W on the 2.5 MW AC limit, replaced mid-life.
            inverter=ComponentCost(
                capital=150_000.0, om_annual=1_500.0, lifetime_yr=12.5, replacement=150_000.0
            ),
            balance_of_system=ComponentCost(),
        ),
        search=SearchSpace(
            n_pv=VariableBounds(lo=0, hi=6000, step=1),
            n_ht=VariableBounds(lo=0, hi=6, step=1),
        ),
        moead=MoeadConfig(),
    )


def _check_keys(data: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown} in config section '{where}'")


def _section(cls, data: dict | None, where: str):
    """Build a flat dataclass section, catching bad keys and values."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config section '{where}' must be a mapping")
    _check_keys(data, {f.name for f in dataclasses.fields(cls)}, where)
    try:
        return cls(**data)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value in config section '{where}': {exc}") from exc


def from_dict(data: dict) -> RunConfig:
    """Build a RunConfig from parsed YAML; omitted sections keep defaults."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    base = default_config()
    _check_keys(
        data,
        {
            "site",
            "bifacial",
            "modules",
            "array",
            "psh",
            "grid",
            "costs",
            "search",
            "moead",
            "data",
        },
        "root",
    )

    def section(cls, key, default):
        if key not in data:
            return default
        return _section(cls, data[key], key)

    modules = dict(base.modules)
    if "modules" in data:
        if not isinstance(data["modules"], dict):
            raise ConfigError("config section 'modules' must be a mapping")
        _check_keys(data["modules"], set(TECHNOLOGIES), "modules")
        for tech, spec in data["modules"].items():
            modules[tech] = _section(ModuleSpec, spec, f"modules.{tech}")

    costs = base.costs
    if "costs" in data:
        cdata = dict(data["costs"])
        _check_keys(cdata, {f.name for f in dataclasses.fields(CostTable)}, "costs")
        built = {}
        for f in dataclasses.fields(CostTable):
            if f.name in ("discount_rate", "project_life_yr"):
                if f.name in cdata:
                    built[f.name] = cdata[f.name]
                else:
                    built[f.name] = getattr(base.costs, f.name)
            elif f.name in cdata:
                built[f.name] = _section(ComponentCost, cdata[f.name], f"costs.{f.name}")
            else:
                built[f.name] = getattr(base.costs, f.name)
        costs = _section_guard(CostTable, built, "costs")

    search = base.search
    if "search" in data:
        sdata = dict(data["search"])
        _check_keys(sdata, {"n_pv", "n_ht"}, "search")
        search = SearchSpace(
            n_pv=_section(VariableBounds, sdata.get("n_pv"), "search.n_pv")
            if "n_pv" in sdata
            else base.search.n_pv,
            n_ht=_section(VariableBounds, sdata.get("n_ht"), "search.n_ht")
            if "n_ht" in sdata
            else base.search.n_ht,
        )

    weather_csv = base.weather_csv
    load_csv = base.load_csv
    if "data" in data:
        ddata = data["data"] or {}
        _check_keys(ddata, {"weather_csv", "load_csv"}, "data")
        weather_csv = ddata.get("weather_csv", weather_csv)
        load_csv = ddata.get("load_csv", load_csv)

    return RunConfig(
        site=section(SiteSpec, "site", base.site),
        bifacial=section(BifacialParams, "bifacial", base.bifacial),
        modules=modules,
        array=section(ArraySettings, "array", base.array),
        psh=section(PshSpec, "psh", base.psh),
        grid=section(GridSpec, "grid", base.grid),
        costs=costs,
        search=search,
        moead=section(MoeadConfig, "moead", base.moead),
        weather_csv=weather_csv,
        load_csv=load_csv,
    )


def _section_guard(cls, kwargs: dict, where: str):
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value in config section '{where}': {exc}") from exc


def to_dict(cfg: RunConfig) -> dict:
    """Plain-dict form of the config, suitable for YAML dump."""
    out = {
        "site": dataclasses.asdict(cfg.site),
        "bifacial": dataclasses.asdict(cfg.bifacial),
        "modules": {tech: dataclasses.asdict(m) for tech, m in sorted(cfg.modules.items())},
        "array": dataclasses.asdict(cfg.array),
        "psh": dataclasses.asdict(cfg.psh),
        "grid": dataclasses.asdict(cfg.grid),
        "costs": dataclasses.asdict(cfg.costs),
        "search": dataclasses.asdict(cfg.search),
        "moead": dataclasses.asdict(cfg.moead),
    }
    if cfg.weather_csv is not None or cfg.load_csv is not None:
        out["data"] = {"weather_csv": cfg.weather_csv, "load_csv": cfg.load_csv}
    return out


def dump_config(cfg: RunConfig) -> str:
    """Canonical YAML text (sorted keys) for hashing and file output."""
    return yaml.safe_dump(to_dict(cfg), sort_keys=True, default_flow_style=False)


def config_hash(cfg: RunConfig) -> str:
    """sha256 hex digest of the canonical dump."""
    return hashlib.sha256(dump_config(cfg).encode("utf-8")).hexdigest()


def load_config(path: str | Path) -> RunConfig:
    """Parse a YAML config file; data paths resolve relative to the file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text()) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"could not parse {path}: {exc}") from exc
    cfg = from_dict(data)

    def resolve(p: str | None) -> str | None:
        if p is None:
            return None
        resolved = Path(p)
        if not resolved.is_absolute():
            resolved = path.parent / resolved
        if not resolved.is_file():
            raise ConfigError(f"data file referenced by {path} not found: {resolved}")
        return str(resolved)

    return dataclasses.replace(
        cfg, weather_csv=resolve(cfg.weather_csv), load_csv=resolve(cfg.load_csv)
    )


def save_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(dump_config(cfg))
