"""Hourly simulator and sizing optimizer for grid-connected hybrid
solar + pumped-storage systems, comparing monofacial and bifacial PV."""

from ._kernels import USING_NUMBA
from ._version import __version__
from .config import RunConfig, config_hash, default_config, load_config
from .dispatch import GridSpec, index_of_reliability, rsf, simulate_year
from .economics import CostModel, capital_recovery_factor, levelized_cost
from .errors import (
    ConfigError,
    DataLoadError,
    EvaluationError,
    GridTooLargeError,
    HybridPshError,
    MetricUndefinedError,
)
from .irradiance import BifacialParams, bifacial_series, ghi_from_components, transpose_monofacial
from .moead import MoeadConfig, SearchSpace, VariableBounds, brute_force_pareto, moead_run
from .pareto import Candidate, hypervolume_3d, nondominated_front, select_knee
from .psh import PshSpec
from .pv import ArraySpec, ModuleSpec
from .solar import SiteSpec, sun_position, sun_positions_year
from .synthetic import synthetic_load, synthetic_weather

__all__ = [
    "ArraySpec",
    "BifacialParams",
    "Candidate",
    "ConfigError",
    "CostModel",
    "DataLoadError",
    "EvaluationError",
    "GridSpec",
    "GridTooLargeError",
    "HybridPshError",
    "MetricUndefinedError",
    "ModuleSpec",
    "MoeadConfig",
    "PshSpec",
    "RunConfig",
    "SearchSpace",
    "SiteSpec",
    "USING_NUMBA",
    "VariableBounds",
    "__version__",
    "bifacial_series",
    "brute_force_pareto",
    "capital_recovery_factor",
    "config_hash",
    "default_config",
    "ghi_from_components",
    "hypervolume_3d",
    "index_of_reliability",
    "levelized_cost",
    "load_config",
    "moead_run",
    "nondominated_front",
    "rsf",
    "select_knee",
    "simulate_year",
    "sun_position",
    "sun_positions_year",
    "synthetic_load",
    "synthetic_weather",
    "transpose_monofacial",
]
