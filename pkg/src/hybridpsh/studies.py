"""Study pipelines: wire weather + load through the models to results.

Four studies mirror the CLI: simulate one sizing, optimize a technology,
compare the two technologies at their selected optima, and re-optimize
under a perturbed input (sensitivity). All of them share one prepared
irradiance/temperature pass per technology, so optimizer candidates only
pay for the n_pv scaling and the dispatch loop.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .config import RunConfig, config_hash
from .dataio import ResultBundle, WeatherSeries, hourly_table
from .dispatch import GridSpec, simulate_year, rsf, index_of_reliability
from .economics import levelized_cost
from .errors import ConfigError
from .irradiance import bifacial_series, ghi_from_components, transpose_monofacial
from .moead import MoeadConfig, MoeadResult, SearchSpace, brute_force_pareto, moead_run
from .pareto import Candidate, hypervolume_3d, select_knee
from .pv import inverted_power_series, module_dc_series
from .solar import sun_positions_year


@dataclass
class TechSeries:
    """Per-technology hourly series shared by every candidate sizing."""

    technology: str
    g_eff: np.ndarray
    module_dc_w: np.ndarray
    plot_columns: dict[str, np.ndarray]


def prepare_inputs(cfg: RunConfig, weather: WeatherSeries) -> dict[str, TechSeries]:
    """One irradiance -> module-DC pass for each technology."""
    angles = sun_positions_year(cfg.site)
    n = weather.dni.shape[0]
    if n != angles["zenith"].shape[0]:
        raise ConfigError(f"weather series has {n} hours; a full year is required")
    ghi = weather.ghi
    if ghi is None:
        ghi = ghi_from_components(weather.dni, weather.dhi, angles["zenith"])

    poa_mono = transpose_monofacial(ghi, angles["elevation"], cfg.site.tilt_deg)
    parts = bifacial_series(
        weather.dni,
        weather.dhi,
        ghi,
        angles["zenith"],
        angles["azimuth"],
        cfg.site,
        cfg.bifacial,
    )

    mpv = TechSeries(
        technology="mpv",
        g_eff=poa_mono,
        module_dc_w=module_dc_series(poa_mono, weather.t_amb, cfg.module_for("mpv")),
        plot_columns={"ghi": ghi, "poa": poa_mono},
    )
    bpv = TechSeries(
        technology="bpv",
        g_eff=parts["effective"],
        module_dc_w=module_dc_series(parts["effective"], weather.t_amb, cfg.module_for("bpv")),
        plot_columns={
            "ghi": ghi,
            "front": parts["front"],
            "rear": parts["rear"],
            "effective": parts["effective"],
        },
    )
    return {"mpv": mpv, "bpv": bpv}


def _simulate_candidate(
    cfg: RunConfig, tech: TechSeries, n_pv: int, n_ht: int, p_load: np.ndarray
):
    """Full simulation + metrics for one sizing; the evaluator's core."""
    array = cfg.array.build(n_pv, cfg.module_for(tech.technology))
    p_inv = inverted_power_series(array, tech.module_dc_w)
    psh = dataclasses.replace(cfg.psh, n_ht=n_ht)
    steps, ledger = simulate_year(p_inv, p_load, psh, cfg.grid)
    ir = index_of_reliability(steps, p_load)
    storage_share = rsf(ledger)
    costs = cfg.costs.model_for(tech.technology, cfg.grid)
    summary = levelized_cost(n_pv, n_ht, ledger, costs)
    return steps, ledger, ir, storage_share, summary


def build_evaluator(cfg: RunConfig, tech: TechSeries, p_load: np.ndarray):
    """Candidate -> (1 - IR, LCOE, 1 - RSF), all minimized."""

    def evaluate(cand: Candidate) -> tuple[float, float, float]:
        _, _, ir, share, summary = _simulate_candidate(
            cfg, tech, cand.n_pv, cand.n_ht, p_load
        )
        return (1.0 - ir, summary.lcoe_per_kwh, 1.0 - share)

    return evaluate


def _bundle(
    cfg: RunConfig,
    tech: TechSeries,
    n_pv: int,
    n_ht: int,
    p_load: np.ndarray,
    seed: int | None,
    input_sha256: dict[str, str],
) -> ResultBundle:
    steps, ledger, ir, share, summary = _simulate_candidate(cfg, tech, n_pv, n_ht, p_load)
    return ResultBundle(
        technology=tech.technology,
        n_pv=n_pv,
        n_ht=n_ht,
        seed=seed,
        config_sha256=config_hash(cfg),
        tool_version=__version__,
        energies=ledger,
        ir=ir,
        lcoe=summary.lcoe_per_kwh,
        rsf=share,
        acs_per_yr=summary.acs_per_yr,
        hourly=hourly_table(steps, p_load),
        irradiance=dict(tech.plot_columns),
        input_sha256=dict(input_sha256),
    )


def run_simulate(
    cfg: RunConfig,
    technology: str,
    n_pv: int,
    n_ht: int,
    weather: WeatherSeries,
    p_load: np.ndarray,
    input_sha256: dict[str, str] | None = None,
) -> ResultBundle:
    """Fixed-sizing full-year study."""
    tech = prepare_inputs(cfg, weather)[technology]
    return _bundle(cfg, tech, n_pv, n_ht, p_load, None, input_sha256 or {})


def pareto_rows(result: MoeadResult) -> list[tuple]:
    """Archive flattened to the documented pareto.csv columns."""
    rows = []
    for cand, f in zip(result.candidates, result.objectives):
        rows.append(
            (
                cand.n_pv,
                cand.n_ht,
                1.0 - f[0],  # ir
                f[1],  # lcoe
                1.0 - f[2],  # rsf
                f[0],
                f[1],
                f[2],
            )
        )
    return rows


def run_optimize(
    cfg: RunConfig,
    technology: str,
    seed: int,
    weather: WeatherSeries,
    p_load: np.ndarray,
    input_sha256: dict[str, str] | None = None,
    oracle_check: bool = False,
    tech_series: TechSeries | None = None,
) -> tuple[ResultBundle, MoeadResult]:
    """Search the sizing space; bundle describes the knee-point candidate."""
    tech = tech_series or prepare_inputs(cfg, weather)[technology]
    evaluator = build_evaluator(cfg, tech, p_load)
    result = moead_run(evaluator, cfg.search, seed, cfg.moead)
    knee = result.candidates[select_knee(result.objectives, result.candidates)]

    bundle = _bundle(cfg, tech, knee.n_pv, knee.n_ht, p_load, seed, input_sha256 or {})
    bundle.pareto_rows = pareto_rows(result)
    bundle.extra["n_evaluations"] = result.n_evaluations
    bundle.extra["archive_size"] = len(result.candidates)

    if oracle_check:
        oracle = brute_force_pareto(evaluator, cfg.search)
        ref = np.max(oracle.objectives, axis=0) * 1.1 + 1e-9
        hv_oracle = hypervolume_3d(oracle.objectives, ref)
        hv_archive = hypervolume_3d(result.objectives, ref)
        bundle.extra["oracle"] = {
            "front_size": len(oracle.candidates),
            "hypervolume_ratio": hv_archive / hv_oracle if hv_oracle > 0 else 1.0,
            "archive_is_subset": _is_subset(result, oracle),
        }
    return bundle, result


def _is_subset(archive: MoeadResult, oracle: MoeadResult) -> bool:
    oracle_set = set(oracle.candidates)
    return all(c in oracle_set for c in archive.candidates)


def run_compare(
    cfg: RunConfig,
    seed: int,
    weather: WeatherSeries,
    p_load: np.ndarray,
    input_sha256: dict[str, str] | None = None,
) -> dict:
    """Optimize both technologies with the same seed and inputs, then
    report their knee-point runs side by side."""
    series = prepare_inputs(cfg, weather)
    bundles = {}
    for technology in ("mpv", "bpv"):
        bundles[technology], _ = run_optimize(
            cfg,
            technology,
            seed,
            weather,
            p_load,
            input_sha256,
            tech_series=series[technology],
        )
    m, b = bundles["mpv"].energies, bundles["bpv"].energies
    water_ratio = (
        b.pumped_water_m3 / m.pumped_water_m3 if m.pumped_water_m3 > 0 else float("nan")
    )
    return {
        "bundles": bundles,
        "water_ratio_bpv_over_mpv": water_ratio,
        "identical_inputs": True,  # same parsed arrays drive both runs
        "input_sha256": dict(input_sha256 or {}),
    }


def perturbed_weather(weather: WeatherSeries, parameter: str, delta: float) -> WeatherSeries:
    """Scale the named input group by (1 + delta).

    `ghi` scales all three irradiance components together; `t_amb`
    multiplies the Celsius temperatures directly (the study protocol's
    convention, odd as it is for sub-zero hours).
    """
    if parameter not in ("ghi", "t_amb"):
        raise ConfigError(f"unknown sensitivity parameter {parameter!r}")
    if not -0.5 <= delta <= 0.5:
        raise ConfigError("delta must be within [-0.5, 0.5]")
    k = 1.0 + delta
    if parameter == "ghi":
        return WeatherSeries(
            dni=weather.dni * k,
            dhi=weather.dhi * k,
            t_amb=weather.t_amb,
            ghi=None if weather.ghi is None else weather.ghi * k,
        )
    return WeatherSeries(
        dni=weather.dni, dhi=weather.dhi, t_amb=weather.t_amb * k, ghi=weather.ghi
    )


def run_sensitivity(
    cfg: RunConfig,
    parameter: str,
    delta: float,
    seed: int,
    weather: WeatherSeries,
    p_load: np.ndarray,
    input_sha256: dict[str, str] | None = None,
) -> dict:
    """Baseline vs perturbed optimization for both technologies.

    Returns rows (case, technology, n_pv, n_ht, ir, lcoe, rsf) in a
    fixed order: baseline then perturbed, mpv then bpv within each.
    """
    cases = [("baseline", weather), (f"{parameter}{delta:+.1%}", perturbed_weather(weather, parameter, delta))]
    rows = []
    bundles = {}
    for label, w in cases:
        series = prepare_inputs(cfg, w)
        for technology in ("mpv", "bpv"):
            bundle, _ = run_optimize(
                cfg,
                technology,
                seed,
                w,
                p_load,
                input_sha256,
                tech_series=series[technology],
            )
            rows.append(
                (label, technology, bundle.n_pv, bundle.n_ht, bundle.ir, bundle.lcoe, bundle.rsf)
            )
            bundles[(label, technology)] = bundle
    return {"rows": rows, "bundles": bundles, "parameter": parameter, "delta": delta}
