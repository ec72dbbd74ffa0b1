"""Command-line front end for the four studies.

    hybridpsh simulate    --config CFG --tech bpv --n-pv 3784 --n-ht 5 --out-dir OUT
    hybridpsh optimize    --config CFG --tech mpv --seed 7 --out-dir OUT [--oracle-check]
    hybridpsh compare     --config CFG --seed 7 --out-dir OUT
    hybridpsh sensitivity --config CFG --param ghi --delta 0.1 --seed 7 --out-dir OUT

Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.
Reruns with the same config file and seed write bit-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from .config import RunConfig, config_hash, load_config
from .dataio import (
    LEDGER_ROWS,
    ResultBundle,
    file_sha256,
    load_load_csv,
    load_weather_csv,
    series_stats,
    write_results,
)
from .errors import ConfigError, DataLoadError, HybridPshError
from .studies import run_compare, run_optimize, run_sensitivity, run_simulate


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on bad arguments (validation, not runtime)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_inputs(args):
    cfg = load_config(args.config)
    if cfg.weather_csv is None or cfg.load_csv is None:
        raise ConfigError(
            "config must point at input files: set data.weather_csv and data.load_csv"
        )
    weather = load_weather_csv(cfg.weather_csv)
    p_load = load_load_csv(cfg.load_csv)
    hashes = {
        "weather_csv": file_sha256(cfg.weather_csv),
        "load_csv": file_sha256(cfg.load_csv),
    }
    return cfg, weather, p_load, hashes


def _print_input_summary(weather, p_load) -> None:
    for name, series in (
        ("ghi", weather.ghi),
        ("dni", weather.dni),
        ("dhi", weather.dhi),
        ("t_amb", weather.t_amb),
        ("load", p_load),
    ):
        if series is None:
            print(f"  {name:6s} (absent; reconstructed from dni/dhi)")
            continue
        s = series_stats(series)
        print(f"  {name:6s} min {s['min']:.4f}  mean {s['mean']:.4f}  max {s['max']:.4f}")


def _print_bundle(bundle: ResultBundle) -> None:
    print(
        f"{bundle.technology}: n_pv={bundle.n_pv} n_ht={bundle.n_ht}  "
        f"IR={bundle.ir:.6f}  LCOE=${bundle.lcoe:.6f}/kWh  RSF={bundle.rsf:.6f}"
    )


def cmd_simulate(args) -> int:
    cfg, weather, p_load, hashes = _load_inputs(args)
    _print_input_summary(weather, p_load)
    bundle = run_simulate(cfg, args.tech, args.n_pv, args.n_ht, weather, p_load, hashes)
    bundle.seed = args.seed
    written = write_results(bundle, args.out_dir)
    _print_bundle(bundle)
    print(f"wrote {len(written)} files to {args.out_dir}")
    return 0


def cmd_optimize(args) -> int:
    cfg, weather, p_load, hashes = _load_inputs(args)
    bundle, _ = run_optimize(
        cfg, args.tech, args.seed, weather, p_load, hashes, oracle_check=args.oracle_check
    )
    written = write_results(bundle, args.out_dir)
    print(f"archive size {bundle.extra['archive_size']} "
          f"({bundle.extra['n_evaluations']} evaluations)")
    _print_bundle(bundle)
    if args.oracle_check:
        oracle = bundle.extra["oracle"]
        print(
            f"oracle: front size {oracle['front_size']}, "
            f"hypervolume ratio {oracle['hypervolume_ratio']:.6f}, "
            f"subset={oracle['archive_is_subset']}"
        )
    print(f"wrote {len(written)} files to {args.out_dir}")
    return 0


def cmd_compare(args) -> int:
    cfg, weather, p_load, hashes = _load_inputs(args)
    report = run_compare(cfg, args.seed, weather, p_load, hashes)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    m, b = report["bundles"]["mpv"].energies, report["bundles"]["bpv"].energies
    for name, unit in LEDGER_ROWS:
        mv, bv = getattr(m, name), getattr(b, name)
        ratio = bv / mv if mv != 0 else float("nan")
        rows.append([name, unit, repr(float(mv)), repr(float(bv)), repr(float(ratio))])
    rows.append(
        ["pumped_water_ratio", "-", "", "", repr(float(report["water_ratio_bpv_over_mpv"]))]
    )
    compare_csv = out / "compare.csv"
    compare_csv.write_text(
        "\n".join(
            [",".join(["quantity", "unit", "mpv", "bpv", "bpv_over_mpv"])]
            + [",".join(r) for r in rows]
        )
        + "\n"
    )

    summary = {
        "seed": args.seed,
        "config_sha256": config_hash(cfg),
        "tool_version": __version__,
        "input_sha256": report["input_sha256"],
        "identical_inputs": report["identical_inputs"],
        "water_ratio_bpv_over_mpv": report["water_ratio_bpv_over_mpv"],
        "selected": {
            t: {
                "n_pv": bu.n_pv,
                "n_ht": bu.n_ht,
                "ir": bu.ir,
                "lcoe_per_kwh": bu.lcoe,
                "rsf": bu.rsf,
            }
            for t, bu in report["bundles"].items()
        },
    }
    (out / "compare_summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    for technology, bundle in report["bundles"].items():
        write_results(bundle, out / technology)
        _print_bundle(bundle)
    print(f"pumped water bpv/mpv = {report['water_ratio_bpv_over_mpv']:.4f}")
    return 0


def cmd_sensitivity(args) -> int:
    cfg, weather, p_load, hashes = _load_inputs(args)
    report = run_sensitivity(cfg, args.param, args.delta, args.seed, weather, p_load, hashes)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    header = ["case", "technology", "n_pv", "n_ht", "ir", "lcoe", "rsf"]
    lines = [",".join(header)]
    for case, technology, n_pv, n_ht, ir, lcoe, share in report["rows"]:
        lines.append(
            ",".join(
                [case, technology, str(n_pv), str(n_ht), repr(float(ir)), repr(float(lcoe)),
                 repr(float(share))]
            )
        )
        print(f"{case:14s} {technology}: n_pv={n_pv} n_ht={n_ht} lcoe=${lcoe:.6f}/kWh")
    (out / "sensitivity.csv").write_text("\n".join(lines) + "\n")

    summary = {
        "parameter": report["parameter"],
        "delta": report["delta"],
        "seed": args.seed,
        "config_sha256": config_hash(cfg),
        "tool_version": __version__,
        "input_sha256": hashes,
    }
    (out / "sensitivity_summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hybridpsh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, seed_required):
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--out-dir", required=True, help="output directory")
        p.add_argument(
            "--seed",
            type=int,
            required=seed_required,
            help="RNG seed" + ("" if seed_required else " (recorded only)"),
        )

    p = sub.add_parser("simulate", help="fixed-sizing full-year run")
    common(p, seed_required=False)
    p.add_argument("--tech", required=True, choices=("mpv", "bpv"))
    p.add_argument("--n-pv", type=int, required=True, help="PV module count")
    p.add_argument("--n-ht", type=int, required=True, help="hydro turbine unit count")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("optimize", help="multi-objective sizing search")
    common(p, seed_required=True)
    p.add_argument("--tech", required=True, choices=("mpv", "bpv"))
    p.add_argument(
        "--oracle-check",
        action="store_true",
        help="also enumerate the whole grid and report the hypervolume ratio",
    )
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("compare", help="optimize both technologies side by side")
    common(p, seed_required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sensitivity", help="re-optimize under a perturbed input")
    common(p, seed_required=True)
    p.add_argument("--param", required=True, choices=("ghi", "t_amb"))
    p.add_argument("--delta", type=float, required=True, help="fraction, e.g. 0.1 for +10%%")
    p.set_defaults(func=cmd_sensitivity)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DataLoadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HybridPshError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
