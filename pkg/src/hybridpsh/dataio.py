"""CSV ingest and result writing.

Inputs are hourly CSVs: a weather file (ghi, dni, dhi, t_amb; hour or
timestamp optional) and a load file (single power column in MW), both
exactly 8,760 rows. Outputs are plain CSV/JSON with floats serialized
via repr, so a write/read round trip is bit-lossless.

Output directory layout (fixed column orders documented per writer):
    ledger.csv        annual energy ledger, one quantity per row
    hourly.csv        dispatch time series
    summary.json      metrics + provenance (seed, config hash, versions)
    pareto.csv        nondominated set (optimize runs only)
    plot_irradiance.csv / plot_inverted_power.csv / plot_pumping.csv
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import numpy as np

from .dispatch import HOURS_PER_YEAR, AnnualEnergies, DispatchSeries
from .errors import DataLoadError

WEATHER_COLUMNS = ("ghi", "dni", "dhi", "t_amb")

LEDGER_ROWS = (
    ("e_inv", "GWh"),
    ("e_hydro", "GWh"),
    ("e_pump", "GWh"),
    ("e_gpurch", "GWh"),
    ("e_load", "GWh"),
    ("e_gsold", "GWh"),
    ("e_deficit", "GWh"),
    ("e_curtailed", "GWh"),
    ("pumped_water_m3", "m3"),
)

HOURLY_COLUMNS = (
    "p_inv",
    "p_wt",
    "p_pump",
    "p_hydro",
    "p_gp",
    "p_gsold",
    "p_deficit",
    "p_curtailed",
    "volume_m3",
    "q_pump_m3s",
    "p_load",
)

PARETO_COLUMNS = ("n_pv", "n_ht", "ir", "lcoe", "rsf", "f1", "f2", "f3")


@dataclass
class WeatherSeries:
    """Validated hourly weather arrays; ghi is None when the column is
    absent and must be reconstructed from DNI/DHI and sun position."""

    dni: np.ndarray
    dhi: np.ndarray
    t_amb: np.ndarray
    ghi: np.ndarray | None = None


@dataclass
class ResultBundle:
    """Everything one study run produced, ready for the writers."""

    technology: str
    n_pv: int
    n_ht: int
    seed: int | None
    config_sha256: str
    tool_version: str
    energies: AnnualEnergies
    ir: float
    lcoe: float
    rsf: float
    acs_per_yr: float
    hourly: dict[str, np.ndarray] = field(repr=False, default_factory=dict)
    irradiance: dict[str, np.ndarray] = field(repr=False, default_factory=dict)
    pareto_rows: list[tuple] | None = None
    input_sha256: dict[str, str] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def _fmt(x) -> str:
    """Lossless decimal form: repr of a Python float round-trips exactly."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(x))


def _parse_float(cell: str, line_no: int, column: str, path: Path) -> float:
    try:
        value = float(cell)
    except (TypeError, ValueError):
        raise DataLoadError(
            f"{path}: line {line_no}: bad value {cell!r} in column '{column}'"
        ) from None
    if math.isnan(value) or math.isinf(value):
        raise DataLoadError(
            f"{path}: line {line_no}: non-finite value {cell!r} in column '{column}'"
        )
    return value


def _read_rows(path: Path) -> tuple[list[str], list[list[str]]]:
    if not path.is_file():
        raise DataLoadError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataLoadError(f"{path}: file is empty") from None
        rows = [row for row in reader if row and any(c.strip() for c in row)]
    return [h.strip().lower() for h in header], rows


def _check_clock(
    header: list[str], rows: list[list[str]], path: Path
) -> None:
    """Validate the optional hour/timestamp column: sorted, hourly, no Feb 29."""
    if "hour" in header:
        col = header.index("hour")
        for i, row in enumerate(rows):
            line_no = i + 2
            value = _parse_float(row[col], line_no, "hour", path)
            if value != i:
                raise DataLoadError(
                    f"{path}: line {line_no}: hour column must count 0..8759 "
                    f"without gaps; expected {i}, found {row[col]}"
                )
    if "timestamp" in header:
        col = header.index("timestamp")
        prev = None
        for i, row in enumerate(rows):
            line_no = i + 2
            try:
                stamp = datetime.fromisoformat(row[col].strip())
            except ValueError:
                raise DataLoadError(
                    f"{path}: line {line_no}: unparseable timestamp {row[col]!r}"
                ) from None
            if stamp.month == 2 and stamp.day == 29:
                raise DataLoadError(
                    f"{path}: line {line_no}: Feb 29 found; the engine runs on "
                    f"exactly {HOURS_PER_YEAR} hours - pre-trim leap days from the input"
                )
            if prev is not None and (stamp - prev).total_seconds() != 3600.0:
                raise DataLoadError(
                    f"{path}: line {line_no}: timestamps must step hourly without gaps"
                )
            prev = stamp


def _require_rows(rows: list, path: Path) -> None:
    if len(rows) != HOURS_PER_YEAR:
        raise DataLoadError(
            f"{path}: expected exactly {HOURS_PER_YEAR} data rows, found {len(rows)}"
        )


def load_weather_csv(path: str | Path) -> WeatherSeries:
    """Parse and validate a weather CSV (see module docstring for schema)."""
    path = Path(path)
    header, rows = _read_rows(path)
    for required in ("dni", "dhi", "t_amb"):
        if required not in header:
            raise DataLoadError(f"{path}: missing required column '{required}'")
    _require_rows(rows, path)
    _check_clock(header, rows, path)

    out: dict[str, np.ndarray] = {}
    for name in WEATHER_COLUMNS:
        if name not in header:
            continue
        col = header.index(name)
        values = np.empty(HOURS_PER_YEAR)
        for i, row in enumerate(rows):
            line_no = i + 2
            if col >= len(row):
                raise DataLoadError(f"{path}: line {line_no}: missing column '{name}'")
            v = _parse_float(row[col], line_no, name, path)
            if name != "t_amb" and v < 0:
                raise DataLoadError(
                    f"{path}: line {line_no}: negative irradiance {v} in column '{name}'"
                )
            values[i] = v
        out[name] = values
    return WeatherSeries(dni=out["dni"], dhi=out["dhi"], t_amb=out["t_amb"], ghi=out.get("ghi"))


def load_load_csv(path: str | Path) -> np.ndarray:
    """Parse and validate a load CSV; returns the MW series."""
    path = Path(path)
    header, rows = _read_rows(path)
    candidates = [c for c in ("p_load", "load", "load_mw", "p_load_mw") if c in header]
    if not candidates:
        raise DataLoadError(
            f"{path}: no load column found (expected one of p_load, load, load_mw, p_load_mw)"
        )
    _require_rows(rows, path)
    _check_clock(header, rows, path)
    col = header.index(candidates[0])
    values = np.empty(HOURS_PER_YEAR)
    for i, row in enumerate(rows):
        line_no = i + 2
        v = _parse_float(row[col], line_no, candidates[0], path)
        if v < 0:
            raise DataLoadError(
                f"{path}: line {line_no}: negative load {v} in column '{candidates[0]}'"
            )
        values[i] = v
    if not np.any(values > 0):
        warnings.warn(f"{path}: load series is identically zero", stacklevel=2)
    return values


def series_stats(x: np.ndarray) -> dict[str, float]:
    """min/mean/max triple used by the CLI's input summary."""
    arr = np.asarray(x, dtype=float)
    return {"min": float(arr.min()), "mean": float(arr.mean()), "max": float(arr.max())}


def file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_csv(path: Path, header: list[str], rows) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise DataLoadError(f"could not write {path}: {exc}") from exc


def hourly_table(steps: DispatchSeries, p_load: np.ndarray) -> dict[str, np.ndarray]:
    """DispatchSeries flattened to the documented hourly.csv columns."""
    return {
        "p_inv": steps.p_inv,
        "p_wt": steps.p_wt,
        "p_pump": steps.p_pump,
        "p_hydro": steps.p_hydro,
        "p_gp": steps.p_gp,
        "p_gsold": steps.p_gsold,
        "p_deficit": steps.p_deficit,
        "p_curtailed": steps.p_curtailed,
        "volume_m3": steps.volume,
        "q_pump_m3s": steps.q_pump,
        "p_load": np.asarray(p_load, dtype=float),
    }


def write_results(bundle: ResultBundle, out_dir: str | Path) -> list[Path]:
    """Write the full output set; returns the paths written.

    Contents are a pure function of the bundle - no wall-clock
    timestamps - so identical runs produce bit-identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    ledger = out / "ledger.csv"
    e = bundle.energies
    _write_csv(
        ledger,
        ["quantity", "unit", "value"],
        [[name, unit, _fmt(getattr(e, name))] for name, unit in LEDGER_ROWS],
    )
    written.append(ledger)

    if bundle.hourly:
        hourly = out / "hourly.csv"
        names = [c for c in HOURLY_COLUMNS if c in bundle.hourly]
        columns = [bundle.hourly[c] for c in names]
        n = len(columns[0])
        _write_csv(
            hourly,
            ["hour", *names],
            ([str(i), *(_fmt(colvals[i]) for colvals in columns)] for i in range(n)),
        )
        written.append(hourly)

    summary = out / "summary.json"
    payload = {
        "technology": bundle.technology,
        "n_pv": bundle.n_pv,
        "n_ht": bundle.n_ht,
        "seed": bundle.seed,
        "config_sha256": bundle.config_sha256,
        "tool_version": bundle.tool_version,
        "input_sha256": bundle.input_sha256,
        "metrics": {
            "ir": bundle.ir,
            "lcoe_per_kwh": bundle.lcoe,
            "rsf": bundle.rsf,
            "acs_per_yr": bundle.acs_per_yr,
        },
        "energies_gwh": {name: getattr(e, name) for name, _ in LEDGER_ROWS},
        **bundle.extra,
    }
    try:
        summary.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise DataLoadError(f"could not write {summary}: {exc}") from exc
    written.append(summary)

    if bundle.pareto_rows is not None:
        pareto = out / "pareto.csv"
        _write_csv(
            pareto,
            list(PARETO_COLUMNS),
            ([_fmt(v) for v in row] for row in bundle.pareto_rows),
        )
        written.append(pareto)

    if bundle.irradiance:
        plot_irr = out / "plot_irradiance.csv"
        names = list(bundle.irradiance)
        cols = [bundle.irradiance[c] for c in names]
        _write_csv(
            plot_irr,
            ["hour", *names],
            ([str(i), *(_fmt(c[i]) for c in cols)] for i in range(len(cols[0]))),
        )
        written.append(plot_irr)

    if bundle.hourly:
        plot_power = out / "plot_inverted_power.csv"
        _write_csv(
            plot_power,
            ["hour", "p_inv_mw"],
            ([str(i), _fmt(v)] for i, v in enumerate(bundle.hourly["p_inv"])),
        )
        written.append(plot_power)

        plot_pump = out / "plot_pumping.csv"
        _write_csv(
            plot_pump,
            ["hour", "p_pump_mw", "q_pump_m3s", "volume_m3"],
            (
                [
                    str(i),
                    _fmt(bundle.hourly["p_pump"][i]),
                    _fmt(bundle.hourly["q_pump_m3s"][i]),
                    _fmt(bundle.hourly["volume_m3"][i]),
                ]
                for i in range(len(bundle.hourly["p_pump"]))
            ),
        )
        written.append(plot_pump)

    return written
