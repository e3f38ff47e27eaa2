"""Parameter sweeps, figure presets and CSV output."""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import svg
from .correlations import full_report
from .dynamics import (
    MINUS,
    PLUS,
    CouplingConstants,
    PropagatorPair,
    ScenarioConfig,
    block_amplitudes,
    constant_scenario,
    evolve_xstate,
    sech_scenario,
)
from .states import BellMixture, BellMixtureSpec, bell_mixture

DEFAULT_P_VALUES = (0.0, 0.1, 0.3, 0.5, 0.8, 1.0)
DEFAULT_TAU_MAX = 10.0
DEFAULT_POINTS = 2000


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    mixture: str
    p: float
    tau_plus: float
    concurrence: float
    discord: float
    mutual_information: float
    classical_correlations: float
    purity: float


CSV_HEADER = tuple(f.name for f in fields(SweepRow))


def tau_grid(tau_max: float = DEFAULT_TAU_MAX, n_points: int = DEFAULT_POINTS) -> np.ndarray:
    return np.linspace(0.0, tau_max, n_points)


def _rows_for_p(label, mixture, p, taus, pairs) -> list[SweepRow]:
    x0 = bell_mixture(BellMixtureSpec(mixture, p))
    rows = []
    for tau, pair in zip(taus, pairs):
        x = evolve_xstate(x0, pair)
        rep = full_report(x)
        rows.append(SweepRow(
            label, mixture.value, p, float(tau), rep.concurrence, rep.discord,
            rep.mutual_information, rep.classical_correlations, x.purity(),
        ))
    return rows


def sweep(scenario: ScenarioConfig, mixture: BellMixture, p_values, taus,
          workers: int = 1) -> list[SweepRow]:
    """Correlation time series of ``mixture`` for each ``p``; rows sorted by ``(p, tau_plus)``.

    With ``workers > 1`` the p-values are farmed out to a process pool; the
    result is assembled in the same order either way.
    """
    p_values = sorted(float(p) for p in p_values)
    if not p_values:
        raise ValueError("empty p-list")
    taus = np.asarray(taus, dtype=float)
    times = scenario.time_from_tau(taus)
    a_p, b_p = block_amplitudes(scenario, PLUS, times)
    a_m, b_m = block_amplitudes(scenario, MINUS, times)
    pairs = [
        PropagatorPair(complex(a_p[k]), complex(b_p[k]), complex(a_m[k]), complex(b_m[k]))
        for k in range(taus.size)
    ]
    label = scenario.label()
    jobs = [(label, mixture, p, taus, pairs) for p in p_values]
    if workers > 1 and len(p_values) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_rows_for_p, *zip(*jobs)))
    else:
        chunks = [_rows_for_p(*job) for job in jobs]
    return [row for chunk in chunks for row in chunk]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def write_csv(rows, stream) -> None:
    """CSV with a fixed header, 12 significant digits and ``\\n`` line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_HEADER])


def zero_intervals(values, min_points: int = 5) -> list[tuple[int, int]]:
    """Maximal runs of exact zeros (``>= min_points`` long) followed by a revival.

    Returns inclusive ``(start, end)`` index pairs.
    """
    values = np.asarray(values)
    runs = []
    start = None
    for i, v in enumerate(values):
        if v == 0.0:
            if start is None:
                start = i
        elif start is not None:
            if i - start >= min_points:
                runs.append((start, i - 1))
            start = None
    return runs


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    scenario: ScenarioConfig
    mixtures: tuple[BellMixture, ...]
    p_values: tuple[float, ...] = DEFAULT_P_VALUES
    tau_max: float = DEFAULT_TAU_MAX
    n_points: int = DEFAULT_POINTS
    heatmap: bool = False
    note: str = ""


_MIXT1 = (BellMixture.PHI_PLUS_PSI_PLUS,)
_MIXT1_AND_3 = (BellMixture.PHI_PLUS_PSI_PLUS, BellMixture.PHI_MINUS_PSI_MINUS)
_LATTICE_P = tuple(float(p) for p in np.linspace(0.0, 1.0, 101))

PRESETS = {
    p.name: p
    for p in (
        ExperimentPreset("fig1", constant_scenario(0.0), _MIXT1, note="no fields"),
        ExperimentPreset("fig2", constant_scenario(0.1), _MIXT1, note="static fields, W+ = 0.1c, W- = 2W+"),
        ExperimentPreset("fig3", constant_scenario(3.0), _MIXT1, note="static fields, W+ = 3c, W- = 2W+"),
        ExperimentPreset("fig4", constant_scenario(10.0), _MIXT1, note="static fields, W+ = 10c, W- = 2W+"),
        ExperimentPreset("fig5", sech_scenario("sech", "sech"), _MIXT1_AND_3, note="sech pulses in both blocks"),
        ExperimentPreset("fig6", sech_scenario("sech", "bright"), _MIXT1_AND_3,
                         note="sech pulse in the plus block, growing pulse in the minus block"),
        ExperimentPreset("fig7-mixt6-case1", sech_scenario("sech", "sech"),
                         (BellMixture.PSI_PLUS_PSI_MINUS,), _LATTICE_P, n_points=201, heatmap=True),
        ExperimentPreset("fig7-mixt6-case2", sech_scenario("sech", "bright"),
                         (BellMixture.PSI_PLUS_PSI_MINUS,), _LATTICE_P, n_points=201, heatmap=True),
        # both pulse models share the plus-block drive, which is all mixt5 sees
        ExperimentPreset("fig7-mixt5", sech_scenario("sech", "sech"),
                         (BellMixture.PHI_PLUS_PHI_MINUS,), _LATTICE_P, n_points=201, heatmap=True),
        ExperimentPreset("fig1-swapped", constant_scenario(0.0, CouplingConstants.swapped()), _MIXT1,
                         note="no fields, gxx = -gyy = 2gxy = -2gyx"),
    )
}


@dataclass
class PresetResult:
    name: str
    files: list[str] = field(default_factory=list)
    sudden_death: dict = field(default_factory=dict)


def _series(rows, p):
    sel = [r for r in rows if r.p == p]
    return np.array([r.tau_plus for r in sel]), sel


def run_preset(name: str, outdir, make_svg: bool = True, workers: int = 1) -> PresetResult:
    """Write one CSV per mixture (plus SVGs and a JSON summary) into ``outdir``."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    preset = PRESETS[name]
    outdir = Path(outdir)
    os.makedirs(outdir, exist_ok=True)
    taus = tau_grid(preset.tau_max, preset.n_points)
    result = PresetResult(name)
    for mixture in preset.mixtures:
        rows = sweep(preset.scenario, mixture, preset.p_values, taus, workers)
        stem = f"{name}_{mixture.name.lower()}"
        csv_path = outdir / f"{stem}.csv"
        with open(csv_path, "w", newline="") as fh:
            write_csv(rows, fh)
        result.files.append(str(csv_path))

        deaths = {}
        for p in preset.p_values:
            tau, sel = _series(rows, p)
            runs = zero_intervals([r.concurrence for r in sel])
            if runs:
                deaths[_fmt(p)] = [[float(tau[a]), float(tau[b])] for a, b in runs]
        result.sudden_death[mixture.value] = deaths

        if make_svg:
            svg_path = outdir / f"{stem}.svg"
            if preset.heatmap:
                svg.write_heatmaps(svg_path, rows, ("discord", "concurrence"), title=f"{name} {mixture.value}")
            else:
                svg.write_line_panels(svg_path, rows, preset.p_values, title=f"{name} {mixture.value}")
            result.files.append(str(svg_path))

    summary = {
        "preset": name,
        "scenario": preset.scenario.label(),
        "couplings": asdict(preset.scenario.couplings),
        "note": preset.note,
        "tau_max": preset.tau_max,
        "n_points": preset.n_points,
        "sudden_death_intervals": result.sudden_death,
    }
    summary_path = outdir / f"{name}_summary.json"
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    result.files.append(str(summary_path))
    return result
