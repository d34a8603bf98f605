"""Executes configured runs and writes delimited datasets plus manifests.

CSV values are printed with 17 significant digits so doubles round-trip
exactly; manifests record every resolved parameter (including derived
phi, tau and the actual grid step) and a sha256 digest of the dataset.
Nothing time- or host-dependent goes into the outputs, so identical
configs produce byte-identical files.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import hashlib
import io
import json
import os
from typing import Dict, List, Optional, Tuple

import numpy as np

from .config import (ScenarioConfig, SweepConfig, build_params, build_system,
                     require_valid_scenario, require_valid_sweep)
from .errors import ConfigError, InconclusiveError
from .model import InitialState
from .observables import (circulation_direction, linear_entropy,
                          nonreciprocity_metric, populations, total_population)
from .presets import PRESET_NAMES, PRESETS, FigurePreset
from .solver import Trajectory, integrate

FLOAT_FMT = "%.17g"


# ----------------------------------------------------------------------
# dataset writing

def csv_header(labels: Tuple[str, ...]) -> str:
    cols = ["t_gamma"]
    cols += [f"re_c_{lab}" for lab in labels]
    cols += [f"im_c_{lab}" for lab in labels]
    cols += [f"P_{lab}" for lab in labels]
    cols += ["P_tot", "S"]
    return ",".join(cols)


def _scenario_table(traj: Trajectory, stride: int) -> np.ndarray:
    pops = populations(traj)
    labels = traj.system.labels
    columns = [traj.times]
    columns += [traj.amplitudes[:, j].real for j in range(len(labels))]
    columns += [traj.amplitudes[:, j].imag for j in range(len(labels))]
    columns += [pops[lab].values for lab in labels]
    columns.append(total_population(traj).values)
    columns.append(linear_entropy(traj).values)
    table = np.column_stack(columns)
    if stride > 1:
        table = table[::stride]
    return table


def write_scenario_csv(path: str, traj: Trajectory, stride: int = 1) -> Dict:
    """Write the fixed-schema dataset for one trajectory; returns digest info."""
    table = _scenario_table(traj, stride)
    buf = io.StringIO()
    np.savetxt(buf, table, fmt=FLOAT_FMT, delimiter=",",
               header=csv_header(traj.system.labels), comments="")
    payload = buf.getvalue().encode("ascii")
    with open(path, "wb") as fh:
        fh.write(payload)
    return {
        "path": os.path.basename(path),
        "sha256": hashlib.sha256(payload).hexdigest(),
        "rows": int(table.shape[0]),
    }


def validate_csv(path: str) -> None:
    """Post-write spot check: population bound and the entropy identity.

    Values are re-parsed from disk, so this also guards against
    formatting bugs, not just numerical ones.
    """
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.size == 0:
        raise ValueError(f"{path}: no data rows")
    p_tot = data[:, header.index("P_tot")]
    entropy = data[:, header.index("S")]
    if np.any(p_tot < -1e-12) or np.any(p_tot > 1 + 1e-9):
        raise ValueError(f"{path}: total population escapes [0, 1]")
    if np.max(np.abs(entropy - 2.0 * p_tot * (1.0 - p_tot))) > 1e-9:
        raise ValueError(f"{path}: entropy column violates S = 2 P (1 - P)")


def _manifest_path(csv_path: str) -> str:
    root = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    return root + ".manifest.json"


def write_manifest(path: str, manifest: Dict) -> None:
    payload = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(payload)


def _derived_block(cfg: ScenarioConfig, traj: Trajectory) -> Dict:
    params = build_params(cfg)
    return {
        "phi": params.phi,
        "tau": params.tau,
        "h": traj.h,
        "steps_per_delay": traj.steps_per_delay,
        "n_steps": traj.n_nodes - 1,
        "t_final": traj.t_final,
    }


# ----------------------------------------------------------------------
# run entry points

def _integrate_scenario(cfg: ScenarioConfig) -> Trajectory:
    system = build_system(cfg)
    init = InitialState(cfg.initial)
    return integrate(system, init, cfg.t_max_gamma,
                     steps_per_delay=cfg.steps_per_delay)


def run_scenario(cfg: ScenarioConfig) -> Dict:
    """Run one scenario; writes the CSV and its manifest, returns the manifest."""
    require_valid_scenario(cfg)
    traj = _integrate_scenario(cfg)
    output = write_scenario_csv(cfg.output_path, traj, cfg.output_stride)
    validate_csv(cfg.output_path)
    manifest = {
        "kind": "scenario",
        "config": _config_block(cfg),
        "derived": _derived_block(cfg, traj),
        "output": output,
    }
    write_manifest(_manifest_path(cfg.output_path), manifest)
    return manifest


def _config_block(cfg: ScenarioConfig) -> Dict:
    block = dataclasses.asdict(cfg)
    block["outputs"] = list(cfg.outputs)
    return block


def _sweep_point(cfg: SweepConfig, value) -> Dict:
    """One swept value: integrate, reduce to summary metrics."""
    point = dataclasses.replace(cfg.base)
    setattr(point, cfg.parameter, value)
    if cfg.parameter == "steps_per_delay":
        setattr(point, cfg.parameter, int(value))
    traj_a = _integrate_scenario(point)
    row: Dict = {cfg.parameter: value}
    if cfg.paired:
        mirrored = dataclasses.replace(point, initial="b")
        traj_b = _integrate_scenario(mirrored)
        row["nonreciprocity_metric"] = nonreciprocity_metric(traj_a, traj_b)
    row["p_tot_final"] = float(total_population(traj_a).values[-1])
    if point.system == "trimer":
        try:
            row["circulation"] = circulation_direction(traj_a)
        except InconclusiveError:
            row["circulation"] = "inconclusive"
    return row


def run_sweep(cfg: SweepConfig, max_workers: Optional[int] = None) -> Dict:
    """Run a sweep; one CSV row of summary metrics per swept value.

    Points are integrated concurrently (the solver core is pure and the
    compiled kernels release the interpreter lock); rows are collected
    and written by this single thread in sweep order, so the output is
    deterministic regardless of scheduling.
    """
    require_valid_sweep(cfg)
    workers = max_workers or min(8, len(cfg.values))
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _sweep_point(cfg, v), cfg.values))
    else:
        rows = [_sweep_point(cfg, v) for v in cfg.values]

    columns = [cfg.parameter]
    if cfg.paired:
        columns.append("nonreciprocity_metric")
    columns.append("p_tot_final")
    if cfg.base.system == "trimer":
        columns.append("circulation")
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            cell = row[col]
            cells.append(cell if isinstance(cell, str) else FLOAT_FMT % cell)
        lines.append(",".join(cells))
    payload = ("\n".join(lines) + "\n").encode("ascii")
    path = cfg.base.output_path
    with open(path, "wb") as fh:
        fh.write(payload)
    manifest = {
        "kind": "sweep",
        "parameter": cfg.parameter,
        "values": list(cfg.values),
        "paired": cfg.paired,
        "base": _config_block(cfg.base),
        "output": {
            "path": os.path.basename(path),
            "sha256": hashlib.sha256(payload).hexdigest(),
            "rows": len(rows),
        },
    }
    write_manifest(_manifest_path(path), manifest)
    return manifest


def run_figure_preset(name: str, out_dir: str = "figures", render: bool = True) -> Dict:
    """Run a bundled preset: per-panel CSV datasets, manifest, optional PNG."""
    if name not in PRESETS:
        raise ConfigError("preset", f"unknown preset {name!r}, choose from {PRESET_NAMES}")
    preset: FigurePreset = PRESETS[name]
    target = os.path.join(out_dir, name)
    os.makedirs(target, exist_ok=True)

    run_entries: List[Dict] = []
    trajectories: List[Tuple[str, ScenarioConfig, Trajectory]] = []
    for variant, base_cfg in preset.runs:
        cfg = dataclasses.replace(base_cfg,
                                  output_path=os.path.join(target, f"{variant}.csv"))
        traj = _integrate_scenario(cfg)
        output = write_scenario_csv(cfg.output_path, traj, cfg.output_stride)
        validate_csv(cfg.output_path)
        run_entries.append({
            "variant": variant,
            "config": _config_block(cfg),
            "derived": _derived_block(cfg, traj),
            "output": output,
        })
        trajectories.append((variant, cfg, traj))

    plot_name = None
    if render:
        from . import plotting
        plot_name = "figure.png"
        plotting.render_preset(preset, trajectories, os.path.join(target, plot_name))

    manifest = {
        "kind": "figure",
        "preset": name,
        "runs": run_entries,
        "plot": plot_name,
    }
    write_manifest(os.path.join(target, "manifest.json"), manifest)
    return manifest
