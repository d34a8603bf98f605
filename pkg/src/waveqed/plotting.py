"""Rendering of preset figures to PNG files.

Plots are diagnostic companions to the CSV datasets, not publication
output: one axes per figure, default colors, labels from the run
variants.
"""

from __future__ import annotations

from typing import List, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .config import ScenarioConfig
from .observables import linear_entropy, populations, total_population
from .presets import FigurePreset
from .solver import Trajectory

RunList = List[Tuple[str, ScenarioConfig, Trajectory]]


def _probe_label(cfg: ScenarioConfig) -> str:
    return "b" if cfg.initial == "a" else "a"


def _render_pair(ax, runs: RunList) -> None:
    for variant, cfg, traj in runs:
        probe = _probe_label(cfg)
        series = populations(traj)[probe]
        ax.plot(traj.times, series.values,
                label=f"{series.name}, start {cfg.initial}")
    ax.set_ylabel("population")


def _render_populations(ax, runs: RunList) -> None:
    variant, cfg, traj = runs[0]
    pops = populations(traj)
    for lab in traj.system.labels:
        ax.plot(traj.times, pops[lab].values, label=f"P_{lab}")
    ax.plot(traj.times, total_population(traj).values,
            color="0.4", linestyle="--", label="P_tot")
    ax.set_ylabel("population")


def _render_delta(ax, runs: RunList) -> None:
    # runs come in (start a, start b) pairs per swept value
    by_key = {}
    for variant, cfg, traj in runs:
        key = variant.rsplit("_init_", 1)[0]
        by_key.setdefault(key, {})[cfg.initial] = traj
    for key, pair in by_key.items():
        traj_a, traj_b = pair["a"], pair["b"]
        delta = np.abs(populations(traj_a)["b"].values
                       - populations(traj_b)["a"].values)
        ax.semilogy(traj_a.times, np.maximum(delta, 1e-18), label=key)
    ax.set_ylabel("|P_b(from a) - P_a(from b)|")


def _render_entropy(ax, runs: RunList) -> None:
    for variant, cfg, traj in runs:
        ax.plot(traj.times, linear_entropy(traj).values,
                label=f"S, start {cfg.initial}")
        ax.plot(traj.times, total_population(traj).values,
                linestyle="--", label=f"P_tot, start {cfg.initial}")
    ax.set_ylabel("entropy / population")


_RENDERERS = {
    "pair": _render_pair,
    "populations": _render_populations,
    "delta": _render_delta,
    "entropy": _render_entropy,
}


def render_preset(preset: FigurePreset, runs: RunList, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    _RENDERERS[preset.kind](ax, runs)
    ax.set_xlabel("t (units of 1/gamma)")
    ax.set_title(preset.name)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
