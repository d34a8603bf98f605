"""Declarative run configuration: scenario and sweep descriptions.

Configs are plain dataclasses that mirror the JSON format accepted by
the command line front end. Validation returns field-tagged problem
strings so callers can surface every issue at once.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import ConfigError
from .model import (DelayedLinearSystem, SystemParams, build_giant_dimer,
                    build_small_dimer, build_giant_trimer)
from .solver import DEFAULT_STEPS_PER_DELAY, MIN_STEPS_PER_DELAY

KNOWN_SYSTEMS = ("small-dimer", "giant-dimer", "trimer")

_BUILDERS = {
    "small-dimer": build_small_dimer,
    "giant-dimer": build_giant_dimer,
    "trimer": build_giant_trimer,
}

_SYSTEM_LABELS = {
    "small-dimer": ("a", "b"),
    "giant-dimer": ("a", "b"),
    "trimer": ("a", "b", "c"),
}

# Observable groups a scenario may request. The CSV schema itself is
# fixed (see runner); this list exists to reject typos early and to be
# recorded in the manifest.
KNOWN_OUTPUTS = ("amplitudes", "populations", "total_population", "linear_entropy")

# Parameters a sweep may vary.
SWEEPABLE = ("eta", "theta", "j_over_gamma", "kappa_over_gamma",
             "omega0_over_gamma", "t_max_gamma", "steps_per_delay")


@dataclass
class ScenarioConfig:
    """One simulation run: which system, its parameters, and the output."""

    system: str = "small-dimer"
    eta: float = 0.56
    theta: float = 0.0
    j_over_gamma: float = 0.5
    kappa_over_gamma: float = 8.7e-3
    omega0_over_gamma: float = 112.19
    initial: str = "a"
    t_max_gamma: float = 15.0
    steps_per_delay: int = DEFAULT_STEPS_PER_DELAY
    outputs: Tuple[str, ...] = KNOWN_OUTPUTS
    output_path: str = "run.csv"
    # Keep every output_stride-th grid node in the CSV (1 = all nodes).
    # Long runs at fine steps otherwise produce datasets in the 100 MB
    # range without adding plot-relevant resolution.
    output_stride: int = 1


@dataclass
class SweepConfig:
    """A family of scenario runs over one swept parameter."""

    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    parameter: str = "theta"
    values: List[float] = field(default_factory=list)
    # paired: also run the mirrored initial state (b for dimers, b for the
    # trimer probe pair) so nonreciprocity metrics can be reported.
    paired: bool = True


def _numeric(value) -> bool:
    return (isinstance(value, (int, float)) and not isinstance(value, bool)
            and np.isfinite(value))


def scenario_errors(cfg: ScenarioConfig) -> List[str]:
    problems: List[str] = []
    if cfg.system not in KNOWN_SYSTEMS:
        problems.append(f"system: unknown system {cfg.system!r}, choose from {KNOWN_SYSTEMS}")
    for name in ("eta", "theta", "j_over_gamma", "kappa_over_gamma",
                 "omega0_over_gamma", "t_max_gamma"):
        if not _numeric(getattr(cfg, name)):
            problems.append(f"{name}: must be a finite number, got {getattr(cfg, name)!r}")
    if _numeric(cfg.eta) and cfg.eta < 0:
        problems.append("eta: must be nonnegative")
    if _numeric(cfg.j_over_gamma) and cfg.j_over_gamma < 0:
        problems.append("j_over_gamma: must be nonnegative")
    if _numeric(cfg.kappa_over_gamma) and cfg.kappa_over_gamma < 0:
        problems.append("kappa_over_gamma: must be nonnegative")
    if _numeric(cfg.omega0_over_gamma) and cfg.omega0_over_gamma <= 0:
        problems.append("omega0_over_gamma: must be positive")
    if _numeric(cfg.t_max_gamma) and cfg.t_max_gamma < 0:
        problems.append("t_max_gamma: must be nonnegative")
    labels = _SYSTEM_LABELS.get(cfg.system)
    if labels and cfg.initial not in labels:
        problems.append(f"initial: {cfg.initial!r} is not an emitter of {cfg.system} {labels}")
    if not isinstance(cfg.steps_per_delay, int) or isinstance(cfg.steps_per_delay, bool):
        problems.append(f"steps_per_delay: must be an integer, got {cfg.steps_per_delay!r}")
    elif _numeric(cfg.eta) and cfg.eta > 0 and cfg.steps_per_delay < MIN_STEPS_PER_DELAY:
        problems.append(f"steps_per_delay: must be >= {MIN_STEPS_PER_DELAY} when eta > 0")
    for name in cfg.outputs:
        if name not in KNOWN_OUTPUTS:
            problems.append(f"outputs: unknown observable {name!r}, choose from {KNOWN_OUTPUTS}")
    if not isinstance(cfg.output_stride, int) or cfg.output_stride < 1:
        problems.append(f"output_stride: must be a positive integer, got {cfg.output_stride!r}")
    if not cfg.output_path or not isinstance(cfg.output_path, str):
        problems.append("output_path: must be a nonempty path")
    return problems


def sweep_errors(cfg: SweepConfig) -> List[str]:
    problems = scenario_errors(cfg.base)
    if cfg.parameter not in SWEEPABLE:
        problems.append(f"parameter: {cfg.parameter!r} is not sweepable, choose from {SWEEPABLE}")
    if not cfg.values:
        problems.append("values: must list at least one value")
    else:
        for k, value in enumerate(cfg.values):
            if not _numeric(value):
                problems.append(f"values[{k}]: must be a finite number, got {value!r}")
    return problems


def require_valid_scenario(cfg: ScenarioConfig) -> None:
    problems = scenario_errors(cfg)
    if problems:
        raise ConfigError("config", "; ".join(problems))


def require_valid_sweep(cfg: SweepConfig) -> None:
    problems = sweep_errors(cfg)
    if problems:
        raise ConfigError("config", "; ".join(problems))


def build_params(cfg: ScenarioConfig) -> SystemParams:
    return SystemParams(omega0_over_gamma=cfg.omega0_over_gamma,
                        kappa_over_gamma=cfg.kappa_over_gamma,
                        j_modulus_over_gamma=cfg.j_over_gamma,
                        theta=cfg.theta,
                        eta=cfg.eta)


def build_system(cfg: ScenarioConfig) -> DelayedLinearSystem:
    return _BUILDERS[cfg.system](build_params(cfg))


def _from_dict(cls, data: dict, context: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(context, f"unknown fields {unknown}")
    return cls(**data)


def scenario_from_dict(data: dict) -> ScenarioConfig:
    data = dict(data)
    if "outputs" in data:
        data["outputs"] = tuple(data["outputs"])
    return _from_dict(ScenarioConfig, data, "config")


def sweep_from_dict(data: dict) -> SweepConfig:
    data = dict(data)
    base = data.pop("base", {})
    if not isinstance(base, dict):
        raise ConfigError("base", "must be an object with scenario fields")
    cfg = _from_dict(SweepConfig, data, "config")
    cfg.base = scenario_from_dict(base)
    return cfg


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    data = dataclasses.asdict(cfg)
    data["outputs"] = list(cfg.outputs)
    return data
