"""Command line front end.

Subcommands:
  simulate   integrate one scenario and write the dataset + manifest
  sweep      run a family of scenarios, one summary row per value
  figure     run a bundled preset (datasets, manifest, optional PNG)
  analyze    print closed-form diagnostics for a configuration as JSON

Configuration can come from a JSON file (--config), from flags, or
both; flags win. Exit codes: 0 success, 2 configuration problem,
3 runtime failure (for instance a diverging integration).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import analysis, config, runner
from .errors import ConfigError, DivergenceError, WaveqedError
from .presets import PRESET_NAMES

DEFAULT_OMEGA0_GHZ = 3.276
DEFAULT_GAMMA_MHZ = 29.2


def _add_scenario_flags(sub: argparse.ArgumentParser, io_flags: bool = True) -> None:
    sub.add_argument("--config", help="JSON file with scenario fields")
    sub.add_argument("--system", choices=config.KNOWN_SYSTEMS)
    sub.add_argument("--eta", type=float, help="delay, units of 1/gamma")
    sub.add_argument("--theta", type=float, help="direct-coupling phase, radians")
    sub.add_argument("--j-over-gamma", type=float, help="direct-coupling modulus")
    sub.add_argument("--kappa-over-gamma", type=float, help="parasitic decay rate")
    sub.add_argument("--omega0-over-gamma", type=float,
                     help="transition frequency in units of gamma")
    sub.add_argument("--omega0-ghz", type=float,
                     help=f"transition frequency in GHz (default {DEFAULT_OMEGA0_GHZ})")
    sub.add_argument("--gamma-mhz", type=float,
                     help=f"waveguide decay rate in MHz (default {DEFAULT_GAMMA_MHZ})")
    sub.add_argument("--initial", help="label of the initially excited emitter")
    sub.add_argument("--t-max", type=float, help="integration horizon, units of 1/gamma")
    sub.add_argument("--steps-per-delay", type=int)
    if io_flags:
        sub.add_argument("--outputs", help="comma separated list of output channels")
        sub.add_argument("--output", help="dataset path")
        sub.add_argument("--output-stride", type=int,
                         help="keep every n-th grid node in the dataset")


def _load_json(path: str) -> Dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path} is not valid JSON: {exc}") from exc


def _resolve_omega0(args) -> Optional[float]:
    """Merge the dimensionless and physical-unit frequency flags."""
    physical = args.omega0_ghz is not None or args.gamma_mhz is not None
    if args.omega0_over_gamma is not None:
        if physical:
            raise ConfigError(
                "omega0",
                "give either --omega0-over-gamma or the GHz/MHz pair, not both")
        return args.omega0_over_gamma
    if physical:
        omega0_ghz = args.omega0_ghz if args.omega0_ghz is not None else DEFAULT_OMEGA0_GHZ
        gamma_mhz = args.gamma_mhz if args.gamma_mhz is not None else DEFAULT_GAMMA_MHZ
        if gamma_mhz <= 0 or omega0_ghz <= 0:
            raise ConfigError("omega0", "physical frequencies must be positive")
        return omega0_ghz * 1e3 / gamma_mhz
    return None


def _scenario_overrides(args, io_flags: bool = True) -> Dict:
    over: Dict = {}
    pairs = [("system", "system"), ("eta", "eta"), ("theta", "theta"),
             ("j_over_gamma", "j_over_gamma"),
             ("kappa_over_gamma", "kappa_over_gamma"),
             ("initial", "initial"), ("t_max", "t_max_gamma"),
             ("steps_per_delay", "steps_per_delay")]
    if io_flags:
        pairs += [("output", "output_path"), ("output_stride", "output_stride")]
    for attr, field in pairs:
        value = getattr(args, attr)
        if value is not None:
            over[field] = value
    omega0 = _resolve_omega0(args)
    if omega0 is not None:
        over["omega0_over_gamma"] = omega0
    if io_flags and args.outputs is not None:
        over["outputs"] = tuple(tok.strip() for tok in args.outputs.split(",") if tok.strip())
    return over


def _scenario_from_args(args, io_flags: bool = True) -> config.ScenarioConfig:
    data = _load_json(args.config) if args.config else {}
    cfg = config.scenario_from_dict(data)
    for field, value in _scenario_overrides(args, io_flags).items():
        setattr(cfg, field, value)
    return cfg


# ----------------------------------------------------------------------
# subcommand handlers

def _cmd_simulate(args) -> int:
    cfg = _scenario_from_args(args)
    manifest = runner.run_scenario(cfg)
    print(f"wrote {cfg.output_path} ({manifest['output']['rows']} rows)")
    return 0


def _parse_values(raw: str) -> List[float]:
    out = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(float(tok))
        except ValueError as exc:
            raise ConfigError("values", f"not a number: {tok!r}") from exc
    return out


def _cmd_sweep(args) -> int:
    if args.config:
        cfg = config.sweep_from_dict(_load_json(args.config))
    else:
        cfg = config.SweepConfig()
    for field, value in _scenario_overrides(args).items():
        setattr(cfg.base, field, value)
    if args.parameter is not None:
        cfg.parameter = args.parameter
    if args.values is not None:
        cfg.values = _parse_values(args.values)
    if args.paired is not None:
        cfg.paired = args.paired
    manifest = runner.run_sweep(cfg)
    print(f"wrote {cfg.base.output_path} ({manifest['output']['rows']} points)")
    return 0


def _cmd_figure(args) -> int:
    if args.list:
        for name in PRESET_NAMES:
            print(name)
        return 0
    if not args.name:
        raise ConfigError("preset", "name required (or use --list)")
    manifest = runner.run_figure_preset(args.name, out_dir=args.out_dir,
                                        render=not args.no_render)
    print(f"wrote {args.out_dir}/{args.name} ({len(manifest['runs'])} runs)")
    return 0


def _complex_pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def _cmd_analyze(args) -> int:
    cfg = _scenario_from_args(args, io_flags=False)
    problems = config.scenario_errors(cfg)
    if problems:
        raise ConfigError("config", "; ".join(problems))
    params = config.build_params(cfg)
    system = config.build_system(cfg)
    eff = analysis.markovian_effective_matrix(system)
    report: Dict = {
        "system": cfg.system,
        "phi": params.phi,
        "tau": params.tau,
        "effective_matrix": [[_complex_pair(z) for z in row] for row in eff.matrix],
        "eigenvalues": [_complex_pair(z) for z in eff.eigenvalues],
        "decay_rates": [float(x) for x in eff.decay_rates],
    }
    if system.dimension == 2:
        report["reciprocity_predicted"] = analysis.reciprocity_predicted(system)
        report["modulus_asymmetry"] = {
            str(s): analysis.modulus_asymmetry(system, s) for s in (0.1, 1.0, 10.0)
        }
    if cfg.system == "giant-dimer":
        report["indirect_coupling"] = _complex_pair(
            analysis.braided_indirect_coupling(params.phi))
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waveqed",
        description="Delay-aware simulator for waveguide-coupled emitters")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="integrate one scenario")
    _add_scenario_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    swp = subs.add_parser("sweep", help="scan one parameter, summary row per value")
    _add_scenario_flags(swp)
    swp.add_argument("--parameter", choices=config.SWEEPABLE)
    swp.add_argument("--values", help="comma separated numbers")
    paired = swp.add_mutually_exclusive_group()
    paired.add_argument("--paired", dest="paired", action="store_true", default=None,
                        help="also run the mirrored initial condition (default)")
    paired.add_argument("--unpaired", dest="paired", action="store_false",
                        help="single run per value, no nonreciprocity column")
    swp.set_defaults(func=_cmd_sweep)

    fig = subs.add_parser("figure", help="run a bundled preset")
    fig.add_argument("name", nargs="?", help="preset name, see --list")
    fig.add_argument("--out-dir", default="figures")
    fig.add_argument("--no-render", action="store_true",
                     help="write datasets only, skip the PNG")
    fig.add_argument("--list", action="store_true", help="print preset names")
    fig.set_defaults(func=_cmd_figure)

    ana = subs.add_parser("analyze", help="closed-form diagnostics as JSON")
    _add_scenario_flags(ana, io_flags=False)
    ana.set_defaults(func=_cmd_analyze)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DivergenceError, WaveqedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
