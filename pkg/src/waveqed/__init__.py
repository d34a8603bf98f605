"""Single-excitation dynamics of waveguide-coupled emitters with retardation."""

from .analysis import (EffectiveMatrix, braided_indirect_coupling,
                       early_time_closed_form, markovian_effective_matrix,
                       modulus_asymmetry, reciprocity_predicted,
                       sdomain_coupling_pair)
from .config import ScenarioConfig, SweepConfig, scenario_from_dict, sweep_from_dict
from .errors import (ConfigError, DivergenceError, InconclusiveError,
                     WaveqedError)
from .model import (DIMER_LABELS, TRIMER_LABELS, DelayedLinearSystem,
                    InitialState, SystemParams, build_giant_dimer,
                    build_giant_trimer, build_small_dimer, phase_from_eta,
                    validate)
from .observables import (DensityMatrix, ObservableSeries,
                          circulation_direction, linear_entropy,
                          nonreciprocity_metric, populations,
                          reduced_density_matrix, total_population)
from .presets import PRESET_NAMES, PRESETS
from .runner import run_figure_preset, run_scenario, run_sweep
from .solver import Trajectory, convergence_order, integrate, sample

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DIMER_LABELS", "DelayedLinearSystem", "DensityMatrix",
    "DivergenceError", "EffectiveMatrix", "InconclusiveError", "InitialState",
    "ObservableSeries", "PRESETS", "PRESET_NAMES", "ScenarioConfig",
    "SweepConfig", "SystemParams", "TRIMER_LABELS", "Trajectory",
    "WaveqedError", "braided_indirect_coupling", "build_giant_dimer",
    "build_giant_trimer", "build_small_dimer", "circulation_direction",
    "convergence_order", "early_time_closed_form", "integrate",
    "linear_entropy", "markovian_effective_matrix", "modulus_asymmetry",
    "nonreciprocity_metric", "phase_from_eta", "populations",
    "reciprocity_predicted", "reduced_density_matrix", "run_figure_preset",
    "run_scenario", "run_sweep", "sample", "scenario_from_dict",
    "sdomain_coupling_pair", "sweep_from_dict", "total_population",
    "validate", "__version__",
]
