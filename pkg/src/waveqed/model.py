"""Physical parameters and builders for the retarded emitter systems.

Everything is dimensionless: the waveguide-induced decay rate gamma sets
the unit (gamma = 1) and time is measured in 1/gamma. Each system is a
linear delay system

    dc/dt = sum_n A_n e^{i n phi} Theta(t - n tau) c(t - n tau),

where the tap matrices A_n carry the couplings and the propagation phase
phi is stored separately so it can be varied independently of the decay
structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import ConfigError

DIMER_LABELS = ("a", "b")
TRIMER_LABELS = ("a", "b", "c")


def _check_finite(field: str, value) -> None:
    if not np.isfinite(value):
        raise ConfigError(field, f"must be finite, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless parameters of one emitter configuration.

    omega0_over_gamma: emitter transition frequency in units of gamma.
    kappa_over_gamma: extra decay rate into channels other than the waveguide.
    j_modulus_over_gamma: magnitude of the direct coupling, J = |J| e^{i theta}.
    theta: phase of the direct coupling in radians.
    eta: emitter separation normalized by the coherence length,
        eta = d * gamma / v_g. It doubles as the unit delay tau in
        1/gamma units; eta = 0 selects the Markovian limit.
    """

    omega0_over_gamma: float
    kappa_over_gamma: float = 0.0
    j_modulus_over_gamma: float = 0.0
    theta: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        for field in ("omega0_over_gamma", "kappa_over_gamma",
                      "j_modulus_over_gamma", "theta", "eta"):
            _check_finite(field, getattr(self, field))
        if self.omega0_over_gamma <= 0:
            raise ConfigError("omega0_over_gamma", "must be positive")
        if self.kappa_over_gamma < 0:
            raise ConfigError("kappa_over_gamma", "must be nonnegative")
        if self.j_modulus_over_gamma < 0:
            raise ConfigError("j_modulus_over_gamma", "must be nonnegative")
        if self.eta < 0:
            raise ConfigError("eta", "must be nonnegative")

    @property
    def phi(self) -> float:
        # Exact product on purpose: values like 112.19 * 0.56 sit close to
        # but not exactly on a multiple of pi, and that offset is physical.
        return self.omega0_over_gamma * self.eta

    @property
    def tau(self) -> float:
        return self.eta


def phase_from_eta(omega0_over_gamma: float, eta: float) -> float:
    """Propagation phase accumulated over one emitter separation, phi = omega0 * eta."""
    for field, value in (("omega0_over_gamma", omega0_over_gamma), ("eta", eta)):
        if not np.isfinite(value) or value < 0:
            raise ConfigError(field, f"must be finite and nonnegative, got {value!r}")
    return omega0_over_gamma * eta


@dataclass(frozen=True, eq=False)
class DelayedLinearSystem:
    """Retarded linear system dc/dt = sum_n A_n e^{i n phi} Theta(t - n tau) c(t - n tau).

    tap_matrices holds A_0..A_3 in delay order. A_0 collects every
    instantaneous term (local decay, direct coupling, any zero-delay
    indirect coupling); higher taps hold the retarded terms. The phase
    factors e^{i n phi} are applied by consumers, never baked in here.
    """

    dimension: int
    tau: float
    phi: float
    tap_matrices: Tuple[np.ndarray, ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        for mat in self.tap_matrices:
            if isinstance(mat, np.ndarray):
                mat.setflags(write=False)

    def index_of(self, label: str) -> int:
        if label not in self.labels:
            raise ConfigError("initial", f"no emitter {label!r} in {self.labels}")
        return self.labels.index(label)


@dataclass(frozen=True)
class InitialState:
    """Single excitation sitting on one emitter, vacuum field, zero history."""

    excited_emitter: str

    def vector(self, system: DelayedLinearSystem) -> np.ndarray:
        vec = np.zeros(system.dimension, dtype=np.complex128)
        vec[system.index_of(self.excited_emitter)] = 1.0
        return vec


def _direct_coupling(params: SystemParams) -> complex:
    return params.j_modulus_over_gamma * np.exp(1j * params.theta)


def build_small_dimer(params: SystemParams) -> DelayedLinearSystem:
    """Two single-port emitters separated by one delay unit, plus direct coupling."""
    kap = params.kappa_over_gamma
    J = _direct_coupling(params)
    a0 = np.array([[-(kap + 1.0) / 2.0, -1j * J],
                   [-1j * np.conj(J), -(kap + 1.0) / 2.0]], dtype=np.complex128)
    a1 = np.array([[0.0, -0.5],
                   [-0.5, 0.0]], dtype=np.complex128)
    a2 = np.zeros((2, 2), dtype=np.complex128)
    a3 = np.zeros((2, 2), dtype=np.complex128)
    return DelayedLinearSystem(2, params.tau, params.phi, (a0, a1, a2, a3), DIMER_LABELS)


def build_giant_dimer(params: SystemParams) -> DelayedLinearSystem:
    """Two two-port emitters with ports braided along the line (a-b-a-b).

    Each emitter interferes with itself across two ports separated by
    2 tau, and the partner sits one delay unit away on either side, which
    yields the 3:1 weighting of the odd taps. kappa is accepted on the
    diagonal for generality even though the braided configuration is
    normally studied without extra decay channels.
    """
    kap = params.kappa_over_gamma
    J = _direct_coupling(params)
    a0 = np.array([[-1.0 - kap, -1j * J],
                   [-1j * np.conj(J), -1.0 - kap]], dtype=np.complex128)
    a1 = np.array([[0.0, -1.5],
                   [-1.5, 0.0]], dtype=np.complex128)
    a2 = np.array([[-1.0, 0.0],
                   [0.0, -1.0]], dtype=np.complex128)
    a3 = np.array([[0.0, -0.5],
                   [-0.5, 0.0]], dtype=np.complex128)
    return DelayedLinearSystem(2, params.tau, params.phi, (a0, a1, a2, a3), DIMER_LABELS)


def build_giant_trimer(params: SystemParams) -> DelayedLinearSystem:
    """Braided trimer: a and c share the outer port pair, b the inner one.

    Ordering is (a, b, c). Emitters a and c talk through three channels:
    the direct coupling J, a zero-delay indirect term -gamma (their ports
    interleave), and a retarded indirect term at 2 tau. Emitter b couples
    to both neighbours at delays tau and 3 tau with 3:1 weight.
    """
    kap = params.kappa_over_gamma
    J = _direct_coupling(params)
    a0 = np.zeros((3, 3), dtype=np.complex128)
    a0[0, 0] = a0[1, 1] = a0[2, 2] = -(kap + 1.0)
    a0[0, 2] = -1j * (J - 1j)
    a0[2, 0] = -1j * (np.conj(J) - 1j)

    a1 = np.zeros((3, 3), dtype=np.complex128)
    a1[0, 1] = a1[1, 0] = a1[1, 2] = a1[2, 1] = -1.5

    a2 = np.zeros((3, 3), dtype=np.complex128)
    a2[0, 0] = a2[1, 1] = a2[2, 2] = -1.0
    a2[0, 2] = a2[2, 0] = -1.0

    a3 = np.zeros((3, 3), dtype=np.complex128)
    a3[0, 1] = a3[1, 0] = a3[1, 2] = a3[2, 1] = -0.5

    return DelayedLinearSystem(3, params.tau, params.phi, (a0, a1, a2, a3), TRIMER_LABELS)


def validate(system: DelayedLinearSystem) -> List[str]:
    """Structural checks; returns a list of field-tagged problems (empty = ok)."""
    problems: List[str] = []
    if system.dimension not in (2, 3):
        problems.append(f"dimension: must be 2 or 3, got {system.dimension}")
    if len(system.labels) != system.dimension:
        problems.append(f"labels: expected {system.dimension} labels, got {system.labels!r}")
    if not np.isfinite(system.tau) or system.tau < 0:
        problems.append(f"tau: must be finite and nonnegative, got {system.tau!r}")
    if not np.isfinite(system.phi):
        problems.append(f"phi: must be finite, got {system.phi!r}")
    if len(system.tap_matrices) != 4:
        problems.append(f"tap_matrices: expected 4 taps, got {len(system.tap_matrices)}")
        return problems
    expected = (system.dimension, system.dimension)
    for n, mat in enumerate(system.tap_matrices):
        if not isinstance(mat, np.ndarray) or mat.shape != expected:
            problems.append(f"tap_matrices[{n}]: expected array of shape {expected}")
            continue
        if not np.all(np.isfinite(mat)):
            problems.append(f"tap_matrices[{n}]: entries must be finite")
    return problems
