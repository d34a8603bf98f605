"""Closed-form companions to the simulation.

Markovian collapse of the taps (lossless-eigenvalue detection), the
s-domain coupling pair behind the reciprocity argument, analytic
reciprocity predicates, and the pre-feedback solution used as a solver
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConfigError
from .model import DelayedLinearSystem, SystemParams

#: Real parts below this count as lossless / vanishing.
LOSSLESS_TOL = 1e-12

#: Tolerance for the analytic reciprocity conditions (on sin/cos factors).
PREDICATE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EffectiveMatrix:
    """Instantaneous matrix of the tau -> 0 limit, with its spectrum."""

    matrix: np.ndarray
    eigenvalues: np.ndarray

    @property
    def decay_rates(self) -> np.ndarray:
        # Amplitude eigenvalue lambda decays populations at -2 Re(lambda).
        return -2.0 * self.eigenvalues.real


def markovian_effective_matrix(system: DelayedLinearSystem) -> EffectiveMatrix:
    """Collapse the delayed taps onto one matrix, M = sum_n A_n e^{i n phi}.

    With no extra decay channel the collapse is passive: every eigenvalue
    has nonpositive real part, and a vanishing real part marks a state
    that stopped radiating into the line.
    """
    mat = np.zeros((system.dimension, system.dimension), dtype=np.complex128)
    for n, tap in enumerate(system.tap_matrices):
        mat = mat + tap * np.exp(1j * n * system.phi)
    return EffectiveMatrix(matrix=mat, eigenvalues=np.linalg.eigvals(mat))


def braided_indirect_coupling(phi: float) -> complex:
    """Residual coherent coupling of the braided two-port pair at tau -> 0.

    This is the coefficient g in the -i g c_partner term of the collapsed
    equations, i.e. i times the off-diagonal of the effective matrix when
    the direct coupling is switched off. It is real (plus or minus gamma)
    exactly at the half-integer phases where the diagonal loss cancels.
    """
    return -0.5j * (3.0 * np.exp(1j * phi) + np.exp(3j * phi))


def sdomain_coupling_pair(system: DelayedLinearSystem, s: complex) -> Tuple[complex, complex]:
    """Overall a<-b and b<-a couplings in the Laplace domain at the point s.

    Each direction sums its tap entries with the shifted phase
    exp(n * (i phi - s tau)), so retardation tilts the effective coupling
    phases away from the bare +-theta.
    """
    if system.dimension != 2:
        raise ValueError("the s-domain coupling pair is defined for two-emitter systems")
    shifted = 1j * system.phi - s * system.tau
    forward = 0j
    backward = 0j
    for n, tap in enumerate(system.tap_matrices):
        weight = np.exp(n * shifted)
        forward += tap[0, 1] * weight
        backward += tap[1, 0] * weight
    return complex(forward), complex(backward)


def modulus_asymmetry(system: DelayedLinearSystem, s: complex) -> float:
    """|forward(s)|^2 - |backward(s)|^2 of the s-domain coupling pair.

    A nonzero value at any real s rules out reciprocal transfer; zero for
    all real s is what the mirrored dynamics actually need.
    """
    forward, backward = sdomain_coupling_pair(system, s)
    return float(abs(forward) ** 2 - abs(backward) ** 2)


def reciprocity_predicted(system: DelayedLinearSystem, tol: float = PREDICATE_TOL) -> bool:
    """True when the s-domain moduli match for every real s.

    For systems whose retarded cross taps are real and symmetric (all
    built systems qualify) the asymmetry factorizes as

        4 * Im(J) * sum_{n>=1} A_n[0,1] cos(n phi) e^{-n s tau},

    with Im(J) read off the instantaneous off-diagonal. It vanishes
    identically iff the direct coupling is effectively real or every
    retarded cross tap sits at a node of cos(n phi). For the single-port
    pair that is the product condition sin(theta) cos(phi) = 0; for the
    braided pair it is sin(theta) = 0 or phi at a half-integer multiple
    of pi (where cos(phi) and cos(3 phi) vanish together).
    """
    if system.dimension != 2:
        raise ValueError("the reciprocity predicate is defined for two-emitter systems")
    taps = system.tap_matrices
    for n in (1, 2, 3):
        off = taps[n][0, 1]
        if abs(off.imag) > tol or abs(off - taps[n][1, 0]) > tol:
            raise ValueError("predicate assumes real symmetric retarded cross taps")
    if abs(taps[0][0, 1].real) <= tol:  # Im(J) = Re(A_0[a, b])
        return True
    for n in (1, 2, 3):
        if abs(taps[n][0, 1]) * abs(np.cos(n * system.phi)) > tol:
            return False
    return True


def early_time_closed_form(params: SystemParams, t: float,
                           init: str = "a") -> Tuple[complex, complex]:
    """Single-port dimer amplitudes before the first feedback arrives.

    While the emitted photon is still in flight (t < tau) the retarded
    taps are silent and the pair reduces to a damped two-level Rabi
    problem:

        c_start(t) = e^{-(kappa+1) t / 2} cos(|J| t)
        c_other(t) = -i e^{-+ i theta} e^{-(kappa+1) t / 2} sin(|J| t)

    with the coupling phase entering conjugately for the two choices of
    initially excited emitter. Raises outside 0 <= t < tau where the
    closed form stops being valid.
    """
    if params.tau <= 0:
        raise ValueError("the pre-feedback window is empty for tau = 0")
    if not 0 <= t < params.tau:
        raise ValueError(f"closed form needs 0 <= t < tau = {params.tau!r}, got t = {t!r}")
    envelope = np.exp(-(params.kappa_over_gamma + 1.0) * t / 2.0)
    stay = envelope * np.cos(params.j_modulus_over_gamma * t)
    hop = envelope * np.sin(params.j_modulus_over_gamma * t)
    if init == "a":
        return complex(stay), complex(-1j * np.exp(-1j * params.theta) * hop)
    if init == "b":
        return complex(-1j * np.exp(1j * params.theta) * hop), complex(stay)
    raise ConfigError("initial", f"expected 'a' or 'b', got {init!r}")
