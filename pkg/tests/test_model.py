"""Builder matrices, parameter validation, and structural checks."""

import numpy as np
import pytest

import waveqed as wq
from waveqed.errors import ConfigError


def params(omega0=112.19, kappa=8.7e-3, j=0.5, theta=0.0, eta=0.56):
    return wq.SystemParams(omega0_over_gamma=omega0, kappa_over_gamma=kappa,
                           j_modulus_over_gamma=j, theta=theta, eta=eta)


def test_phase_and_delay_are_derived_exactly():
    p = params()
    assert p.phi == 112.19 * 0.56
    assert p.tau == 0.56
    assert wq.phase_from_eta(112.19, 0.56) == p.phi


def test_phase_from_eta_rejects_bad_input():
    with pytest.raises(ConfigError):
        wq.phase_from_eta(-1.0, 0.5)
    with pytest.raises(ConfigError):
        wq.phase_from_eta(112.19, float("nan"))


@pytest.mark.parametrize("field,value", [
    ("omega0_over_gamma", 0.0),
    ("omega0_over_gamma", -3.0),
    ("kappa_over_gamma", -1e-6),
    ("j_modulus_over_gamma", -0.5),
    ("eta", -0.1),
    ("theta", float("inf")),
])
def test_params_reject_out_of_range(field, value):
    kw = dict(omega0_over_gamma=112.19, kappa_over_gamma=0.0,
              j_modulus_over_gamma=0.5, theta=0.0, eta=0.56)
    kw[field] = value
    with pytest.raises(ConfigError) as err:
        wq.SystemParams(**kw)
    assert err.value.field == field


def test_single_port_pair_taps():
    J = 0.5 * np.exp(1j * 0.3)
    sys2 = wq.build_small_dimer(params(theta=0.3, kappa=0.01))
    a0, a1, a2, a3 = sys2.tap_matrices
    expect0 = np.array([[-0.505, -1j * J],
                        [-1j * np.conj(J), -0.505]])
    assert np.allclose(a0, expect0, atol=1e-15)
    assert np.array_equal(a1, np.array([[0, -0.5], [-0.5, 0]], dtype=complex))
    assert not a2.any() and not a3.any()
    assert sys2.labels == ("a", "b")
    assert sys2.dimension == 2


def test_two_port_pair_taps():
    sys2 = wq.build_giant_dimer(params(theta=np.pi / 2, kappa=0.0))
    a0, a1, a2, a3 = sys2.tap_matrices
    assert np.allclose(np.diag(a0), [-1.0, -1.0])
    # -i J with J = 0.5 e^{i pi/2}; exp() leaves a ~1e-17 residue in the
    # real part, so compare against the intended value with a tolerance.
    assert abs(a0[0, 1] - 0.5) < 1e-15
    assert np.array_equal(a1, np.array([[0, -1.5], [-1.5, 0]], dtype=complex))
    assert np.array_equal(a2, -np.eye(2, dtype=complex))
    assert np.array_equal(a3, np.array([[0, -0.5], [-0.5, 0]], dtype=complex))


def test_three_emitter_taps_and_one_way_point():
    # At |J| = 1, theta = pi/2 the direct a<-c entry cancels exactly while
    # c<-a is maximal; this one-way point drives the circulation.
    sys3 = wq.build_giant_trimer(params(j=1.0, theta=np.pi / 2))
    a0, a1, a2, a3 = sys3.tap_matrices
    assert sys3.labels == ("a", "b", "c")
    assert abs(a0[0, 2]) < 1e-15
    assert abs(a0[2, 0] + 2.0) < 1e-15
    assert np.allclose(np.diag(a0), [-1.0087, -1.0087, -1.0087])
    assert a0[0, 1] == a0[1, 0] == a0[1, 2] == a0[2, 1] == 0.0
    ring = np.array([[0, -1.5, 0], [-1.5, 0, -1.5], [0, -1.5, 0]], dtype=complex)
    assert np.array_equal(a1, ring)
    assert np.array_equal(a3, ring / 3.0)
    expect2 = -np.eye(3, dtype=complex)
    expect2[0, 2] = expect2[2, 0] = -1.0
    assert np.array_equal(a2, expect2)


@pytest.mark.parametrize("build", [wq.build_small_dimer, wq.build_giant_dimer,
                                   wq.build_giant_trimer])
def test_phase_reversal_transposes_the_instantaneous_tap(build):
    # theta -> -theta swaps the two transfer directions: the diagonal is
    # real and only the direct-coupling entries carry theta, so the
    # instantaneous tap simply transposes while the retarded taps (which
    # are symmetric and theta-free) are untouched.
    fwd = build(params(j=0.7, theta=0.4)).tap_matrices
    rev = build(params(j=0.7, theta=-0.4)).tap_matrices
    assert np.allclose(fwd[0], rev[0].T, atol=1e-15)
    for n in (1, 2, 3):
        assert np.array_equal(fwd[n], rev[n])


def test_tap_matrices_are_read_only():
    sys2 = wq.build_small_dimer(params())
    with pytest.raises(ValueError):
        sys2.tap_matrices[0][0, 0] = 0.0


def test_initial_state_vector_and_unknown_label():
    sys3 = wq.build_giant_trimer(params(j=1.0))
    vec = wq.InitialState("b").vector(sys3)
    assert np.array_equal(vec, np.array([0, 1, 0], dtype=complex))
    with pytest.raises(ConfigError):
        wq.InitialState("d").vector(sys3)


def test_validate_flags_structural_problems():
    good = wq.build_small_dimer(params())
    assert wq.validate(good) == []

    bad = wq.DelayedLinearSystem(
        dimension=2, tau=0.56, phi=1.0,
        tap_matrices=(np.zeros((2, 2), dtype=complex),) * 3,
        labels=("a", "b"))
    assert any("tap_matrices" in p for p in wq.validate(bad))

    wrong_shape = wq.DelayedLinearSystem(
        dimension=2, tau=0.56, phi=1.0,
        tap_matrices=(np.zeros((3, 3), dtype=complex),) * 4,
        labels=("a", "b"))
    assert any("shape" in p for p in wq.validate(wrong_shape))

    neg_tau = wq.DelayedLinearSystem(
        dimension=2, tau=-1.0, phi=1.0,
        tap_matrices=tuple(np.zeros((2, 2), dtype=complex) for _ in range(4)),
        labels=("a", "b"))
    assert any(p.startswith("tau") for p in wq.validate(neg_tau))
