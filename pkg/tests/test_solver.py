"""Integrator behaviour: grids, accuracy, dense output, failure modes."""

import numpy as np
import pytest

import waveqed as wq
from waveqed.errors import ConfigError, DivergenceError

from oracles import giant_dimer_rhs, integrate_dde, small_dimer_rhs, trimer_rhs, unit


def params(omega0=112.19, kappa=8.7e-3, j=0.5, theta=0.0, eta=0.56):
    return wq.SystemParams(omega0_over_gamma=omega0, kappa_over_gamma=kappa,
                           j_modulus_over_gamma=j, theta=theta, eta=eta)


def test_grid_is_delay_aligned():
    traj = wq.integrate(wq.build_small_dimer(params()), wq.InitialState("a"),
                        15.0, steps_per_delay=200)
    assert traj.h == 0.56 / 200
    assert traj.steps_per_delay == 200
    assert traj.times[0] == 0.0
    assert traj.t_final >= 15.0
    assert traj.n_nodes == traj.amplitudes.shape[0] == traj.derivatives.shape[0]
    assert np.array_equal(traj.amplitudes[0], np.array([1, 0], dtype=complex))


def test_zero_horizon_yields_single_node():
    traj = wq.integrate(wq.build_small_dimer(params()), wq.InitialState("b"), 0.0)
    assert traj.n_nodes == 1
    assert np.array_equal(traj.amplitudes[0], np.array([0, 1], dtype=complex))


def test_partner_is_silent_before_the_delay_without_direct_coupling():
    traj = wq.integrate(wq.build_small_dimer(params(j=0.0)),
                        wq.InitialState("a"), 2.0, steps_per_delay=64)
    spd = traj.steps_per_delay
    assert np.all(traj.amplitudes[:spd + 1, 1] == 0.0)
    assert traj.amplitudes[spd + 1, 1] != 0.0


def test_pre_delay_amplitudes_match_the_closed_form():
    p = params(theta=0.3)
    traj = wq.integrate(wq.build_small_dimer(p), wq.InitialState("a"), 2.0)
    for t in (0.1, 0.3, 0.5599):
        expect = wq.early_time_closed_form(p, t)
        got = wq.sample(traj, t)
        assert abs(got[0] - expect[0]) < 1e-10
        assert abs(got[1] - expect[1]) < 1e-10


def test_mirrored_runs_are_bitwise_symmetric_at_zero_phase():
    sys2 = wq.build_small_dimer(params(eta=0.574))
    ta = wq.integrate(sys2, wq.InitialState("a"), 15.0)
    tb = wq.integrate(sys2, wq.InitialState("b"), 15.0)
    assert np.array_equal(ta.amplitudes[:, ::-1], tb.amplitudes)


def test_population_bound_holds():
    for build, j in ((wq.build_small_dimer, 0.5), (wq.build_giant_dimer, 0.5),
                     (wq.build_giant_trimer, 1.0)):
        traj = wq.integrate(build(params(j=j, theta=np.pi / 2)),
                            wq.InitialState("a"), 15.0)
        p_tot = (traj.amplitudes.real ** 2 + traj.amplitudes.imag ** 2).sum(axis=1)
        assert np.all(p_tot <= 1.0 + 1e-12)
        assert np.all(p_tot >= 0.0)


def test_sample_is_exact_on_nodes_and_accurate_between_them():
    sys2 = wq.build_small_dimer(params(theta=np.pi / 2))
    coarse = wq.integrate(sys2, wq.InitialState("a"), 10.0, steps_per_delay=100)
    fine = wq.integrate(sys2, wq.InitialState("a"), 10.0, steps_per_delay=200)
    node = 777
    assert np.array_equal(wq.sample(coarse, node * coarse.h),
                          coarse.amplitudes[node])
    # Midpoints of the coarse grid are nodes of the fine grid; the dense
    # output interpolates at the same fourth order the integrator carries.
    mids = np.arange(50, 900, 37)
    worst = max(
        float(np.max(np.abs(wq.sample(coarse, (m + 0.5) * coarse.h)
                            - fine.amplitudes[2 * m + 1])))
        for m in mids)
    assert worst < 1e-9


def test_sample_rejects_times_outside_the_run():
    traj = wq.integrate(wq.build_small_dimer(params()), wq.InitialState("a"), 1.0)
    with pytest.raises(ValueError):
        wq.sample(traj, -0.1)
    with pytest.raises(ValueError):
        wq.sample(traj, traj.t_final + 1.0)


def test_bad_arguments_are_config_errors():
    sys2 = wq.build_small_dimer(params())
    with pytest.raises(ConfigError):
        wq.integrate(sys2, wq.InitialState("a"), -1.0)
    with pytest.raises(ConfigError):
        wq.integrate(sys2, wq.InitialState("a"), float("nan"))
    with pytest.raises(ConfigError):
        wq.integrate(sys2, wq.InitialState("a"), 5.0, steps_per_delay=8)
    with pytest.raises(ConfigError):
        wq.integrate(sys2, wq.InitialState("a"), 5.0, steps_per_delay=200.5)


def test_divergence_guard_reports_last_valid_time():
    # A gain medium is not a valid physical configuration, but the solver
    # must fail loudly rather than return garbage.
    grow = wq.DelayedLinearSystem(
        dimension=2, tau=0.5, phi=0.0,
        tap_matrices=(np.eye(2, dtype=complex) * 3.0,)
        + tuple(np.zeros((2, 2), dtype=complex) for _ in range(3)),
        labels=("a", "b"))
    with pytest.raises(DivergenceError) as err:
        wq.integrate(grow, wq.InitialState("a"), 10.0, steps_per_delay=32)
    assert 0.0 < err.value.last_valid_time < 10.0


def test_markovian_path_matches_matrix_exponential():
    from scipy.linalg import expm

    p = params(eta=0.0, theta=np.pi / 3)
    sys2 = wq.build_small_dimer(p)
    traj = wq.integrate(sys2, wq.InitialState("a"), 5.0)
    assert traj.steps_per_delay is None
    eff = wq.markovian_effective_matrix(sys2)
    ref = expm(eff.matrix * 5.0) @ np.array([1, 0], dtype=complex)
    assert np.max(np.abs(wq.sample(traj, 5.0) - ref)) < 1e-9


def test_convergence_orders_sit_at_fourth_order():
    delayed = wq.convergence_order(wq.build_small_dimer(params(theta=np.pi / 2)),
                                   wq.InitialState("a"), 10.0, steps_per_delay=32)
    assert 3.5 < delayed < 4.5
    markovian = wq.convergence_order(wq.build_small_dimer(params(eta=0.0)),
                                     wq.InitialState("a"), 5.0)
    assert 3.5 < markovian < 4.5
    feedback_only = wq.convergence_order(wq.build_small_dimer(params(j=0.0)),
                                         wq.InitialState("a"), 10.0,
                                         steps_per_delay=32)
    assert 3.5 < feedback_only < 4.5


@pytest.mark.parametrize("label,builder,rhs,t_max", [
    ("single-port pair", wq.build_small_dimer, small_dimer_rhs, 10.0),
    ("two-port pair", wq.build_giant_dimer, giant_dimer_rhs, 10.0),
    ("three emitters", wq.build_giant_trimer, trimer_rhs, 8.0),
])
def test_solver_agrees_with_the_reference_integrator(label, builder, rhs, t_max):
    j = 1.0 if builder is wq.build_giant_trimer else 0.5
    p = params(j=j, theta=np.pi / 2)
    traj = wq.integrate(builder(p), wq.InitialState("a"), t_max)
    f, dim = rhs(p.phi, p.kappa_over_gamma, j, p.theta)
    evaluate = integrate_dde(f, dim, p.tau, unit(dim, 0), t_max)
    keep = traj.times <= t_max
    ref = evaluate(traj.times[keep])
    assert np.max(np.abs(ref - traj.amplitudes[keep])) < 1e-9, label
