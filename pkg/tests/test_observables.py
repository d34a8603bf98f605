"""Populations, reduced state, entropy, transfer metric, circulation."""

import numpy as np
import pytest

import waveqed as wq
from waveqed.errors import InconclusiveError
from waveqed.observables import CYCLE_ABC, CYCLE_ACB, NO_CIRCULATION


def params(omega0=112.19, kappa=8.7e-3, j=0.5, theta=0.0, eta=0.56):
    return wq.SystemParams(omega0_over_gamma=omega0, kappa_over_gamma=kappa,
                           j_modulus_over_gamma=j, theta=theta, eta=eta)


def trimer_run(theta, initial, t_max=15.0):
    sys3 = wq.build_giant_trimer(params(j=1.0, theta=theta))
    return wq.integrate(sys3, wq.InitialState(initial), t_max)


def test_populations_and_total_are_consistent():
    traj = wq.integrate(wq.build_small_dimer(params(theta=np.pi / 2)),
                        wq.InitialState("a"), 10.0)
    pops = wq.populations(traj)
    assert set(pops) == {"a", "b"}
    assert pops["a"].values[0] == 1.0 and pops["b"].values[0] == 0.0
    total = wq.total_population(traj)
    assert np.allclose(pops["a"].values + pops["b"].values, total.values,
                       rtol=0, atol=1e-15)
    assert total.name == "P_tot"
    assert np.array_equal(total.times, traj.times)


def test_mirrored_probe_populations_identical_at_zero_phase():
    sys2 = wq.build_small_dimer(params(eta=0.574))
    ta = wq.integrate(sys2, wq.InitialState("a"), 15.0)
    tb = wq.integrate(sys2, wq.InitialState("b"), 15.0)
    assert np.array_equal(wq.populations(ta)["b"].values,
                          wq.populations(tb)["a"].values)
    assert wq.nonreciprocity_metric(ta, tb) == 0.0


def test_reduced_state_is_a_valid_density_matrix():
    traj = wq.integrate(wq.build_giant_trimer(params(j=1.0, theta=np.pi / 2)),
                        wq.InitialState("a"), 10.0)
    rho = wq.reduced_density_matrix(traj, 3.3)
    assert rho.labels == ("a", "b", "c", "g")
    mat = rho.matrix
    assert np.allclose(mat, mat.conj().T, atol=1e-15)
    assert abs(np.trace(mat) - 1.0) < 1e-12
    p_tot = float((np.abs(wq.sample(traj, 3.3)) ** 2).sum())
    eigs = np.sort(np.linalg.eigvalsh(mat))
    expect = np.sort([0.0, 0.0, p_tot, 1.0 - p_tot])
    assert np.allclose(eigs, expect, atol=1e-12)


def test_linear_entropy_identity_and_range():
    for build, j in ((wq.build_small_dimer, 0.5), (wq.build_giant_trimer, 1.0)):
        traj = wq.integrate(build(params(j=j, theta=np.pi / 2)),
                            wq.InitialState("a"), 15.0)
        entropy = wq.linear_entropy(traj).values
        p_tot = wq.total_population(traj).values
        assert np.max(np.abs(entropy - 2.0 * p_tot * (1.0 - p_tot))) < 1e-12
        assert np.all(entropy >= -1e-15)
        assert np.all(entropy <= 0.5 + 1e-12)


def test_metric_requires_matching_grids():
    sys2 = wq.build_small_dimer(params())
    ta = wq.integrate(sys2, wq.InitialState("a"), 10.0, steps_per_delay=100)
    tb = wq.integrate(sys2, wq.InitialState("b"), 10.0, steps_per_delay=200)
    with pytest.raises(ValueError):
        wq.nonreciprocity_metric(ta, tb)


def test_metric_is_positive_when_phase_breaks_symmetry():
    sys2 = wq.build_small_dimer(params(theta=np.pi / 2))
    ta = wq.integrate(sys2, wq.InitialState("a"), 15.0)
    tb = wq.integrate(sys2, wq.InitialState("b"), 15.0)
    assert wq.nonreciprocity_metric(ta, tb) > 0.05


def test_circulation_labels_follow_the_coupling_phase_sign():
    for initial in ("a", "b"):
        assert wq.circulation_direction(trimer_run(np.pi / 2, initial)) == CYCLE_ACB
        assert wq.circulation_direction(trimer_run(-np.pi / 2, initial)) == CYCLE_ABC


def test_circulation_tie_reports_no_direction():
    assert wq.circulation_direction(trimer_run(0.0, "b")) == NO_CIRCULATION


def test_circulation_inconclusive_cases():
    # Run ends before the delayed coupling has acted at all.
    with pytest.raises(InconclusiveError):
        wq.circulation_direction(trimer_run(np.pi / 2, "a", t_max=0.3))
    # Run ends while the receiving populations are still climbing toward
    # their first peaks, so no maximum can be trusted yet.
    with pytest.raises(InconclusiveError):
        wq.circulation_direction(trimer_run(np.pi / 2, "a", t_max=0.8))


def test_circulation_needs_three_emitters():
    traj = wq.integrate(wq.build_small_dimer(params()), wq.InitialState("a"), 5.0)
    with pytest.raises(ValueError):
        wq.circulation_direction(traj)


def test_circulation_start_override_matches_default():
    traj = trimer_run(np.pi / 2, "a")
    assert wq.circulation_direction(traj, start="a") == CYCLE_ACB
