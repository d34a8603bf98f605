"""Shared fixtures and the acceptance summary printed after the run."""

import pytest

import waveqed as wq

# (number, name, passed, detail) tuples collected by the acceptance tests.
ACCEPTANCE_RESULTS = []

_BUILDERS = {
    "small-dimer": wq.build_small_dimer,
    "giant-dimer": wq.build_giant_dimer,
    "trimer": wq.build_giant_trimer,
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"ACCEPTANCE {number:02d} {name}: {status}"
        if detail:
            line = f"{line}  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance():
    def record(number, name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, name, bool(passed), detail))

    return record


@pytest.fixture(scope="session")
def run():
    """Memoized integration so tests sharing a parameter set share the work."""
    cache = {}

    def _run(system="small-dimer", eta=0.56, theta=0.0, j=0.5, kappa=8.7e-3,
             omega0=112.19, initial="a", t_max=15.0, spd=200):
        key = (system, eta, theta, j, kappa, omega0, initial, t_max, spd)
        if key not in cache:
            params = wq.SystemParams(omega0_over_gamma=omega0, eta=eta,
                                     j_modulus_over_gamma=j,
                                     kappa_over_gamma=kappa, theta=theta)
            cache[key] = wq.integrate(_BUILDERS[system](params),
                                      wq.InitialState(initial), t_max,
                                      steps_per_delay=spd)
        return cache[key]

    _run.cache = cache
    return _run


@pytest.fixture(scope="session")
def mirrored_metric(run):
    """Nonreciprocity metric from the two mirrored initial conditions."""

    def _metric(**kw):
        traj_a = run(initial="a", **kw)
        traj_b = run(initial="b", **kw)
        return wq.nonreciprocity_metric(traj_a, traj_b)

    return _metric
