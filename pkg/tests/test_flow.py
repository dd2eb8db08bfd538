import numpy as np
import pytest

from lca.errors import StepUnderflow
from lca.flow import (
    CONVERGED,
    PRECISION_FLOOR,
    FlowParams,
    ascend,
    gradient_generator,
    trap_audit,
)
from lca.matcore import commutator, frobenius_norm, random_unitary, spawn_rngs, unitary_exp
from lca.oracle import landscape_at
from lca.spectra import Spectrum
from lca.tables import ContingencyTable, permutation_of_table

RHO3, THETA3 = np.array([0.4, 0.3, 0.3]), np.array([0.4, 0.4, 0.2])


def test_generator_vanishes_at_critical_points():
    u = permutation_of_table(ContingencyTable.from_entries([[0, 1], [2, 0]])).unitary()
    assert frobenius_norm(gradient_generator(u, RHO3, THETA3)) <= 1e-10


def test_generator_two_level_hadamard():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    rho = theta = np.array([1.0, 0.0])
    a = gradient_generator(h, rho, theta)
    np.testing.assert_allclose(a, a.conj().T)
    x = h @ np.diag(rho) @ h.conj().T
    expected = frobenius_norm(commutator(np.diag(theta), x)) ** 2
    assert expected == pytest.approx(0.5)
    s = 1e-6
    deriv = (landscape_at(unitary_exp(a, s) @ h, rho, theta) - landscape_at(unitary_exp(a, -s) @ h, rho, theta)) / (2 * s)
    assert deriv == pytest.approx(expected, rel=1e-8)


def test_generator_is_linear_in_theta():
    u = random_unitary(4, 0)
    rho, theta = np.array([0.4, 0.3, 0.2, 0.1]), np.array([1.0, 0.2, 0.1, 0.0])
    np.testing.assert_allclose(gradient_generator(u, rho, 3 * theta), 3 * gradient_generator(u, rho, theta))


def test_ascend_two_level():
    rho = theta = np.array([1.0, 0.0])
    for rng in spawn_rngs(0, 20):
        traj = ascend(random_unitary(2, rng), rho, theta)
        assert traj.converged
        assert abs(traj.converged_to - 1.0) <= 1e-6


def test_ascend_three_level_never_stalls_low():
    for rng in spawn_rngs(1, 20):
        traj = ascend(random_unitary(3, rng), RHO3, THETA3)
        assert traj.status in (CONVERGED, PRECISION_FLOOR)
        assert abs(traj.converged_to - 0.34) <= 1e-6
        assert all(b > a for a, b in zip(traj.J_series, traj.J_series[1:]))


def test_ascend_from_minimum_stops_immediately():
    u = permutation_of_table(ContingencyTable.from_entries([[0, 1], [2, 0]])).unitary()
    traj = ascend(u, RHO3, THETA3)
    assert traj.iterations == 0 and traj.status == CONVERGED
    assert traj.converged_to == pytest.approx(0.32, abs=1e-15)


def test_strict_mode_raises_on_max_iters():
    from lca.errors import NonConvergence

    with pytest.raises(NonConvergence):
        ascend(random_unitary(3, 5), RHO3, THETA3, FlowParams(max_iters=2), strict=True)


def test_flow_params_validation():
    with pytest.raises(ValueError):
        FlowParams(step0=-1)
    with pytest.raises(ValueError):
        FlowParams(shrink=1.0)
    with pytest.raises(ValueError):
        FlowParams(grad_tol=0)


def test_trap_audit_three_level():
    audit = trap_audit(Spectrum((0.4, 0.3), (1, 2)), Spectrum((0.4, 0.2), (2, 1)), 8, seed=2)
    s = audit.summary
    assert s["fraction_at_max"] == 1.0 and s["all_on_levels"]
    assert s["saddle_starts"] == 0


def test_trap_audit_saddles_escape():
    audit = trap_audit(Spectrum((1.0, 0.5, 0.0), (1, 1, 1)), Spectrum((1.0, 0.0), (1, 2)), 4, seed=3)
    s = audit.summary
    assert s["saddle_starts"] == 1
    assert s["saddle_escape_fraction"] == 1.0 and s["fraction_at_max"] == 1.0


def test_flat_landscape_terminates_at_zero():
    audit = trap_audit(Spectrum((0.5,), (2,)), Spectrum((1.0, 0.0), (1, 1)), 5, seed=0)
    assert all(t["iterations"] == 0 for t in audit.trajectories)
    assert all(t["converged_to"] == pytest.approx(0.5, abs=1e-14) for t in audit.trajectories)


def test_trap_audit_is_deterministic():
    args = (Spectrum((0.4, 0.3), (1, 2)), Spectrum((0.4, 0.2), (2, 1)), 3)
    a, b = trap_audit(*args, seed=9), trap_audit(*args, seed=9)
    assert a.trajectories == b.trajectories
