"""Integrator behaviour: fixed points, orthant protection, order, Goh checks."""

import math

import numpy as np
import pytest

from glvnet.dynamics import (
    GlobalStabilityError,
    StepSizeUnderflowError,
    Trajectory,
    integrate,
    rhs,
    verify_global_stability,
)
from glvnet.glv import InteractionSystem, constant_competition, equilibrium
from glvnet.graphs import complete_bipartite, cycle, random_regular, star


def logistic():
    return InteractionSystem(r=np.ones(1), T=np.zeros((1, 1)), D=np.ones(1))


def test_rhs_examples():
    sys_ = constant_competition(cycle(3), 0.2)
    assert np.array_equal(rhs(sys_, np.zeros(3)), np.zeros(3))
    x_star = equilibrium(sys_).x_star
    assert np.max(np.abs(rhs(sys_, x_star))) < 1e-9
    assert rhs(logistic(), np.array([0.5]))[0] == pytest.approx(0.25)
    with pytest.raises(ValueError):
        rhs(sys_, np.array([-0.1, 1.0, 1.0]))


def test_logistic_converges_to_carrying_capacity():
    traj = integrate(logistic(), np.array([0.01]), 200.0, rtol=1e-9, atol=1e-11)
    assert traj.converged
    assert abs(traj.final_state[0] - 1.0) < 1e-6
    assert (np.diff(traj.times) > 0).all()


def test_regular_graph_convergence_from_random_start():
    d, n, tau = 3, 8, 0.15  # below 1/(2 sqrt(2))
    g = random_regular(d, n, np.random.default_rng(0))
    sys_ = constant_competition(g, tau)
    rng = np.random.default_rng(1)
    traj = integrate(sys_, rng.uniform(0.0, 2.0, n), 500.0)
    assert traj.converged
    assert np.max(np.abs(traj.final_state - 1 / (tau * d + 1))) < 1e-6


def test_star_past_transcritical_reaches_boundary_equilibrium():
    sys_ = constant_competition(star(4), 0.5)
    traj = integrate(sys_, np.full(4, 0.8), 500.0, rtol=1e-10, atol=1e-12)
    assert traj.converged
    assert traj.final_state[0] <= 1e-9
    assert np.max(np.abs(traj.final_state[1:] - 1.0)) < 1e-8


def test_forward_invariance_and_extinction_faces():
    sys_ = constant_competition(star(4), 0.5)
    traj = integrate(sys_, np.array([0.0, 1.5, 0.2, 0.7]), 100.0)
    assert (traj.states >= 0.0).all()
    assert (traj.states[:, 0] == 0.0).all()  # faces are invariant exactly


def test_convergence_order_on_logistic():
    # huge rtol turns the controller into fixed stepping at max_step;
    # halving the step should cut the error by about 2^5
    exact = 1.0 / (1.0 + (1 - 0.01) / 0.01 * math.exp(-5.0))
    errs = []
    for h in (0.2, 0.1):
        traj = integrate(
            logistic(), np.array([0.01]), 5.0, rtol=1e9, atol=1e-12, max_step=h
        )
        errs.append(abs(traj.final_state[0] - exact))
    ratio = errs[0] / errs[1]
    assert 16 < ratio < 64


def test_tolerance_monotonicity():
    exact = 1.0 / (1.0 + (1 - 0.01) / 0.01 * math.exp(-5.0))
    errs = []
    for rtol in (1e-5, 1e-7, 1e-9):
        traj = integrate(logistic(), np.array([0.01]), 5.0, rtol=rtol, atol=1e-12)
        errs.append(abs(traj.final_state[0] - exact))
    assert errs[0] > errs[2]


def test_integrate_validation():
    with pytest.raises(ValueError):
        integrate(logistic(), np.array([-0.1]), 1.0)
    with pytest.raises(ValueError):
        integrate(logistic(), np.array([1.0]), -1.0)
    with pytest.raises(ValueError):
        integrate(logistic(), np.array([1.0, 2.0]), 1.0)


def test_verify_global_stability_contract():
    # decoupled logistics: every start converges
    sys_ = constant_competition(cycle(3), 0.0)
    assert verify_global_stability(sys_, 10, np.random.default_rng(0)) == 1.0
    # triangle below its bound
    sys_ = constant_competition(cycle(3), 0.2)
    assert verify_global_stability(sys_, 50, np.random.default_rng(1)) == 1.0
    # K_{2,2} close to but below the pitchfork
    sys_ = constant_competition(complete_bipartite(2, 2), 0.45)
    assert verify_global_stability(sys_, 50, np.random.default_rng(2)) == 1.0


def test_verify_global_stability_requires_stable_feasible():
    sys_ = constant_competition(star(4), 0.5)  # infeasible interior
    with pytest.raises(ValueError):
        verify_global_stability(sys_, 5, np.random.default_rng(0))


def test_trial_rngs_are_order_independent():
    sys_ = constant_competition(cycle(3), 0.2)
    a = verify_global_stability(sys_, 7, np.random.default_rng(3))
    b = verify_global_stability(sys_, 7, np.random.default_rng(3))
    assert a == b == 1.0
