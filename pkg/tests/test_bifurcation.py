"""Bifurcation location, classification, branches, and the edge-removal pair."""

import math

import numpy as np
import pytest

from glvnet.bifurcation import (
    KIND_PITCHFORK,
    KIND_TRANSCRITICAL,
    branch,
    classify,
    find_fig2_pair,
    tau_pitch,
    tau_trans,
)
from glvnet.bounds import Case1Params, omega_case1
from glvnet.glv import constant_competition, equilibrium
from glvnet.graphs import (
    UndirectedGraph,
    complete_bipartite,
    configuration_model,
    cycle,
    random_regular,
    sample_binomial_degrees,
    star,
)


def test_tau_pitch_values():
    for k in (3, 4, 10, 50):
        assert tau_pitch(star(k)) == pytest.approx((k - 1) ** -0.5, abs=1e-12)
    assert tau_pitch(complete_bipartite(2, 2)) == pytest.approx(0.5, abs=1e-12)
    assert tau_pitch(UndirectedGraph(2, ((0, 1),))) == pytest.approx(1.0, abs=1e-12)
    assert tau_pitch(UndirectedGraph(3, ())) == math.inf


def test_tau_trans_values():
    assert tau_trans(complete_bipartite(1, 2)) == pytest.approx(0.5, abs=1e-8)
    assert tau_trans(star(4)) == pytest.approx(1 / 3, abs=1e-8)
    for d, n in ((2, 6), (3, 8)):
        assert tau_trans(random_regular(d, n, np.random.default_rng(d))) is None


def test_classify_reports():
    rep = classify(complete_bipartite(2, 2))
    assert rep.kind == KIND_PITCHFORK and rep.tau_trans is None
    assert rep.tau_c == rep.tau_pitch == pytest.approx(0.5, abs=1e-12)
    assert rep.vanishing_vertex is None

    rep = classify(star(4))
    assert rep.kind == KIND_TRANSCRITICAL
    assert rep.tau_trans == pytest.approx(1 / 3, abs=1e-8)
    assert rep.tau_pitch == pytest.approx(3**-0.5, abs=1e-12)
    assert rep.tau_c == rep.tau_trans
    assert rep.vanishing_vertex == 0

    rep = classify(UndirectedGraph(2, ((0, 1),)))
    assert rep.kind == KIND_PITCHFORK and rep.tau_c == pytest.approx(1.0)

    with pytest.raises(ValueError):
        classify(UndirectedGraph(4, ((0, 1), (2, 3))))


def test_feasibility_flips_across_tau_trans():
    g = star(4)
    tt = tau_trans(g, tol=1e-12)
    eps = 1e-6
    assert equilibrium(constant_competition(g, tt - eps)).feasible
    assert not equilibrium(constant_competition(g, tt + eps)).feasible
    # residual of the bisection: |min component| small at tau_trans
    rep = equilibrium(constant_competition(g, tt))
    assert abs(rep.min_component) < 1e-8


def test_classify_invariant_under_relabeling():
    rng = np.random.default_rng(0)
    g = star(5)
    base = classify(g)
    for _ in range(5):
        perm = rng.permutation(g.n)
        h = UndirectedGraph(g.n, tuple((int(perm[u]), int(perm[v])) for u, v in g.edges))
        rep = classify(h)
        assert rep.kind == base.kind
        assert rep.tau_pitch == pytest.approx(base.tau_pitch, abs=1e-12)
        assert rep.tau_trans == pytest.approx(base.tau_trans, abs=1e-8)
        assert rep.vanishing_vertex == int(perm[base.vanishing_vertex])


def test_tightness_on_balanced_complete_bipartite():
    for n in range(2, 11):
        rep = classify(complete_bipartite(n, n))
        bound = omega_case1(Case1Params(n, n))
        assert rep.tau_c == pytest.approx(1.0 / n, abs=1e-9)
        assert rep.tau_c == pytest.approx(bound.omega, abs=1e-9)


def test_interlacing_bound_on_triangle_free_graphs():
    cases = [star(6), star(12), cycle(8), cycle(9), complete_bipartite(3, 5), complete_bipartite(2, 7)]
    for g in cases:
        assert tau_pitch(g) <= (g.d_max - 1) ** -0.5 + 1e-12


def test_tau_c_above_bound_on_sampled_ensemble():
    rng = np.random.default_rng(42)
    for _ in range(15):
        deg = sample_binomial_degrees(30, 8, 0.35, rng)
        g = configuration_model(deg, rng)
        rep = classify(g)
        bound = omega_case1(Case1Params(g.d_min, g.d_max))
        assert rep.tau_c >= bound.omega


def test_branch_regular_and_bipartite_values():
    g = random_regular(3, 8, np.random.default_rng(1))
    samples = branch(g, [0.1, 0.2])
    for s, tau in zip(samples, (0.1, 0.2)):
        assert np.allclose(s.x_star, 1 / (1 + tau * 3), atol=1e-12)
        assert s.feasible and s.stable
    s = branch(complete_bipartite(1, 2), [0.49])[0]
    assert min(s.x_star) == pytest.approx(0.02 / 0.5198, abs=1e-9)
    assert s.feasible
    s = branch(cycle(4), [0.0])[0]
    assert np.array_equal(s.x_star, np.ones(4)) and s.feasible and s.stable


def test_branch_boundary_continuation_and_pitchfork_cutoff():
    g = star(4)
    taus = [0.2, 0.4, 0.5]  # past tau_trans = 1/3, below tau_pitch = 0.577
    samples = branch(g, taus)
    assert samples[0].feasible
    for s in samples[1:]:
        assert not s.feasible and s.stable
        assert s.x_star[0] == 0.0
        assert np.allclose(s.x_star[1:], 1.0)
    # pitchfork graph: past tau_c nothing survives, samples are unstable
    g = complete_bipartite(2, 2)
    s = branch(g, [0.55])[0]
    assert not s.stable and not s.feasible
    with pytest.raises(ValueError):
        branch(g, [2.0])


def test_branch_matches_equilibrium_inside_definite_interval():
    g = star(5)
    taus = np.linspace(0.05, 0.2, 4)
    for s in branch(g, taus):
        rep = equilibrium(constant_competition(g, s.tau))
        assert np.allclose(s.x_star, rep.x_star, atol=1e-10)
        assert s.feasible == rep.feasible


def test_find_fig2_pair():
    pair = find_fig2_pair(8, np.random.default_rng(7))
    assert {pair.graph_report.kind, pair.reduced_report.kind} == {
        KIND_TRANSCRITICAL,
        KIND_PITCHFORK,
    }
    assert set(pair.reduced.edges) == set(pair.graph.edges) - {pair.removed_edge}
    again = find_fig2_pair(8, np.random.default_rng(7))
    assert again.graph == pair.graph and again.removed_edge == pair.removed_edge
    # removing a leaf edge of a star disconnects it; such pairs are invalid
    broken = star(4).without_edge(0, 3)
    assert not broken.is_connected()
    with pytest.raises(ValueError):
        classify(broken)
