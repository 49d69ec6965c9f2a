"""Locating and classifying the first coexistence bifurcation of a graph.

Under constant competition M = -tau A - I the coexistence state can break
down along two pathways as tau grows: a component of x*(tau) reaches zero
(transcritical, continuous decline) or the interior state loses definiteness
while still positive (pitchfork, abrupt). tau_c is whichever comes first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import UndirectedGraph
from .spectra import eig_symmetric

__all__ = [
    "KIND_TRANSCRITICAL",
    "KIND_PITCHFORK",
    "BifurcationReport",
    "BranchSample",
    "Fig2Pair",
    "tau_pitch",
    "tau_trans",
    "classify",
    "branch",
    "find_fig2_pair",
]

KIND_TRANSCRITICAL = "Transcritical"
KIND_PITCHFORK = "Pitchfork"


@dataclass(frozen=True)
class BifurcationReport:
    """First bifurcation of x*(tau): location, flavour, and the lost vertex."""

    tau_trans: float | None
    tau_pitch: float
    tau_c: float
    kind: str
    vanishing_vertex: int | None


@dataclass(frozen=True)
class BranchSample:
    """One point of the x*(tau) branch for bifurcation diagrams."""

    tau: float
    x_star: np.ndarray
    feasible: bool
    stable: bool


@dataclass(frozen=True)
class Fig2Pair:
    """Two graphs differing by one edge whose bifurcation kinds differ."""

    graph: UndirectedGraph
    reduced: UndirectedGraph
    removed_edge: tuple[int, int]
    graph_report: BifurcationReport
    reduced_report: BifurcationReport


class _EquilibriumCurve:
    """x*(tau) for M = -tau A - I via one eigendecomposition of A.

    (tau A + I) x = 1 gives x(tau) = Q diag(1/(tau w + 1)) Q^T 1, so each
    evaluation is O(n^2) instead of a fresh O(n^3) solve.
    """

    def __init__(self, graph: UndirectedGraph):
        w, q = np.linalg.eigh(graph.adjacency)
        self.w = w
        self.q = q
        self.c = q.T @ np.ones(graph.n)

    def __call__(self, tau: float) -> np.ndarray:
        return self.q @ (self.c / (tau * self.w + 1.0))

    def min_component(self, tau: float) -> float:
        return float(self(tau).min())


def tau_pitch(graph: UndirectedGraph) -> float:
    """Interaction strength where -tau A - I stops being negative definite.

    Equals 1/|lambda_min(A)|; +inf for an edgeless graph (M = -I forever).
    """
    if graph.num_edges == 0:
        return math.inf
    lam_min = eig_symmetric(graph.adjacency).lambda_min
    if lam_min >= 0:
        raise RuntimeError("adjacency of a graph with edges must have a negative eigenvalue")
    return -1.0 / lam_min


def _tau_trans_search(
    graph: UndirectedGraph,
    scan_step: float | None,
    tol: float,
    max_iter: int = 200,
) -> tuple[float, int] | None:
    tp = tau_pitch(graph)
    if not math.isfinite(tp):
        return None
    if scan_step is None:
        scan_step = 1e-3 * tp
    if scan_step <= 0 or tol <= 0:
        raise ValueError("scan_step and tol must be positive")
    curve = _EquilibriumCurve(graph)

    # Scan for the first sign bracket of the minimum component.
    hi_end = tp * (1.0 - 1e-9)
    lo, m_lo = 0.0, 1.0
    bracket = None
    tau = scan_step
    while tau < hi_end:
        m = curve.min_component(tau)
        if m <= 0.0:
            bracket = (lo, tau)
            break
        lo, m_lo = tau, m
        tau += scan_step
    if bracket is None:
        m = curve.min_component(hi_end)
        if m <= 0.0:
            bracket = (lo, hi_end)
        else:
            return None

    lo, hi = bracket
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if curve.min_component(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    else:
        raise RuntimeError(f"transcritical bisection did not reach tol={tol}")
    vertex = int(np.argmin(curve(hi)))
    return 0.5 * (lo + hi), vertex


def tau_trans(
    graph: UndirectedGraph,
    scan_step: float | None = None,
    tol: float = 1e-9,
) -> float | None:
    """Smallest tau below tau_pitch where a component of x*(tau) hits zero.

    Step-scan for a sign bracket of the minimum component, then bisection
    to ``tol``. None when the minimum component stays positive on the whole
    definite interval (regular graphs, for instance).
    """
    found = _tau_trans_search(graph, scan_step, tol)
    return None if found is None else found[0]


def classify(
    graph: UndirectedGraph,
    scan_step: float | None = None,
    tol: float = 1e-9,
) -> BifurcationReport:
    """Full first-bifurcation report for a connected graph."""
    if not graph.is_connected():
        raise ValueError("bifurcation classification needs a connected graph")
    tp = tau_pitch(graph)
    found = _tau_trans_search(graph, scan_step, tol)
    if found is not None:
        tt, vertex = found
        return BifurcationReport(
            tau_trans=tt,
            tau_pitch=tp,
            tau_c=min(tt, tp),
            kind=KIND_TRANSCRITICAL,
            vanishing_vertex=vertex,
        )
    return BifurcationReport(
        tau_trans=None,
        tau_pitch=tp,
        tau_c=tp,
        kind=KIND_PITCHFORK,
        vanishing_vertex=None,
    )


def branch(graph: UndirectedGraph, tau_grid) -> list[BranchSample]:
    """Equilibrium branch samples x*(tau) across a tau grid.

    Inside the definite interval the interior solve is reported. Once a
    component has vanished, continuation restricts to the surviving
    species (boundary branch) as long as the restricted system stays
    positive definite; otherwise samples are marked unstable with no state.
    """
    taus = np.asarray(tau_grid, dtype=float)
    if (taus < 0).any():
        raise ValueError("tau grid must be non-negative")
    tp = tau_pitch(graph)
    if taus.size and taus.max() > 1.5 * tp:
        raise ValueError(f"tau grid extends far past the pitchfork value {tp:.6g}")
    a_full = graph.adjacency
    n = graph.n
    survivors = np.ones(n, dtype=bool)
    samples = []
    for tau in np.sort(taus):
        x, ok = _boundary_state(a_full, survivors, tau)
        while ok and (x[survivors] <= 0.0).any():
            alive = np.where(survivors)[0]
            drop = alive[x[alive] <= 0.0]
            survivors = survivors.copy()
            survivors[drop] = False
            x, ok = _boundary_state(a_full, survivors, tau)
        if not ok:
            samples.append(
                BranchSample(float(tau), np.full(n, np.nan), feasible=False, stable=False)
            )
            continue
        feasible = bool(survivors.all() and x.min() > 0.0)
        samples.append(BranchSample(float(tau), x, feasible=feasible, stable=True))
    return samples


def _boundary_state(a_full: np.ndarray, survivors: np.ndarray, tau: float):
    """Interior solve on the surviving subgraph, zeros elsewhere."""
    idx = np.where(survivors)[0]
    if idx.size == 0:
        return np.zeros(a_full.shape[0]), True
    a_sub = a_full[np.ix_(idx, idx)]
    m_sub = tau * a_sub + np.eye(idx.size)
    try:
        x_sub = np.linalg.solve(m_sub, np.ones(idx.size))
    except np.linalg.LinAlgError:
        return np.zeros(a_full.shape[0]), False
    w_min = float(np.linalg.eigvalsh(m_sub)[0])
    if w_min <= 0.0:
        return np.zeros(a_full.shape[0]), False
    x = np.zeros(a_full.shape[0])
    x[idx] = x_sub
    return x, True


def find_fig2_pair(
    n: int,
    rng: np.random.Generator,
    edge_probability: float = 0.35,
    max_graphs: int = 2000,
) -> Fig2Pair:
    """Search for a graph pair (G, G - e) with different bifurcation kinds.

    Random connected graphs are sampled and each single-edge deletion that
    keeps the graph connected is classified; the first kind flip wins.
    Deterministic given the rng state.
    """
    if n < 4:
        raise ValueError("need at least 4 vertices")
    for _ in range(max_graphs):
        mask = rng.random((n, n)) < edge_probability
        edges = tuple(
            (i, j) for i in range(n) for j in range(i + 1, n) if mask[i, j]
        )
        if not edges:
            continue
        g = UndirectedGraph(n, edges)
        if g.d_min < 1 or not g.is_connected():
            continue
        report = classify(g)
        for e in g.edges:
            h = g.without_edge(*e)
            if h.d_min < 1 or not h.is_connected():
                continue
            h_report = classify(h)
            if h_report.kind != report.kind:
                return Fig2Pair(
                    graph=g,
                    reduced=h,
                    removed_edge=e,
                    graph_report=report,
                    reduced_report=h_report,
                )
    raise RuntimeError(f"no differing-kind pair found within {max_graphs} sampled graphs")
