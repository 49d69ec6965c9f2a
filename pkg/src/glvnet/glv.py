"""Competitive generalised Lotka-Volterra systems and their coexistence state.

The model is dx/dt = x o (r + M x) with Hadamard product o, growth rates
r > 0 and interaction matrix M = -T - diag(D): T holds the symmetric
non-negative competition weights (zero diagonal), D the positive
self-regulation. The coexistence candidate x* solves (T + diag(D)) x = r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graphs import UndirectedGraph
from .spectra import NotPositiveDefiniteError, eig_symmetric, is_negative_definite, solve_spd

__all__ = [
    "InteractionSystem",
    "EquilibriumReport",
    "PastPitchforkError",
    "NeumannDivergenceError",
    "constant_competition",
    "equilibrium",
    "jacobian_at",
    "equilibrium_neumann",
    "walk_bound_lower",
    "system_to_dict",
    "system_from_dict",
]


class PastPitchforkError(RuntimeError):
    """The interior equilibrium solve failed: M is no longer negative definite.

    Carries ``lambda_max`` (largest eigenvalue of M, >= 0 up to roundoff)
    as evidence, so callers can distinguish this from an infeasible but
    computable equilibrium on the transcritical side.
    """

    def __init__(self, lambda_max: float):
        super().__init__(
            f"interaction matrix is not negative definite (lambda_max = {lambda_max:.6g}); "
            "the system sits at or past its pitchfork threshold"
        )
        self.lambda_max = lambda_max


class NeumannDivergenceError(RuntimeError):
    """Neumann series terms grew instead of contracting (spectral radius >= 1)."""


@dataclass(frozen=True)
class InteractionSystem:
    """Immutable value object for one competitive community.

    r: positive growth rates, length n.
    T: symmetric non-negative interaction weights, zero diagonal.
    D: positive self-regulation, length n (the diagonal of diag(D)).
    """

    r: np.ndarray
    T: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float).copy()
        T = np.asarray(self.T, dtype=float).copy()
        D = np.asarray(self.D, dtype=float).copy()
        n = r.size
        if r.ndim != 1 or D.shape != (n,) or T.shape != (n, n):
            raise ValueError("shape mismatch between r, T and D")
        if (r <= 0).any():
            raise ValueError("growth rates must be strictly positive")
        if (D <= 0).any():
            raise ValueError("self-regulation must be strictly positive")
        if not np.array_equal(T, T.T):
            raise ValueError("T must be exactly symmetric")
        if (T < 0).any():
            raise ValueError("T must be non-negative")
        if np.diagonal(T).any():
            raise ValueError("T must have a zero diagonal (self-interaction lives in D)")
        for a in (r, T, D):
            a.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "D", D)

    @property
    def n(self) -> int:
        return self.r.size

    @cached_property
    def M(self) -> np.ndarray:
        m = -self.T - np.diag(self.D)
        m.setflags(write=False)
        return m

    @cached_property
    def row_sums(self) -> np.ndarray:
        s = self.T.sum(axis=1)
        s.setflags(write=False)
        return s

    @property
    def delta(self) -> float:
        """Largest interaction row sum, max_i sum_{j != i} T_ij."""
        return float(self.row_sums.max())

    @property
    def beta(self) -> float:
        """Smallest-to-largest row-sum ratio; 1 by convention when T = 0."""
        d = self.delta
        if d == 0.0:
            return 1.0
        return float(self.row_sums.min()) / d

    @property
    def r_min(self) -> float:
        return float(self.r.min())

    @property
    def r_max(self) -> float:
        return float(self.r.max())

    @property
    def D_min(self) -> float:
        return float(self.D.min())

    @property
    def D_max(self) -> float:
        return float(self.D.max())


@dataclass(frozen=True)
class EquilibriumReport:
    """Interior equilibrium candidate with its feasibility/stability flags."""

    x_star: np.ndarray
    feasible: bool
    stable: bool
    min_component: float


def system_to_dict(sys: InteractionSystem) -> dict:
    """JSON-ready form: dense r and D, upper-triangle triplets for T."""
    triplets = [
        [i, j, float(sys.T[i, j])]
        for i in range(sys.n)
        for j in range(i + 1, sys.n)
        if sys.T[i, j] != 0.0
    ]
    return {"r": sys.r.tolist(), "D": sys.D.tolist(), "T": triplets}


def system_from_dict(payload: dict) -> InteractionSystem:
    """Inverse of system_to_dict; triplets are mirrored onto both halves."""
    r = np.asarray(payload["r"], dtype=float)
    d = np.asarray(payload["D"], dtype=float)
    t = np.zeros((r.size, r.size))
    for entry in payload["T"]:
        i, j, w = int(entry[0]), int(entry[1]), float(entry[2])
        if not 0 <= i < r.size or not 0 <= j < r.size:
            raise ValueError(f"triplet ({i}, {j}) outside the system size {r.size}")
        t[i, j] = w
        t[j, i] = w
    return InteractionSystem(r=r, T=t, D=d)


def constant_competition(graph: UndirectedGraph, tau: float) -> InteractionSystem:
    """Uniform competition of strength tau along the edges of a graph.

    r = 1, T = tau * A, D = 1, so the row sums are tau * degree and the
    row-sum ratio equals the graph's degree ratio. tau = 0 is accepted and
    yields n decoupled logistic species.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    n = graph.n
    return InteractionSystem(
        r=np.ones(n),
        T=tau * graph.adjacency,
        D=np.ones(n),
    )


def equilibrium(sys: InteractionSystem) -> EquilibriumReport:
    """Solve (T + diag(D)) x* = r and report feasibility and stability.

    Raises PastPitchforkError when T + diag(D) is not positive definite;
    in that regime an interior solve would be meaningless and the caller
    needs the distinction from a merely infeasible x*.
    """
    try:
        x = solve_spd(sys.T + np.diag(sys.D), sys.r)
    except NotPositiveDefiniteError:
        raise PastPitchforkError(eig_symmetric(sys.M).lambda_max) from None
    m = float(x.min())
    return EquilibriumReport(
        x_star=x,
        feasible=m > 0.0,
        stable=is_negative_definite(sys.M),
        min_component=m,
    )


def jacobian_at(sys: InteractionSystem, x) -> np.ndarray:
    """Community Jacobian J_ij = x_i * M_ij at a strictly positive state.

    Not symmetric in general, but similar to a symmetric matrix through
    diag(sqrt(x)), so its spectrum is real.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (sys.n,):
        raise ValueError("state has the wrong length")
    if (x <= 0).any():
        raise ValueError("state must be strictly positive")
    return x[:, None] * sys.M


def equilibrium_neumann(sys: InteractionSystem, terms: int) -> np.ndarray:
    """Partial sum of the alternating series sum_i (-1)^i (D^-1 T)^i D^-1 r.

    Converges to the interior equilibrium when the spectral radius of
    D^-1 T is below 1 (guaranteed for delta < D_min). Serves as an
    independent cross-check of the direct linear solve.
    """
    if terms < 1:
        raise ValueError("need at least one series term")
    v = sys.r / sys.D
    first_norm = float(np.abs(v).max())
    total = v.copy()
    sign = -1.0
    for _ in range(1, terms):
        v = (sys.T @ v) / sys.D
        if float(np.abs(v).max()) > 10.0 * first_norm:
            raise NeumannDivergenceError(
                "series terms are growing; spectral radius of D^-1 T appears to be >= 1"
            )
        total += sign * v
        sign = -sign
    return total


def walk_bound_lower(graph: UndirectedGraph, tau: float, vertex: int | None = None) -> float:
    """Closed-form lower bound on every component of the equilibrium.

    Bounding the walk counts (A^i 1)_k through d_min and d_max and summing
    the resulting geometric series gives

        (1 - d_max t - d_max^2 t^2 + d_min^2 d_max t^3)
        / ((d_min^2 t^2 - 1)(d_max^2 t^2 - 1)),

    valid for tau * d_max < 1. The value is the same for every vertex; the
    optional ``vertex`` argument is only validated for interface parity.
    """
    if vertex is not None and not 0 <= vertex < graph.n:
        raise ValueError("vertex index out of range")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    deg = graph.degrees
    d_lo, d_hi = int(deg.min()), int(deg.max())
    if tau * d_hi >= 1.0:
        raise ValueError(
            f"bound valid only for tau < 1/d_max = {1.0 / d_hi if d_hi else np.inf:.6g}"
        )
    num = 1.0 - d_hi * tau - (d_hi * tau) ** 2 + d_lo**2 * d_hi * tau**3
    den = ((d_lo * tau) ** 2 - 1.0) * ((d_hi * tau) ** 2 - 1.0)
    return num / den
