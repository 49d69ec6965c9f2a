"""Time integration of the Lotka-Volterra equations and convergence checks.

Adaptive embedded Dormand-Prince 5(4) stepping with orthant protection:
steps that would push a component below -atol are rejected, and accepted
components with magnitude below atol are clipped to exact zero, so
extinction faces are absorbing in the computed trajectories exactly as
they are in the flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .glv import InteractionSystem, equilibrium

__all__ = [
    "Trajectory",
    "StepSizeUnderflowError",
    "GlobalStabilityError",
    "rhs",
    "integrate",
    "verify_global_stability",
]

# Dormand-Prince 5(4) tableau; the 5th-order solution is propagated.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_ERR = _B5 - _B4

_ORDER = 5
_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


class StepSizeUnderflowError(RuntimeError):
    """The controller drove the step below resolution; carries the time."""

    def __init__(self, t: float):
        super().__init__(f"step size underflow at t = {t:.6g}")
        self.t = t


class GlobalStabilityError(RuntimeError):
    """Some trials never settled; carries their initial conditions."""

    def __init__(self, failures: list[np.ndarray]):
        super().__init__(
            f"{len(failures)} trial(s) did not converge; first initial condition: "
            f"{np.array2string(failures[0], precision=4)}"
        )
        self.failures = failures


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration states; times strictly increasing."""

    times: np.ndarray
    states: np.ndarray
    converged: bool

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def rhs(sys: InteractionSystem, x) -> np.ndarray:
    """Growth field x o (r + M x); zero on extinction faces."""
    x = np.asarray(x, dtype=float)
    if x.shape != (sys.n,):
        raise ValueError("state has the wrong length")
    if (x < 0).any():
        raise ValueError("state must be non-negative")
    return x * (sys.r + sys.M @ x)


def _initial_step(f0: np.ndarray, x0: np.ndarray, t_end: float, atol: float, rtol: float) -> float:
    scale = atol + rtol * np.abs(x0)
    d0 = float(np.max(np.abs(x0) / scale))
    d1 = float(np.max(np.abs(f0) / scale))
    if d0 < 1e-5 or d1 < 1e-5:
        h = 1e-6 * t_end
    else:
        h = 0.01 * d0 / d1
    return min(h, 0.1 * t_end)


def integrate(
    sys: InteractionSystem,
    x0,
    t_end: float,
    rtol: float = 1e-7,
    atol: float = 1e-9,
    max_step: float = math.inf,
    max_steps: int = 1_000_000,
) -> Trajectory:
    """Integrate dx/dt = x o (r + M x) from x0 over [0, t_end].

    Stops early with converged=True once the growth field satisfies
    ||rhs||_inf < 10 * atol, a step-schedule-independent rest test.
    """
    x0 = np.asarray(x0, dtype=float).copy()
    if x0.shape != (sys.n,):
        raise ValueError("x0 has the wrong length")
    if (x0 < 0).any():
        raise ValueError("x0 must be non-negative")
    if rtol <= 0 or atol <= 0 or t_end <= 0:
        raise ValueError("t_end, rtol and atol must be positive")

    r, m = sys.r, sys.M
    abs_rows = np.abs(m).sum(axis=1)

    def f(x):
        return x * (r + m @ x)

    def stability_cap(x):
        # Row-sum bound on the Jacobian diag(r + Mx) + diag(x) M. Keeping
        # h * L inside the explicit stability interval makes the stepper
        # contractive near equilibria instead of hovering at the boundary,
        # so the rest test below is actually reachable.
        lips = float(np.max(np.abs(r + m @ x) + x * abs_rows))
        return math.inf if lips == 0.0 else 2.8 / lips

    settle = 10.0 * atol
    x0[np.abs(x0) < atol] = 0.0
    t = 0.0
    x = x0
    times = [0.0]
    states = [x0.copy()]
    converged = bool(np.max(np.abs(f(x0))) < settle)

    h = min(_initial_step(f(x0), x0, t_end, atol, rtol), max_step) if not converged else 0.0
    k = np.zeros((7, sys.n))
    steps = 0
    while not converged and t < t_end:
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f"exceeded {max_steps} steps at t = {t:.6g}")
        h = min(h, t_end - t, max_step, stability_cap(x))
        if h < 1e-14 * max(1.0, abs(t)):
            raise StepSizeUnderflowError(t)

        k[0] = f(x)
        for i in range(1, 7):
            k[i] = f(x + h * (_A[i] @ k[:i]))
        x_new = x + h * (_B5 @ k)
        err_vec = h * (_ERR @ k)
        scale = atol + rtol * np.maximum(np.abs(x), np.abs(x_new))
        err = float(np.max(np.abs(err_vec) / scale))

        if err > 1.0 or x_new.min() < -atol:
            # rejected: either local error too large or the step left the orthant
            factor = _MIN_FACTOR if x_new.min() < -atol else max(
                _MIN_FACTOR, _SAFETY * err ** (-1.0 / _ORDER)
            )
            h *= min(factor, 1.0)
            continue

        x_new[np.abs(x_new) <= atol] = 0.0
        assert x_new.min() >= 0.0
        t += h
        x = x_new
        times.append(t)
        states.append(x.copy())
        if float(np.max(np.abs(f(x)))) < settle:
            converged = True
            break
        factor = _MAX_FACTOR if err == 0.0 else min(
            _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** (-1.0 / _ORDER))
        )
        h *= factor

    return Trajectory(np.array(times), np.array(states), converged)


def verify_global_stability(
    sys: InteractionSystem,
    trials: int,
    rng: np.random.Generator,
    t_end: float = 1e4,
    tol: float = 1e-5,
    x0_range: tuple[float, float] = (1e-3, 10.0),
    rtol: float = 1e-8,
    atol: float = 1e-10,
) -> float:
    """Fraction of random starts that reach the interior equilibrium.

    Requires a feasible, negative-definite system (where convergence of
    every positive start is guaranteed, so the expected return is 1.0).
    Starts are log-uniform per component over x0_range. Trials whose
    integration never settles raise GlobalStabilityError listing their
    initial conditions; trials that settle elsewhere only lower the
    returned fraction.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    eq = equilibrium(sys)
    if not (eq.feasible and eq.stable):
        raise ValueError("global-stability check needs a feasible, stable system")
    lo, hi = np.log10(x0_range[0]), np.log10(x0_range[1])
    seeds = rng.integers(0, 2**63 - 1, size=trials)
    hits = 0
    failures = []
    for seed in seeds:
        trial_rng = np.random.default_rng(int(seed))
        x0 = 10.0 ** trial_rng.uniform(lo, hi, size=sys.n)
        traj = integrate(sys, x0, t_end, rtol=rtol, atol=atol)
        close = float(np.max(np.abs(traj.final_state - eq.x_star))) < tol
        if close:
            hits += 1
        elif not traj.converged:
            failures.append(x0)
    if failures:
        raise GlobalStabilityError(failures)
    return hits / trials
