"""Closed-form coexistence bounds for competitive interaction systems.

Both bounds are the smallest strictly positive root of a cubic whose sign
controls the transcritical transition:

* constant competition: P(t) = d_min^2 d_max t^3 - d_max^2 t^2 - d_max t + 1
  in the interaction strength t, with alpha = d_min/d_max;
* general competition: Q(s) = r_max b^2 s^3 - D_max r_min s^2
  - D_max^2 r_max s + D_max D_min^2 r_min in the row-sum strength s,
  with row-sum ratio b.

Each omega is evaluated two independent ways on every call: a
trigonometric closed form (Viete substitution, sin/arcsin branch) and
bracketed bisection. Disagreement beyond tolerance raises, which guards
the easy-to-misread parenthesisation of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LOWER_BOUND_COEFF",
    "Case1Params",
    "Case2Params",
    "CubicBoundResult",
    "MethodDisagreementError",
    "RampConvergenceError",
    "p_of_tau",
    "omega_case1",
    "omega_case2",
    "omega_regular",
    "regime_limits",
]

# Limit of the constant-competition bound (times d_max) as alpha -> 0:
# the positive root of -t^2 - t + 1.
LOWER_BOUND_COEFF = (math.sqrt(5.0) - 1.0) / 2.0

_AGREEMENT_ATOL = 1e-10


class MethodDisagreementError(RuntimeError):
    """Closed form and bisection disagree; one of them is being misread."""

    def __init__(self, closed: float, bisected: float):
        super().__init__(
            f"closed-form root {closed!r} and bisection root {bisected!r} disagree"
        )
        self.closed = closed
        self.bisected = bisected


class RampConvergenceError(RuntimeError):
    """An asymptotic-regime ramp did not settle."""


@dataclass(frozen=True)
class Case1Params:
    """Degree data for the constant-competition bound."""

    d_min: int
    d_max: int

    def __post_init__(self):
        if int(self.d_min) != self.d_min or int(self.d_max) != self.d_max:
            raise ValueError("degrees must be integers")
        if not 1 <= self.d_min <= self.d_max:
            raise ValueError("need 1 <= d_min <= d_max")

    @property
    def alpha(self) -> float:
        return self.d_min / self.d_max


@dataclass(frozen=True)
class Case2Params:
    """Extremal rates and row-sum ratio for the general bound."""

    D_min: float
    D_max: float
    r_min: float
    r_max: float
    beta: float

    def __post_init__(self):
        if not 0 < self.D_min <= self.D_max:
            raise ValueError("need 0 < D_min <= D_max")
        if not 0 < self.r_min <= self.r_max:
            raise ValueError("need 0 < r_min <= r_max")
        if not 0 < self.beta <= 1:
            raise ValueError("need 0 < beta <= 1")


@dataclass(frozen=True)
class CubicBoundResult:
    """Smallest strictly positive root of the defining cubic.

    theta is the published diagnostic angle argument (in [-1, 1]); roots
    holds all three real roots ascending; method_agreement is the raw
    absolute gap between the trigonometric closed form and bisection.
    """

    omega: float
    theta: float
    roots: tuple[float, float, float]
    method_agreement: float


def _cubic(coeffs):
    a, b, c, d = coeffs

    def f(x: float) -> float:
        return ((a * x + b) * x + c) * x + d

    return f


def _bisect_below(f, hi: float) -> float:
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _bisect_smallest_positive(coeffs, hi: float) -> float:
    """Bisection on (0, hi] where f(0) > 0 and f(hi) <= 0 up to roundoff.

    When the bracket end is itself a root (degenerate regular corners),
    probe just inside it: a sign change there means an interior root
    precedes it, otherwise hi is a touching double root and is the answer.
    """
    a, b, c, d = coeffs
    f = _cubic(coeffs)
    f_hi = f(hi)
    scale = abs(a) * hi**3 + abs(b) * hi**2 + abs(c) * hi + abs(d)
    if abs(f_hi) <= 1e-12 * scale:
        # Probes must clear the evaluation noise floor (~1e-16 * scale),
        # otherwise a touching double root looks like a sign change.
        for eps in (1e-13, 1e-11, 1e-9, 1e-7, 1e-5, 1e-3, 1e-1):
            probe = hi * (1.0 - eps)
            if f(probe) < -1e-14 * scale:
                return _bisect_below(f, probe)
        return hi
    if f_hi > 0.0:
        raise RuntimeError(
            f"no sign change on (0, {hi}]: f({hi}) = {f_hi}; cubic coefficients {coeffs}"
        )
    return _bisect_below(f, hi)


def _polish(x: float, coeffs) -> float:
    """Up to two guarded Newton steps to pin the root to machine precision."""
    a, b, c, d = coeffs
    f = _cubic(coeffs)
    for _ in range(2):
        fp = (3.0 * a * x + 2.0 * b) * x + c
        if fp == 0.0 or not math.isfinite(fp):
            break
        step = f(x) / fp
        if not math.isfinite(step) or abs(step) > 1e-6 * (abs(x) + 1e-300):
            break
        x -= step
    return x


def _trig_root_family(shift: float, m: float, theta_arg: float):
    """All three real roots shift - 2m sin(psi_k), sin(3 psi_k) = theta_arg."""
    psi = math.asin(min(1.0, max(-1.0, theta_arg))) / 3.0
    third = 2.0 * math.pi / 3.0
    return tuple(shift - 2.0 * m * math.sin(psi + k * third) for k in (0, 1, -1))


def p_of_tau(params: Case1Params, tau):
    """The constant-competition cubic, exact polynomial evaluation."""
    tau = np.asarray(tau, dtype=float)
    a = float(params.d_min**2 * params.d_max)
    b = -float(params.d_max**2)
    c = -float(params.d_max)
    val = ((a * tau + b) * tau + c) * tau + 1.0
    return float(val) if val.ndim == 0 else val


def _validated_result(
    trig_omega: float,
    coeffs,
    hi: float,
    theta_published: float,
    shift: float,
    m: float,
    theta_arg: float,
    agreement_scale: float,
) -> CubicBoundResult:
    bisected = _bisect_smallest_positive(coeffs, hi)
    gap = abs(trig_omega - bisected)
    # Two unavoidable float effects widen the guard: the subtraction
    # shift - 2m sin(...) cannot be resolved below ulp(shift), and the
    # arcsin derivative amplifies rounding in theta by 1/sqrt(1-theta^2).
    # Both are tiny against the O(omega)-sized errors the guard exists to
    # catch, so it is capped to stay meaningful at the degenerate corners.
    amplification = 2.0 * m * 1e-15 / (3.0 * max(math.sqrt(max(0.0, 1.0 - theta_arg**2)), 1e-12))
    tolerance = _AGREEMENT_ATOL + 1e-13 * agreement_scale + min(
        amplification, 1e-3 * abs(trig_omega)
    )
    if gap > tolerance:
        raise MethodDisagreementError(trig_omega, bisected)
    if abs(theta_published) > 1.0 + 1e-9:
        raise RuntimeError(f"published theta {theta_published} escaped [-1, 1]")
    theta_published = min(1.0, max(-1.0, theta_published))
    roots = tuple(sorted(_trig_root_family(shift, m, theta_arg)))
    return CubicBoundResult(
        omega=_polish(trig_omega, coeffs),
        theta=theta_published,
        roots=roots,
        method_agreement=gap,
    )


def omega_case1(params: Case1Params) -> CubicBoundResult:
    """Coexistence bound for constant competition on a graph.

    Smallest strictly positive root of P, via the closed form

        omega = (1 - 2 sqrt(1 + 3 a^2) sin(arcsin(theta) / 3)) / (3 a^2 d_max),
        theta = (2 + 9 a^2 - 27 a^4) / (2 (1 + 3 a^2)^(3/2)),

    cross-checked against bisection on (0, 1/d_max]. Always at least
    (sqrt(5) - 1) / (2 d_max), with the maximum 1/d_max reached for
    regular degree sequences (a = 1).
    """
    a = params.alpha
    d_max = params.d_max
    a2 = a * a
    s = 1.0 + 3.0 * a2
    theta = (2.0 + 9.0 * a2 - 27.0 * a2 * a2) / (2.0 * s**1.5)
    psi = math.asin(min(1.0, max(-1.0, theta))) / 3.0
    omega = (1.0 - 2.0 * math.sqrt(s) * math.sin(psi)) / (3.0 * a2 * d_max)

    coeffs = (
        float(params.d_min**2 * params.d_max),
        -float(params.d_max**2),
        -float(params.d_max),
        1.0,
    )
    shift = 1.0 / (3.0 * a2 * d_max)
    m = math.sqrt(s) / (3.0 * a2 * d_max)
    result = _validated_result(
        omega, coeffs, 1.0 / d_max, theta, shift, m, theta, agreement_scale=shift
    )
    floor = LOWER_BOUND_COEFF / d_max
    if result.omega < floor * (1.0 - 1e-12):
        raise RuntimeError(f"omega {result.omega} fell below its floor {floor}")
    return result


def omega_case2(params: Case2Params) -> CubicBoundResult:
    """Coexistence bound on the interaction row-sum strength, general rates.

    Smallest strictly positive root of Q, computed from the exact Viete
    substitution for this cubic,

        omega = s - 2 m sin(arcsin(g) / 3),
        s = D_max r_min / (3 r_max b^2),
        m = D_max sqrt(3 b^2 r_max^2 + r_min^2) / (3 r_max b^2),
        g = r_min (2 D_max^2 r_min^2 + 9 b^2 r_max^2 (D_max^2 - 3 b^2 D_min^2))
            / (2 D_max^2 (3 b^2 r_max^2 + r_min^2)^(3/2)),

    cross-checked against bisection on (0, D_min]. The reported theta is
    the published diagnostic angle (the asymptotic-regime quantity, which
    reduces to the constant-competition theta for unit rates); it differs
    from the internal arcsin argument g away from unit rates. The root
    never exceeds D_min, the threshold below which every Gershgorin disk
    of the interaction matrix stays in the left half-plane.
    """
    Dmin, Dmax = params.D_min, params.D_max
    rmin, rmax = params.r_min, params.r_max
    b2 = params.beta * params.beta

    shift = Dmax * rmin / (3.0 * rmax * b2)
    radical = 3.0 * b2 * rmax * rmax + rmin * rmin
    m = Dmax * math.sqrt(radical) / (3.0 * rmax * b2)
    g = (
        rmin
        * (2.0 * Dmax**2 * rmin**2 + 9.0 * b2 * rmax**2 * (Dmax**2 - 3.0 * b2 * Dmin**2))
        / (2.0 * Dmax**2 * radical**1.5)
    )
    psi = math.asin(min(1.0, max(-1.0, g))) / 3.0
    omega = shift - 2.0 * m * math.sin(psi)

    theta_published = (
        math.sqrt(rmax / Dmax)
        * (2.0 * Dmax**5 * rmax + 9.0 * b2 * rmin * (Dmax**2 - 3.0 * b2 * Dmin**2))
        / (2.0 * (Dmax**3 * rmax + 3.0 * b2 * rmin) ** 1.5)
    )

    coeffs = (
        rmax * b2,
        -Dmax * rmin,
        -Dmax * Dmax * rmax,
        Dmax * Dmin * Dmin * rmin,
    )
    result = _validated_result(
        omega, coeffs, Dmin, theta_published, shift, m, g, agreement_scale=shift
    )
    if result.omega > Dmin * (1.0 + 1e-9):
        raise RuntimeError(
            f"omega {result.omega} exceeded the pitchfork threshold D_min = {Dmin}"
        )
    return result


def omega_regular(d: int) -> float:
    """Ensemble coexistence bound 1 / (2 sqrt(d - 1)) for random d-regular graphs.

    Almost-sure over the regular ensemble (via the extremal adjacency
    eigenvalue), not a per-graph guarantee.
    """
    if int(d) != d or d < 2:
        raise ValueError("need an integer degree d >= 2")
    return 1.0 / (2.0 * math.sqrt(d - 1.0))


def regime_limits(
    params: Case2Params,
    regime: str,
    decades: float = 6.0,
    steps: int = 12,
) -> tuple[float, float]:
    """(theta, omega) limits along a geometric ramp of one regime parameter.

    Supported regimes: "large_D_max", "large_r_max", "small_r_min". Each
    drives the bound to collapse, (theta, omega) -> (1, 0). Returns the
    ramp-end values after checking that the increments are settling.
    """
    if steps < 3:
        raise ValueError("need at least 3 ramp steps")

    def ramped(factor: float) -> Case2Params:
        if regime == "large_D_max":
            return Case2Params(params.D_min, params.D_max * factor, params.r_min, params.r_max, params.beta)
        if regime == "large_r_max":
            return Case2Params(params.D_min, params.D_max, params.r_min, params.r_max * factor, params.beta)
        if regime == "small_r_min":
            return Case2Params(params.D_min, params.D_max, params.r_min / factor, params.r_max, params.beta)
        raise ValueError(f"unknown regime {regime!r}")

    thetas, omegas = [], []
    for exponent in np.linspace(decades / steps, decades, steps):
        res = omega_case2(ramped(10.0**exponent))
        thetas.append(res.theta)
        omegas.append(res.omega)
    d_theta = abs(thetas[-1] - thetas[-2])
    d_omega = abs(omegas[-1] - omegas[-2])
    prev_theta = abs(thetas[-2] - thetas[-3])
    prev_omega = abs(omegas[-2] - omegas[-3])
    if d_theta > max(prev_theta, 1e-3) or d_omega > max(prev_omega, 1e-3):
        raise RampConvergenceError(
            f"{regime} ramp not settling: last theta/omega increments "
            f"{d_theta:.3g}/{d_omega:.3g}"
        )
    return thetas[-1], omegas[-1]
