"""Time integration of the cycle system and empirical stability checks.

Stability of an equilibrium ``u*`` is probed the way the comparison
argument works: start from the uniformly shifted states ``u* + delta`` and
``u* - delta`` and see whether both flow back to ``u*``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibria import DEFAULT_POLICY, Parameters, StepPolicy, solve_word, vector_field
from .errors import NonfiniteState, StepTooLarge, UsageError

DEFAULT_T_END = 200.0
DEFAULT_TOL = 1e-6
# a trajectory leaving this max-norm ball around u* counts as departed
ESCAPE_RADIUS = 0.25
ORDER_SLACK = 1e-8


def max_stable_dt(params: Parameters) -> float:
    """Conservative step bound for explicit RK4 on this system."""
    return 0.25 / (params.a * (1.0 - params.a) + 4.0 * params.d + 1.0)


def default_dt(params: Parameters) -> float:
    return 0.9 * max_stable_dt(params)


@dataclass
class Trajectory:
    params: Parameters
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def rk4_step(u, dt, params):
    k1 = vector_field(u, params)
    k2 = vector_field(u + 0.5 * dt * k1, params)
    k3 = vector_field(u + 0.5 * dt * k2, params)
    k4 = vector_field(u + dt * k3, params)
    return u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(u0, params: Parameters, t_end: float, dt: float = None, store_stride: int = 1,
              check_step: bool = True) -> Trajectory:
    """Classical RK4 with fixed step ``dt`` up to ``t_end``.

    ``dt`` defaults to 0.9 of :func:`max_stable_dt`.
    The number of steps is ``ceil(t_end / dt)`` (to rounding), so the final
    time may overshoot ``t_end`` by less than one step.  Every
    ``store_stride``-th state is kept, plus the final one.
    """
    if dt is None:
        dt = default_dt(params)
    if not dt > 0 or not t_end >= dt:
        raise UsageError(f"need dt > 0 and t_end >= dt, got dt={dt}, t_end={t_end}")
    if store_stride < 1:
        raise UsageError("store_stride must be >= 1")
    if check_step and dt > max_stable_dt(params):
        raise StepTooLarge(f"dt={dt} exceeds the explicit stability bound {max_stable_dt(params):.4g}")
    u = np.array(u0, dtype=float)
    if u.shape != (params.n,):
        raise UsageError(f"initial state of shape {u.shape} does not match n = {params.n}")

    steps = max(1, math.ceil(t_end / dt - 1e-9))
    times, states = [0.0], [u.copy()]
    for k in range(1, steps + 1):
        # overflow is reported below as NonfiniteState
        with np.errstate(over="ignore", invalid="ignore"):
            u = rk4_step(u, dt, params)
        if not np.all(np.isfinite(u)):
            raise NonfiniteState(f"state blew up at t={k * dt:.6g}")
        if k % store_stride == 0 or k == steps:
            times.append(k * dt)
            states.append(u.copy())
    return Trajectory(params, np.array(times), np.array(states))


@dataclass
class StabilityCheck:
    word: tuple
    params: Parameters
    stable: bool
    # max-norm distance to u* at the end of the upper / lower trajectory
    final_upper: float
    final_lower: float
    max_excursion: float
    verdict: str  # "converged", "departed" or "inconclusive"

    def __bool__(self):
        return self.stable


def verify_asymptotic_stability(word, params: Parameters, delta: float = 0.02, t_end: float = DEFAULT_T_END,
                                tol: float = DEFAULT_TOL, dt: float = None,
                                policy: StepPolicy = DEFAULT_POLICY) -> StabilityCheck:
    """Sandwich test around the equilibrium of type ``word``.

    ``stable`` is true iff both shifted trajectories end within ``tol`` of
    ``u*``.  ``verdict`` is "departed" when a trajectory leaves the
    ``ESCAPE_RADIUS`` ball or ends farther than ``10 * delta`` away, and
    "inconclusive" otherwise; callers may retry with a longer ``t_end``.
    """
    if not delta > 0:
        raise UsageError("delta must be positive")
    eq = solve_word(word, params.a, params.d, policy)
    if eq.params.n != params.n:
        raise UsageError(f"word length {eq.params.n} does not match n = {params.n}")
    u_star = eq.state
    if dt is None:
        dt = default_dt(params)

    finals, excursion = [], 0.0
    for sign in (1.0, -1.0):
        traj = integrate(u_star + sign * delta, params, t_end, dt)
        dist = np.max(np.abs(traj.states - u_star), axis=1)
        excursion = max(excursion, float(dist.max()))
        finals.append(float(dist[-1]))

    stable = max(finals) <= tol
    if stable:
        verdict = "converged"
    elif excursion > ESCAPE_RADIUS or max(finals) > 10 * delta:
        verdict = "departed"
    else:
        verdict = "inconclusive"
    return StabilityCheck(eq.word, params, stable, finals[0], finals[1], excursion, verdict)


def monotonicity_check(u0_low, u0_high, params: Parameters, t_end: float, dt: float = None) -> bool:
    """True iff ``u_low(t) <= u_high(t) + 1e-8`` componentwise at every stored time."""
    low = np.asarray(u0_low, dtype=float)
    high = np.asarray(u0_high, dtype=float)
    if np.any(low > high):
        raise UsageError("initial states must be ordered componentwise")
    tl = integrate(low, params, t_end, dt)
    th = integrate(high, params, t_end, dt)
    return bool(np.all(tl.states <= th.states + ORDER_SLACK))
