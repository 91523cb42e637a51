"""Stationary states of the Nagumo system on the cycle graph C_n.

The vector field is ``G(u)_i = d (u_{i-1} - 2 u_i + u_{i+1}) + g(u_i; a)``
with cyclic neighbours.  Taking neighbours by cyclic shift reproduces the
small-cycle conventions automatically: for n = 2 both neighbours are the
other vertex (coupling ``2d (u_j - u_i)``), for n = 1 the coupling vanishes.

Branches are followed from the lattice point ``w_a`` at ``d = 0`` by natural
parameter continuation in ``d`` with a damped Newton corrector, and stop at
the first loss of invertibility of the Jacobian.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx
import numpy as np
import scipy.linalg

from . import lexicon
from .errors import (
    BadParams,
    DimensionMismatch,
    EigenFailure,
    NoConvergence,
    ParamMismatch,
    SingularJacobian,
)
from .lexicon import Alphabet, Symmetry, format_word

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
MIN_DAMPING = 2.0 ** -20
MAX_CONDITION = 1e12
STABILITY_MARGIN = 1e-9
SEPARATION_TOL = 1e-6
ORDER_TOL = 1e-10


@dataclass(frozen=True)
class Parameters:
    a: float
    d: float
    n: int

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise BadParams(f"detuning a must lie in (0, 1), got {self.a}")
        if not self.d >= 0.0:
            raise BadParams(f"diffusion d must be >= 0, got {self.d}")
        if int(self.n) != self.n or self.n < 1:
            raise BadParams(f"period n must be a positive integer, got {self.n}")


class Stability(enum.Enum):
    STABLE = "STABLE"
    UNSTABLE = "UNSTABLE"
    MARGINAL = "MARGINAL"


class Order(enum.Enum):
    STRICTLY_BELOW = "STRICTLY_BELOW"
    STRICTLY_ABOVE = "STRICTLY_ABOVE"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


class BranchStatus(enum.Enum):
    REACHED_TARGET = "REACHED_TARGET"
    FOLD_DETECTED = "FOLD_DETECTED"
    STEP_UNDERFLOW = "STEP_UNDERFLOW"


def nonlinearity(u, a):
    """Cubic bistable term ``u (1 - u) (u - a)``."""
    return u * (1.0 - u) * (u - a)


def nonlinearity_prime(u, a):
    return -3.0 * u * u + 2.0 * (1.0 + a) * u - a


def _as_state(state, params: Parameters) -> np.ndarray:
    u = np.asarray(state, dtype=float)
    if u.ndim != 1 or u.shape[0] != params.n:
        raise DimensionMismatch(f"state of shape {u.shape} does not match n = {params.n}")
    return u


def vector_field(state, params: Parameters) -> np.ndarray:
    u = _as_state(state, params)
    left = np.concatenate((u[-1:], u[:-1]))
    right = np.concatenate((u[1:], u[:1]))
    coupling = left - 2.0 * u + right
    return params.d * coupling + nonlinearity(u, params.a)


def jacobian(state, params: Parameters) -> np.ndarray:
    """Symmetric Jacobian of :func:`vector_field`."""
    u = _as_state(state, params)
    n = params.n
    shift = np.roll(np.eye(n), 1, axis=1)
    jac = np.diag(nonlinearity_prime(u, params.a) - 2.0 * params.d)
    jac += params.d * (shift + shift.T)
    return jac


def residual_norm(state, params: Parameters) -> float:
    return float(np.max(np.abs(vector_field(state, params))))


@dataclass
class NewtonResult:
    state: np.ndarray
    residual: float
    iterations: int


def newton_solve(guess, params: Parameters, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER) -> NewtonResult:
    """Damped Newton iteration with LU solves and step halving.

    Raises SingularJacobian when the Jacobian condition number exceeds
    ``MAX_CONDITION`` and NoConvergence when the iteration or damping
    budget runs out.
    """
    u = _as_state(guess, params).copy()
    f = vector_field(u, params)
    res = float(np.max(np.abs(f)))
    for it in range(max_iter + 1):
        if not math.isfinite(res):
            raise NoConvergence(f"non-finite residual after {it} iterations")
        if res <= tol:
            return NewtonResult(u, res, it)
        if it == max_iter:
            break
        jac = jacobian(u, params)
        if np.linalg.cond(jac) > MAX_CONDITION:
            raise SingularJacobian(f"Jacobian condition number exceeds {MAX_CONDITION:g}")
        try:
            step = scipy.linalg.lu_solve(scipy.linalg.lu_factor(jac, check_finite=False), -f)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise SingularJacobian(str(exc)) from exc
        lam = 1.0
        while True:
            trial = u + lam * step
            f_trial = vector_field(trial, params)
            res_trial = float(np.max(np.abs(f_trial)))
            if res_trial < res or res_trial <= tol:
                break
            lam *= 0.5
            if lam < MIN_DAMPING:
                raise NoConvergence(f"damping fell below {MIN_DAMPING:g} at residual {res:.3e}")
        u, f, res = trial, f_trial, res_trial
    raise NoConvergence(f"residual {res:.3e} after {max_iter} iterations")


def spectrum(state, params: Parameters) -> np.ndarray:
    try:
        return scipy.linalg.eigh(jacobian(state, params), eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigenFailure(str(exc)) from exc


# -- continuation -----------------------------------------------------------


@dataclass(frozen=True)
class StepPolicy:
    initial_step: float = 1e-3
    min_step: float = 1e-10
    max_step: float = 0.05
    grow_after: int = 3
    # largest max-norm change of the state accepted in one step
    max_jump: float = 0.1
    # below NEWTON_TOL / SEPARATION_TOL a converged state is no longer resolved
    # to SEPARATION_TOL, so colliding branches cannot be told apart
    fold_tol: float = NEWTON_TOL / SEPARATION_TOL
    # smallest |eigenvalue| at the last point below which a step underflow counts as a fold
    fold_indicator: float = 1e-3


DEFAULT_POLICY = StepPolicy()


@dataclass
class BranchTrace:
    word: tuple
    a: float
    d_values: list
    states: list
    terminal_status: BranchStatus
    # smallest d at which a step was rejected after the last accepted point
    d_failed: Optional[float] = None
    sigma_min: float = math.nan

    @property
    def d_end(self) -> float:
        return self.d_values[-1]

    @property
    def state_end(self) -> np.ndarray:
        return self.states[-1]

    @property
    def points(self):
        return list(zip(self.d_values, self.states))

    @property
    def reached(self) -> bool:
        return self.terminal_status is BranchStatus.REACHED_TARGET


def _inertia(eigs) -> int:
    return int(np.count_nonzero(eigs > 0))


def _returns_to(state, previous, a, d, n) -> bool:
    # A step across a branch collision lands on another branch, which also
    # exists at the previous d: solving back from it then misses `previous`.
    try:
        back = newton_solve(state, Parameters(a, d, n))
    except (NoConvergence, SingularJacobian):
        return False
    return bool(np.max(np.abs(back.state - previous)) <= SEPARATION_TOL)


def continue_branch(word, a: float, d_target: float, policy: StepPolicy = DEFAULT_POLICY) -> BranchTrace:
    """Follow the branch of type ``word`` from ``d = 0`` towards ``d_target``.

    Predictor is the previous point, corrector :func:`newton_solve`.  A step
    is rejected when Newton fails, when the state jumps by more than
    ``policy.max_jump``, when solving back at the previous ``d`` does not
    return to the previous point, or when the number of positive Jacobian eigenvalues
    changes, since along a regular branch it cannot.  Rejections halve the
    step; three consecutive accepts double it.  Continuation stops with
    FOLD_DETECTED when the smallest |eigenvalue| drops below
    ``policy.fold_tol`` or when the step underflows next to a singular point,
    and with STEP_UNDERFLOW when it underflows for any other reason.
    """
    w = lexicon.word(word)
    if not 0.0 < a < 1.0:
        raise BadParams(f"detuning a must lie in (0, 1), got {a}")
    if not d_target > 0.0:
        raise BadParams(f"d_target must be > 0, got {d_target}")
    n = len(w)

    u = np.array(lexicon.roots(w, a))
    d = 0.0
    eigs = spectrum(u, Parameters(a, 0.0, n))
    inertia = _inertia(eigs)
    trace = BranchTrace(w, a, [0.0], [u.copy()], BranchStatus.REACHED_TARGET)
    trace.sigma_min = float(np.min(np.abs(eigs)))

    step = min(policy.initial_step, d_target)
    streak = 0
    singular_reject = False
    while d < d_target:
        d_next = d_target if d + step >= d_target * (1 - 1e-15) else d + step
        params = Parameters(a, d_next, n)
        accepted = False
        try:
            sol = newton_solve(u, params)
        except SingularJacobian:
            singular_reject = True
        except NoConvergence:
            pass
        else:
            if np.max(np.abs(sol.state - u)) <= policy.max_jump and _returns_to(sol.state, u, a, d, n):
                new_eigs = spectrum(sol.state, params)
                if _inertia(new_eigs) == inertia:
                    accepted = True
                else:
                    singular_reject = True

        if not accepted:
            trace.d_failed = d_next if trace.d_failed is None else min(trace.d_failed, d_next)
            streak = 0
            step *= 0.5
            if step < policy.min_step:
                near_singular = trace.sigma_min < policy.fold_indicator
                trace.terminal_status = (
                    BranchStatus.FOLD_DETECTED if (singular_reject or near_singular) else BranchStatus.STEP_UNDERFLOW
                )
                return trace
            continue

        d, u, eigs = d_next, sol.state, new_eigs
        trace.d_values.append(d)
        trace.states.append(u.copy())
        trace.d_failed = None
        singular_reject = False
        trace.sigma_min = float(np.min(np.abs(eigs)))
        if trace.sigma_min < policy.fold_tol:
            trace.terminal_status = BranchStatus.FOLD_DETECTED
            return trace
        streak += 1
        if streak >= policy.grow_after:
            step = min(2.0 * step, policy.max_step)
            streak = 0
    trace.terminal_status = BranchStatus.REACHED_TARGET
    return trace


# -- equilibria -------------------------------------------------------------


@dataclass
class Equilibrium:
    state: np.ndarray
    params: Parameters
    word: tuple
    residual: float
    stability: Stability
    spectral_bound: float

    @property
    def label(self) -> str:
        return format_word(self.word)

    def as_dict(self) -> dict:
        return {
            "word": self.label,
            "a": self.params.a,
            "d": self.params.d,
            "state": [float(x) for x in self.state],
            "residual": self.residual,
            "stability": self.stability.value,
            "spectral_bound": self.spectral_bound,
        }


def classify_stability(state, params: Parameters, margin=STABILITY_MARGIN):
    """Return ``(verdict, spectral_bound)`` from the largest Jacobian eigenvalue."""
    bound = float(spectrum(state, params)[-1])
    if bound < -margin:
        return Stability.STABLE, bound
    if bound > margin:
        return Stability.UNSTABLE, bound
    return Stability.MARGINAL, bound


def make_equilibrium(state, params: Parameters, word) -> Equilibrium:
    state = _as_state(state, params).copy()
    verdict, bound = classify_stability(state, params)
    return Equilibrium(
        state=state,
        params=params,
        word=lexicon.word(word),
        residual=residual_norm(state, params),
        stability=verdict,
        spectral_bound=bound,
    )


def solve_word(word, a: float, d: float, policy: StepPolicy = DEFAULT_POLICY) -> Equilibrium:
    """Equilibrium of type ``word`` at ``(a, d)`` by continuation from ``d = 0``.

    Raises NoConvergence when the branch terminates before ``d``.
    """
    w = lexicon.word(word)
    params = Parameters(a, d, len(w))
    if d == 0.0:
        return make_equilibrium(lexicon.roots(w, a), params, w)
    trace = continue_branch(w, a, d, policy)
    if not trace.reached:
        raise NoConvergence(
            f"branch {format_word(w)} at a={a} ended with {trace.terminal_status.value} at d={trace.d_end:.10g} < {d}"
        )
    return make_equilibrium(trace.state_end, params, w)


@dataclass
class BranchSet:
    """Result of :func:`all_branches`: solved equilibria plus per-word failures."""

    params: Parameters
    equilibria: list
    failures: dict = field(default_factory=dict)
    # pairs of words whose states are closer than SEPARATION_TOL
    collisions: list = field(default_factory=list)

    def __len__(self):
        return len(self.equilibria)

    def __iter__(self):
        return iter(self.equilibria)

    def by_word(self) -> dict:
        return {eq.word: eq for eq in self.equilibria}

    def count(self, stability: Stability) -> int:
        return sum(eq.stability is stability for eq in self.equilibria)

    def min_separation(self) -> float:
        states = np.array([eq.state for eq in self.equilibria])
        if len(states) < 2:
            return math.inf
        diff = np.max(np.abs(states[:, None, :] - states[None, :, :]), axis=-1)
        return float(np.min(diff[np.triu_indices(len(states), 1)]))


def all_branches(n: int, a: float, d: float, alphabet: Alphabet = Alphabet.FULL,
                 policy: StepPolicy = DEFAULT_POLICY) -> BranchSet:
    """Continue every word of length ``n`` to ``d``; results ordered by word."""
    params = Parameters(a, d, n)
    result = BranchSet(params, [])
    for w in lexicon.all_words(n, alphabet):
        if d == 0.0:
            result.equilibria.append(make_equilibrium(lexicon.roots(w, a), params, w))
            continue
        trace = continue_branch(w, a, d, policy)
        if trace.reached:
            result.equilibria.append(make_equilibrium(trace.state_end, params, w))
        else:
            result.failures[w] = trace
    eqs = result.equilibria
    for i, j in itertools.combinations(range(len(eqs)), 2):
        if np.max(np.abs(eqs[i].state - eqs[j].state)) < SEPARATION_TOL:
            result.collisions.append((eqs[i].word, eqs[j].word))
    return result


# -- ordering ---------------------------------------------------------------


def word_leq(wa, wb) -> bool:
    return lexicon.word_leq(wa, wb)


def order_margin(eq_a: Equilibrium, eq_b: Equilibrium) -> float:
    """Smallest component of ``u_B - u_A``; positive means strictly below."""
    return float(np.min(eq_b.state - eq_a.state))


def compare_equilibria(eq_a: Equilibrium, eq_b: Equilibrium, tol=ORDER_TOL) -> Order:
    pa, pb = eq_a.params, eq_b.params
    if pa != pb:
        raise ParamMismatch(f"cannot compare equilibria at {pa} and {pb}")
    diff = eq_b.state - eq_a.state
    if np.all(diff > tol):
        return Order.STRICTLY_BELOW
    if np.all(diff < -tol):
        return Order.STRICTLY_ABOVE
    if np.all(np.abs(diff) <= tol):
        return Order.EQUAL
    return Order.INCOMPARABLE


@dataclass
class StablePoset:
    """Hasse diagram over stable class representatives."""

    params: Parameters
    symmetry: Symmetry
    nodes: list
    edges: list
    # (word_a, word_b, margin) for every verified member pair
    relations: list
    # member pairs ordered as words but not verified STRICTLY_BELOW
    violations: list

    def labels(self):
        return [format_word(v) for v in self.nodes]

    def edge_labels(self):
        return [(format_word(x), format_word(y)) for x, y in self.edges]

    def min_margin(self) -> float:
        return min((m for _, _, m in self.relations), default=math.inf)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def comparable(self, x, y) -> bool:
        x, y = lexicon.word(x), lexicon.word(y)
        g = self.graph()
        return nx.has_path(g, x, y) or nx.has_path(g, y, x)


def stable_poset(n: int, a: float, d: float, symmetry=Symmetry.T_ONLY,
                 policy: StepPolicy = DEFAULT_POLICY) -> StablePoset:
    symmetry = Symmetry.parse(symmetry)
    params = Parameters(a, d, n)
    branches = all_branches(n, a, d, Alphabet.STABLE, policy)
    if branches.failures:
        failed = ", ".join(format_word(w) for w in branches.failures)
        raise NoConvergence(f"continuation to d={d} failed for {failed}")
    solved = branches.by_word()
    rep = {w: lexicon.canonical(w, symmetry) for w in solved}
    nodes = sorted(set(rep.values()), key=lambda r: (r * (n // len(r)), r))

    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    relations, violations = [], []
    for wa, wb in itertools.permutations(solved, 2):
        if rep[wa] == rep[wb] or not word_leq(wa, wb):
            continue
        if compare_equilibria(solved[wa], solved[wb]) is Order.STRICTLY_BELOW:
            relations.append((wa, wb, order_margin(solved[wa], solved[wb])))
            g.add_edge(rep[wa], rep[wb])
        else:
            violations.append((wa, wb))
    reduced = nx.transitive_reduction(g)
    position = {v: i for i, v in enumerate(nodes)}
    edges = sorted(reduced.edges, key=lambda e: (position[e[0]], position[e[1]]))
    return StablePoset(params, symmetry, nodes, edges, relations, violations)


# -- lattice correspondence -------------------------------------------------


def lde_residual(state, params: Parameters, index_range=(-100, 100)) -> float:
    """Residual of the periodic extension on the infinite lattice.

    ``u_i = state[mod(i, n)]`` for ``i`` in the closed ``index_range``, and
    the lattice stencil ``d (u_{i-1} - 2 u_i + u_{i+1}) + g(u_i)`` is
    evaluated with the same ``d``.  For n = 2 this stencil equals the
    doubled cycle coupling ``2d (u_j - u_i)``.
    """
    u = _as_state(state, params)
    n = params.n
    lo, hi = index_range
    idx = np.arange(lo - 1, hi + 2)
    ext = u[(idx - 1) % n]  # 1-based lattice index -> 0-based vertex
    centre = ext[1:-1]
    stencil = ext[:-2] - 2.0 * centre + ext[2:]
    return float(np.max(np.abs(params.d * stencil + nonlinearity(centre, params.a))))


def apply_rotation(state: Sequence[float], shift: int) -> np.ndarray:
    """``(T_shift u)_i = u_{mod(i + shift, n)}`` on state vectors."""
    return np.roll(np.asarray(state, dtype=float), -shift)


def apply_reflection(state: Sequence[float]) -> np.ndarray:
    return np.asarray(state, dtype=float)[::-1].copy()
