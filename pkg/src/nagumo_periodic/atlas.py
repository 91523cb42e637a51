"""Existence regions of branch types in the (a, d) half-strip.

For a fixed detuning ``a`` the region of a word is described by ``d_star``,
the largest ``d`` reached by continuation from ``d = 0``.  Branches that
disappear and reappear at larger ``d`` are not mapped.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import lexicon
from .equilibria import DEFAULT_POLICY, BranchStatus, StepPolicy, continue_branch
from .errors import BadParams, NagumoError, UsageError

DEFAULT_D_CAP = 2.0
DEFAULT_BISECT_TOL = 1e-5


class RegionStatus(enum.Enum):
    FOLD_DETECTED = "FOLD_DETECTED"
    CAP_REACHED = "CAP_REACHED"
    STEP_UNDERFLOW = "STEP_UNDERFLOW"
    ERROR = "ERROR"


@dataclass
class RegionSample:
    word: tuple
    a: float
    d_star: float
    status: RegionStatus
    refinement: float
    probes: int = 0
    message: str = ""

    @property
    def label(self) -> str:
        return lexicon.format_word(self.word)

    def as_dict(self) -> dict:
        return {
            "word": self.label,
            "a": self.a,
            "d_star": self.d_star,
            "status": self.status.value,
            "refinement": self.refinement,
        }


@dataclass
class SweepConfig:
    a_grid: list = field(default_factory=lambda: default_grid())
    d_cap: float = DEFAULT_D_CAP
    bisect_tol: float = DEFAULT_BISECT_TOL

    def __post_init__(self):
        grid = [float(a) for a in self.a_grid]
        if not grid or any(not 0.0 < a < 1.0 for a in grid):
            raise UsageError("a_grid must be a non-empty list of values in (0, 1)")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise UsageError("a_grid must be strictly increasing")
        if not self.d_cap > 0 or not self.bisect_tol > 0:
            raise UsageError("d_cap and bisect_tol must be positive")
        self.a_grid = grid


def default_grid(a_min=0.025, a_max=0.975, points=41) -> list:
    return [float(a) for a in np.linspace(a_min, a_max, points)]


def _reaches(word, a, d, policy) -> bool:
    return continue_branch(word, a, d, policy).reached


def max_continuable_d(word, a: float, d_cap: float = DEFAULT_D_CAP, bisect_tol: float = DEFAULT_BISECT_TOL,
                      policy: StepPolicy = DEFAULT_POLICY) -> RegionSample:
    """Estimate the supremum of ``d`` reachable on the branch of ``word``.

    The first continuation towards ``d_cap`` yields a bracket between its last
    accepted ``d`` and the first rejected one; every further probe is a fresh
    continuation from ``d = 0``.
    """
    w = lexicon.word(word)
    if not 0.0 < a < 1.0:
        raise BadParams(f"detuning a must lie in (0, 1), got {a}")
    trace = continue_branch(w, a, d_cap, policy)
    if trace.reached:
        return RegionSample(w, a, d_cap, RegionStatus.CAP_REACHED, 0.0)

    lo = trace.d_end
    hi = trace.d_failed if trace.d_failed is not None else min(lo + bisect_tol, d_cap)
    probes = 0
    # the upper end must be a verified failure; d_cap failed in the first run
    while hi < d_cap:
        probes += 1
        if not _reaches(w, a, hi, policy):
            break
        lo, hi = hi, min(hi + 2 * (hi - lo), d_cap)
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        probes += 1
        if _reaches(w, a, mid, policy):
            lo = mid
        else:
            hi = mid
    status = RegionStatus.FOLD_DETECTED
    if trace.terminal_status is BranchStatus.STEP_UNDERFLOW:
        status = RegionStatus.STEP_UNDERFLOW
    return RegionSample(w, a, lo, status, hi - lo, probes)


def region_sweep(word, config: SweepConfig = None, policy: StepPolicy = DEFAULT_POLICY) -> Iterator[RegionSample]:
    """Yield one sample per grid point, in grid order.

    Errors at a grid point are recorded in that sample instead of aborting
    the sweep.
    """
    config = config or SweepConfig()
    w = lexicon.word(word)
    for a in config.a_grid:
        try:
            yield max_continuable_d(w, a, config.d_cap, config.bisect_tol, policy)
        except NagumoError as exc:
            yield RegionSample(w, a, float("nan"), RegionStatus.ERROR, float("nan"), message=str(exc))
