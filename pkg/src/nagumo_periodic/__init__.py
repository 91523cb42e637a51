"""Periodic stationary solutions of the lattice Nagumo equation.

The n-periodic equilibria of the lattice equation are the equilibria of the
same equation on the cycle graph C_n.  This package names them by words over
``{0, a, 1}``, counts their rotation/reflection classes, follows every branch
from ``d = 0`` by continuation, classifies stability, orders the stable ones
and maps where each branch exists in the ``(a, d)`` plane.
"""
from .census import (
    asymptotic_ratio,
    bracelet_count,
    census_table,
    lyndon_bracelet_count,
    lyndon_count,
    mobius,
    necklace_count,
    totient,
)
from .equilibria import (
    BranchStatus,
    Order,
    Parameters,
    Stability,
    StepPolicy,
    all_branches,
    classify_stability,
    compare_equilibria,
    continue_branch,
    jacobian,
    lde_residual,
    newton_solve,
    nonlinearity,
    solve_word,
    stable_poset,
    vector_field,
)
from .lexicon import (
    Alphabet,
    Symmetry,
    canonical,
    enumerate_classes,
    format_word,
    is_primitive,
    orbit,
    primitive_root,
    reflect,
    rotate,
    word,
    word_leq,
)

__version__ = "0.1.0"
