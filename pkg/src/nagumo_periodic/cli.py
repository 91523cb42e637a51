"""Command-line front-end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 enumeration
budget exceeded, 4 numerical failure.  Primary output goes to stdout (or
``--output``); the resolved configuration is echoed to stderr.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import __version__, atlas, census, dynamics, equilibria, formats, lexicon
from .errors import NagumoError, UsageError
from .lexicon import Alphabet, Symmetry

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET, EXIT_NUMERIC = 0, 1, 2, 3, 4


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _echo_config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    if cfg.get("word") is not None:
        cfg["word"] = lexicon.format_word(cfg["word"])
    cfg.update(extra)
    sys.stderr.write("# config: " + json.dumps(cfg, sort_keys=True, default=str) + "\n")


def _detuning(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"a must lie in (0, 1), got {text}")
    return value


def _nonneg(text):
    value = float(text)
    if not value >= 0.0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {text}")
    return value


def _positive(text):
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"expected a value > 0, got {text}")
    return value


def _word(text):
    try:
        return lexicon.word(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- subcommands --------------------------------------------------------------


def cmd_count(args):
    _echo_config(args, budget=lexicon.ENUMERATION_BUDGET)
    rows = census.census_table(args.n_max, args.k)
    render = {"csv": formats.census_csv, "json": formats.census_json, "table": formats.census_text}
    _emit(args, render[args.format](rows))
    if not args.verify:
        return EXIT_OK
    status = EXIT_OK
    alphabet = Alphabet.from_k(args.k)
    for row in rows:
        if args.k ** row.n > lexicon.ENUMERATION_BUDGET:
            sys.stderr.write(f"n={row.n}: SKIP (beyond enumeration budget)\n")
            continue
        t = lexicon.enumerate_classes(row.n, alphabet, Symmetry.T_ONLY)
        tr = lexicon.enumerate_classes(row.n, alphabet, Symmetry.T_AND_R)
        observed = (len(t), sum(c.primitive for c in t), len(tr), sum(c.primitive for c in tr))
        expected = (row.necklaces, row.lyndon, row.bracelets, row.lyndon_bracelets)
        ok = observed == expected
        status = status if ok else EXIT_VERIFY
        sys.stderr.write(f"n={row.n}: {'PASS' if ok else 'FAIL'} enumerated={observed} formula={expected}\n")
    return status


def cmd_enumerate(args):
    _echo_config(args, budget=lexicon.ENUMERATION_BUDGET)
    classes = lexicon.enumerate_classes(args.n, Alphabet.from_k(args.k), args.symmetry, args.primitive_only)
    render = {"csv": formats.classes_csv, "json": formats.classes_json, "table": formats.classes_text}
    _emit(args, render[args.format](classes))
    return EXIT_OK


def _policy_config():
    return {"policy": dataclasses.asdict(equilibria.DEFAULT_POLICY),
            "newton_tol": equilibria.NEWTON_TOL, "stability_margin": equilibria.STABILITY_MARGIN}


def cmd_solve(args):
    _echo_config(args, **_policy_config())
    w = args.word
    if args.d == 0.0:
        eq = equilibria.solve_word(w, args.a, 0.0)
    else:
        trace = equilibria.continue_branch(w, args.a, args.d)
        if args.trace:
            with open(args.trace, "w", encoding="utf-8", newline="") as fh:
                fh.write(formats.trace_csv(trace))
        if not trace.reached:
            sys.stderr.write(
                f"error: branch {lexicon.format_word(w)} at a={args.a} ended with "
                f"{trace.terminal_status.value} at d={trace.d_end!r} before reaching d={args.d}\n")
            return EXIT_NUMERIC
        eq = equilibria.make_equilibrium(trace.state_end, equilibria.Parameters(args.a, args.d, len(w)), w)
    render = {"csv": lambda e: formats.equilibria_csv([e]), "json": formats.equilibrium_json,
              "table": lambda e: formats.equilibria_text([e])}
    _emit(args, render[args.format](eq))
    return EXIT_OK


def cmd_order(args):
    _echo_config(args, **_policy_config(), order_tol=equilibria.ORDER_TOL)
    poset = equilibria.stable_poset(args.n, args.a, args.d, args.symmetry)
    render = {"csv": formats.poset_csv, "json": formats.poset_json, "table": formats.poset_text}
    _emit(args, render[args.format](poset))
    if poset.violations:
        pairs = ", ".join(f"{lexicon.format_word(x)}<{lexicon.format_word(y)}" for x, y in poset.violations)
        sys.stderr.write(f"ordering not verified for: {pairs}\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_region(args):
    grid = atlas.default_grid(args.a_min, args.a_max, args.points)
    config = atlas.SweepConfig(grid, args.d_cap, args.bisect_tol)
    _echo_config(args, **_policy_config())
    samples = atlas.region_sweep(args.word, config)
    if args.format == "csv" and not args.output:
        sys.stdout.write(formats.region_csv([]))
        for sample in samples:
            sys.stdout.write(formats.region_row_csv(sample))
            sys.stdout.flush()
        return EXIT_OK
    samples = list(samples)
    render = {"csv": formats.region_csv, "json": formats.region_json, "plain": formats.region_plain}
    _emit(args, render[args.format](samples))
    return EXIT_OK


def cmd_simulate(args):
    if (args.word is None) == (args.state is None):
        raise UsageError("give exactly one of --word and --state")
    if args.word is not None:
        u0 = lexicon.roots(args.word, args.a)
    else:
        try:
            u0 = [float(x) for x in args.state.split(",")]
        except ValueError:
            raise UsageError(f"--state must be comma-separated numbers, got {args.state!r}") from None
    params = equilibria.Parameters(args.a, args.d, len(u0))
    dt = args.dt if args.dt is not None else dynamics.default_dt(params)
    _echo_config(args, resolved_dt=dt, initial_state=u0)
    traj = dynamics.integrate(u0, params, args.t_end, dt, args.stride)
    render = {"csv": formats.trajectory_csv, "json": formats.trajectory_json}
    _emit(args, render[args.format](traj))
    return EXIT_OK


def cmd_verify(args):
    w = args.word
    params = equilibria.Parameters(args.a, args.d, len(w))
    dt = args.dt if args.dt is not None else dynamics.default_dt(params)
    _echo_config(args, resolved_dt=dt, **_policy_config())
    eq = equilibria.solve_word(w, args.a, args.d)
    check = dynamics.verify_asymptotic_stability(w, params, args.delta, args.t_end, args.tol, dt)
    jac_stable = eq.stability is equilibria.Stability.STABLE
    agree = eq.stability is not equilibria.Stability.MARGINAL and jac_stable == check.stable
    record = {
        "word": lexicon.format_word(w),
        "a": args.a,
        "d": args.d,
        "jacobian_stability": eq.stability.value,
        "spectral_bound": eq.spectral_bound,
        "dynamic_stable": check.stable,
        "dynamic_verdict": check.verdict,
        "final_distance_upper": check.final_upper,
        "final_distance_lower": check.final_lower,
        "max_excursion": check.max_excursion,
        "agree": agree,
    }
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in record.items())
    _emit(args, text)
    return EXIT_OK if agree else EXIT_VERIFY


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nagumo-periodic",
        description="Count, compute, order and map periodic stationary solutions of the lattice Nagumo equation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, formats_=("csv", "json", "table"), default="table"):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=formats_, default=default)
        p.add_argument("--output", "-o", help="write primary output here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "closed-form class counts per period")
    p.add_argument("--n-max", type=int, required=True, choices=range(1, 65), metavar="N_MAX")
    p.add_argument("--k", type=int, choices=(2, 3), default=3)
    p.add_argument("--verify", action="store_true", help="cross-check each row by brute-force enumeration")

    p = add("enumerate", cmd_enumerate, "list symmetry classes of words of length n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, choices=(2, 3), default=3)
    p.add_argument("--symmetry", choices=("t", "tr"), default="t")
    p.add_argument("--primitive-only", action="store_true")

    p = add("solve", cmd_solve, "continue one branch from d=0 and classify it", default="json")
    p.add_argument("--word", type=_word, required=True, help="word over '0', 'a', '1'")
    p.add_argument("--a", type=_detuning, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--trace", help="also write the branch trace CSV (d,u_1..u_n) here")

    p = add("order", cmd_order, "Hasse diagram of stable classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_detuning, default=0.5)
    p.add_argument("--d", type=_positive, default=0.005)
    p.add_argument("--symmetry", choices=("t", "tr"), default="t")

    p = add("region", cmd_region, "largest continuable d over a grid of a", ("csv", "json", "plain"), "csv")
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--a-min", type=_detuning, default=0.025)
    p.add_argument("--a-max", type=_detuning, default=0.975)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--d-cap", type=_positive, default=atlas.DEFAULT_D_CAP)
    p.add_argument("--bisect-tol", type=_positive, default=atlas.DEFAULT_BISECT_TOL)

    p = add("simulate", cmd_simulate, "integrate the cycle system with RK4", ("csv", "json"), "csv")
    p.add_argument("--word", type=_word, help="start from the lattice point of this word")
    p.add_argument("--state", help="comma-separated initial state")
    p.add_argument("--a", type=_detuning, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--t-end", type=_positive, default=dynamics.DEFAULT_T_END)
    p.add_argument("--dt", type=_positive)
    p.add_argument("--stride", type=int, default=1)

    p = add("verify", cmd_verify, "compare Jacobian and dynamic stability verdicts", ("json", "table"), "table")
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--a", type=_detuning, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--delta", type=_positive, default=0.02)
    p.add_argument("--t-end", type=_positive, default=dynamics.DEFAULT_T_END)
    p.add_argument("--tol", type=_positive, default=dynamics.DEFAULT_TOL)
    p.add_argument("--dt", type=_positive)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NagumoError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
