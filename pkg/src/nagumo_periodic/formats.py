"""CSV, JSON and plain-text renderings of library results.

Floats are written with ``repr`` so output is byte-stable across runs.
"""
from __future__ import annotations

import csv
import io
import json

from .census import CountRow
from .lexicon import format_word


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _fmt(x) -> str:
    return repr(float(x))


def _text_table(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# -- census -----------------------------------------------------------------


def census_csv(rows) -> str:
    return _csv(CountRow.FIELDS, [r.as_tuple() for r in rows])


def census_json(rows) -> str:
    return _json([dict(zip(CountRow.FIELDS, r.as_tuple())) for r in rows])


def census_text(rows) -> str:
    header = ("n", "k^n", "N_k(n)", "L_k(n)", "B_k(n)", "BL_k(n)")
    body = [(r.n, r.total, r.necklaces, r.lyndon, r.bracelets, r.lyndon_bracelets) for r in rows]
    return _text_table(header, body)


def census_paired_text(rows_all, rows_stable) -> str:
    """Two-alphabet layout: every cell reads ``all (stable)``."""
    header = ("n", "all", "T: all", "T: primitive", "T+R: all", "T+R: primitive")
    body = []
    for r3, r2 in zip(rows_all, rows_stable):
        pairs = zip(r3.as_tuple()[2:], r2.as_tuple()[2:])
        body.append((r3.n, *(f"{x} ({y})" for x, y in pairs)))
    return _text_table(header, body)


# -- classes ----------------------------------------------------------------


def class_records(classes) -> list:
    return [
        {
            "representative": format_word(c.representative),
            "orbit_size": c.orbit_size,
            "primitive": c.primitive,
            "period": c.period,
        }
        for c in classes
    ]


def classes_json(classes) -> str:
    return _json(class_records(classes))


def classes_csv(classes) -> str:
    recs = class_records(classes)
    return _csv(("representative", "orbit_size", "primitive", "period"),
                [(r["representative"], r["orbit_size"], str(r["primitive"]).lower(), r["period"]) for r in recs])


def classes_text(classes) -> str:
    recs = class_records(classes)
    return _text_table(("representative", "orbit_size", "primitive"),
                       [(r["representative"], r["orbit_size"], "yes" if r["primitive"] else "no") for r in recs])


# -- equilibria -------------------------------------------------------------


def equilibria_json(equilibria) -> str:
    return _json([eq.as_dict() for eq in equilibria])


def equilibrium_json(eq) -> str:
    return _json(eq.as_dict())


def equilibria_csv(equilibria) -> str:
    n = max((eq.params.n for eq in equilibria), default=0)
    header = ["word", "a", "d", "residual", "stability", "spectral_bound"] + [f"u_{i}" for i in range(1, n + 1)]
    rows = [
        [eq.label, _fmt(eq.params.a), _fmt(eq.params.d), _fmt(eq.residual), eq.stability.value,
         _fmt(eq.spectral_bound)] + [_fmt(x) for x in eq.state]
        for eq in equilibria
    ]
    return _csv(header, rows)


def equilibria_text(equilibria) -> str:
    rows = [(eq.label, eq.stability.value, f"{eq.spectral_bound:.6g}", f"{eq.residual:.2e}",
             " ".join(f"{x:.6f}" for x in eq.state)) for eq in equilibria]
    return _text_table(("word", "stability", "spectral_bound", "residual", "state"), rows)


def trace_csv(trace) -> str:
    n = len(trace.word)
    header = ["d"] + [f"u_{i}" for i in range(1, n + 1)]
    return _csv(header, [[_fmt(d)] + [_fmt(x) for x in u] for d, u in trace.points])


# -- ordering ---------------------------------------------------------------


def poset_json(poset) -> str:
    return _json({
        "n": poset.params.n,
        "a": poset.params.a,
        "d": poset.params.d,
        "symmetry": poset.symmetry.value,
        "nodes": poset.labels(),
        "edges": [list(e) for e in poset.edge_labels()],
        "min_margin": poset.min_margin(),
    })


def poset_csv(poset) -> str:
    return _csv(("lower", "upper"), poset.edge_labels())


def poset_text(poset) -> str:
    lines = [f"classes: {', '.join(poset.labels())}"]
    if len(poset.edges) == len(poset.nodes) - 1 and _is_chain(poset):
        lines.append("chain: " + " < ".join(poset.labels()))
    lines += [f"{x} < {y}" for x, y in poset.edge_labels()]
    lines.append(f"min margin: {poset.min_margin():.3e}")
    return "\n".join(lines) + "\n"


def _is_chain(poset) -> bool:
    return all((poset.nodes[i], poset.nodes[i + 1]) in poset.edges for i in range(len(poset.nodes) - 1))


# -- regions ----------------------------------------------------------------

REGION_FIELDS = ("word", "a", "d_star", "status", "refinement")


def region_csv(samples) -> str:
    return _csv(REGION_FIELDS, [(s.label, _fmt(s.a), _fmt(s.d_star), s.status.value, _fmt(s.refinement))
                                for s in samples])


def region_row_csv(sample) -> str:
    """One CSV row without header, for streaming."""
    return _csv(REGION_FIELDS, [(sample.label, _fmt(sample.a), _fmt(sample.d_star), sample.status.value,
                                 _fmt(sample.refinement))]).split("\n", 1)[1]


def region_json(samples) -> str:
    return _json([s.as_dict() for s in samples])


def region_plain(samples) -> str:
    """Two whitespace-separated columns ``a d_star`` for plotting tools."""
    return "".join(f"{_fmt(s.a)} {_fmt(s.d_star)}\n" for s in samples)


# -- trajectories -----------------------------------------------------------


def trajectory_csv(traj) -> str:
    n = traj.params.n
    header = ["t"] + [f"u_{i}" for i in range(1, n + 1)]
    return _csv(header, [[_fmt(t)] + [_fmt(x) for x in u] for t, u in zip(traj.times, traj.states)])


def trajectory_json(traj) -> str:
    return _json({
        "a": traj.params.a,
        "d": traj.params.d,
        "times": [float(t) for t in traj.times],
        "states": [[float(x) for x in u] for u in traj.states],
    })
