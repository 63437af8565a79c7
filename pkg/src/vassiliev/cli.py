"""Command-line front end.

Every command prints one JSON document on stdout.  Stochastic commands
require ``--seed``.  Exit codes: 0 success, 2 invalid input, 3 numerical
diagnostic.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .errors import NumericalError, VassilievError

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
HELP_WIDTH = 100


class UsageError(Exception):
    pass


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=HELP_WIDTH, max_help_position=32)


def _common(p, stochastic=True):
    if stochastic:
        p.add_argument("--n", type=int, default=1_000_000, help="samples per integral (default 1000000)")
        p.add_argument("--seed", type=int, default=None, help="random seed (required)")
        p.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    p.add_argument("--out", default=None, help="write the result to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="json result, or csv convergence trace plus a PNG plot next to it")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vassiliev", formatter_class=_formatter,
                                description="Vassiliev knot invariants by configuration-space integrals "
                                            "and by tinkertoy counting.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("link", formatter_class=_formatter, help="Gauss linking integral of two curves")
    s.add_argument("--a", required=True, help="first component (knot file or zoo name)")
    s.add_argument("--b", required=True, help="second component (knot file or zoo name)")
    _common(s)

    s = sub.add_parser("v2", formatter_class=_formatter, help="degree-2 invariant by Monte Carlo")
    s.add_argument("--knot", required=True, help="knot file or zoo name")
    s.add_argument("--baseline", default=None, help="also compute for this knot and report the difference")
    _common(s)

    s = sub.add_parser("invariant", formatter_class=_formatter, help="invariant from a weight system")
    s.add_argument("--knot", required=True, help="knot file or zoo name")
    s.add_argument("--weights", required=True, help="weight system file, or c2 / deg3")
    s.add_argument("--baseline", default=None, help="also compute for this knot and report the difference")
    _common(s)

    s = sub.add_parser("tinkertoy", formatter_class=_formatter, help="exact degree-2 invariant of a polygon")
    s.add_argument("--knot", required=True, help="polygon file, or unknot / trefoil / figure8")
    s.add_argument("--trials", type=int, default=5, help="direction sets to compare (default 5)")
    s.add_argument("--dirs", default=None, help="JSON list of direction sets to use first")
    s.add_argument("--seed", type=int, default=0, help="seed for random direction sets (default 0)")
    s.add_argument("--baseline", default=None, help="also count this polygon and report the difference")
    _common(s, stochastic=False)

    s = sub.add_parser("enumerate", formatter_class=_formatter, help="list chord diagrams or graphs")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--chords", type=int, help="chord diagrams of this degree")
    g.add_argument("--graphs", type=int, help="trivalent graphs of this degree")
    _common(s, stochastic=False)

    s = sub.add_parser("verify", formatter_class=_formatter, help="4T / STU / IHX / orientation / face suites")
    s.add_argument("--weights", default="deg3", help="weight system file, or c2 / deg3 (default deg3)")
    _common(s, stochastic=False)

    s = sub.add_parser("strata", formatter_class=_formatter, help="stratum counts and face censuses")
    s.add_argument("--points", type=int, default=4, help="number of points (default 4)")
    s.add_argument("--max-codim", type=int, default=2, help="largest codimension (default 2)")
    s.add_argument("--graph", default=None, help="graph JSON, or x / tripod, for a face census")
    _common(s, stochastic=False)
    return p


# ---------------------------------------------------------------------------

def _seed(args):
    if args.seed is None:
        raise UsageError("--seed is required for stochastic commands")
    if args.n is None or args.n < 1:
        raise UsageError("--n must be positive")
    return args.seed


def _threads(args):
    t = args.threads or os.cpu_count() or 1
    if t < 1:
        raise UsageError("--threads must be positive")
    return t


def _weights(src):
    from .weights import WeightSystem, c2_system, deg3_system
    from .knots import data_dir

    named = {"c2": c2_system, "deg3": deg3_system}
    if src in named:
        return named[src]()
    p = Path(src)
    if not p.exists():
        p = data_dir() / (src if src.endswith(".json") else src + ".json")
    if not p.exists():
        raise UsageError(f"no weight system {src!r}")
    return WeightSystem.from_json(p.read_text())


def _polygon(src):
    from .knots import PolygonalKnot, load_knot
    from .tinkertoy import standard_polygon

    try:
        return standard_polygon(src)
    except VassilievError:
        pass
    k = load_knot(src)
    if not isinstance(k, PolygonalKnot):
        raise UsageError(f"{src!r} is not a polygon")
    return k


def _trace_rows(traces):
    rows = []
    for name, tr in traces.items():
        rows += [(name, n, v) for n, v in tr]
    return rows


def _write_trace(path: Path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["series", "samples", "running_estimate"])
        w.writerows(rows)
    _plot(path.with_suffix(".png"), rows)


def _plot(path: Path, rows):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in dict.fromkeys(r[0] for r in rows):
        pts = [(n, v) for s, n, v in rows if s == name]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=".", label=name)
    ax.set_xlabel("samples")
    ax.set_ylabel("running estimate")
    ax.set_xscale("log")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def _emit(args, result: dict, rows=None):
    text = json.dumps(result, sort_keys=True, indent=1, default=str)
    print(text)
    if args.out:
        out = Path(args.out)
        if args.format == "csv":
            if rows is None:
                raise UsageError("this command has no convergence trace; use --format json")
            _write_trace(out, rows)
        else:
            out.write_text(text + "\n")


# ---------------------------------------------------------------------------

def cmd_link(args):
    from .integrate import linking_integral
    from .knots import combinatorial_linking, load_knot

    seed = _seed(args)
    a, b = load_knot(args.a), load_knot(args.b)
    trace = []
    est = linking_integral(a, b, args.n, seed, threads=_threads(args), trace=trace)
    res = {"command": "link", **est.to_dict(), "combinatorial": combinatorial_linking(a, b)}
    _emit(args, res, [("link", n, v) for n, v in trace])


def _mc_command(args, name, fn):
    seed = _seed(args)
    from .knots import load_knot

    traces = {}
    est = fn(load_knot(args.knot), args.n, seed, _threads(args), traces)
    res = {"command": name, **est.to_dict()}
    if args.baseline:
        btr = {}
        base = fn(load_knot(args.baseline), args.n, seed, _threads(args), btr)
        diff = est - base
        res["baseline"] = base.to_dict()
        res["difference"] = {"value": diff.value, "std_error": diff.std_error}
        res["runtime_ms"] = round(est.runtime_ms + base.runtime_ms, 3)
        traces.update({f"baseline:{k}": v for k, v in btr.items()})
    _emit(args, res, _trace_rows(traces))


def cmd_v2(args):
    from .integrate import v2

    _mc_command(args, "v2", lambda k, n, s, t, tr: v2(k, n, s, threads=t, traces=tr))


def cmd_invariant(args):
    import warnings

    from .integrate import invariant_from_weight

    w = _weights(args.weights)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        _mc_command(args, "invariant",
                    lambda k, n, s, t, tr: invariant_from_weight(w, k, n, s, threads=t, traces=tr))


def cmd_tinkertoy(args):
    from .tinkertoy import DirectionSet, signed_count_v2, tinkertoy_v2

    dirs = None
    if args.dirs:
        dirs = [DirectionSet.from_json(d) for d in json.loads(Path(args.dirs).read_text())]
    k = _polygon(args.knot)
    value = signed_count_v2(k, dirs, args.trials, args.seed)
    res = {"command": "tinkertoy", "value": str(value), "float": float(value), "trials": args.trials}
    if dirs:
        rep = tinkertoy_v2(k, dirs[0])
        res["counts"] = {"chords": list(rep.chord_counts), "interleaved": rep.interleaved,
                         "tripods": rep.tripods, "corners": rep.corners}
    if args.baseline:
        base = signed_count_v2(_polygon(args.baseline), dirs, args.trials, args.seed)
        res["baseline"] = str(base)
        res["difference"] = str(value - base)
    _emit(args, res)


def cmd_enumerate(args):
    from .diagrams import automorphism_count, enumerate_chord_diagrams, enumerate_graphs

    if args.chords is not None:
        items = [str(d) for d in enumerate_chord_diagrams(args.chords)]
        res = {"command": "enumerate", "kind": "chords", "degree": args.chords, "count": len(items), "items": items}
    else:
        gs = enumerate_graphs(args.graphs)
        items = [{"graph": g.to_json(), "aut": automorphism_count(g)} for g in gs]
        res = {"command": "enumerate", "kind": "graphs", "degree": args.graphs, "count": len(items), "items": items}
    _emit(args, res)


def cmd_verify(args):
    from .configspace import hidden_faces_all_vanish
    from .diagrams import enumerate_graphs
    from .orientation import orientation_equivalence
    from .weights import IHXReport, anomaly_case, check_4T, check_IHX, check_STU_order

    w = _weights(args.weights)
    bad4 = check_4T(w)
    checked, bad_stu = check_STU_order(w)
    rep = IHXReport()
    check_IHX(w, rep)
    graphs = [g for k in (1, 2) for g in enumerate_graphs(k) if g.n_cycle >= 2]
    orient_ok = all(orientation_equivalence(g, exhaustive=g.n_vertices <= 4) for g in graphs)
    faces_ok = all(hidden_faces_all_vanish(g)[0] for k in (1, 2, 3) for g in enumerate_graphs(k))

    def verdict(ok):
        return "pass" if ok else "fail"

    res = {"command": "verify", "degree": w.degree,
           "4T": verdict(not bad4), "STU": verdict(not bad_stu), "IHX": verdict(not rep.violations),
           "orientation": verdict(orient_ok), "faces": verdict(faces_ok),
           "details": {"4T_violations": len(bad4), "STU_graphs": checked, "IHX_checked": len(rep.checked),
                       "IHX_skipped": rep.skipped, "anomaly_case": anomaly_case(w).value}}
    _emit(args, res)
    if bad4 or bad_stu or rep.violations or not orient_ok or not faces_ok:
        return 1
    return 0


def cmd_strata(args):
    from .configspace import enumerate_strata, hidden_faces_all_vanish, stratum_dimension
    from .diagrams import TrivalentGraph, tripod, x_diagram

    res = {"command": "strata", "points": args.points, "max_codim": args.max_codim}
    fams = enumerate_strata(args.points, args.max_codim)
    by = {}
    for f in fams:
        by.setdefault(f.codim, 0)
        by[f.codim] += 1
    res["counts"] = {str(c): by[c] for c in sorted(by)}
    res["dimensions"] = {str(c): 3 * args.points - c for c in sorted(by)}
    assert all(stratum_dimension(args.points, f) == 3 * args.points - f.codim for f in fams)
    if args.graph:
        named = {"x": x_diagram, "tripod": tripod}
        if args.graph in named:
            g = named[args.graph]()
        else:
            g = TrivalentGraph.from_json(json.loads(Path(args.graph).read_text()))
        ok, census = hidden_faces_all_vanish(g)
        res["faces"] = {"all_vanish": ok, "census": census}
    _emit(args, res)


COMMANDS = {"link": cmd_link, "v2": cmd_v2, "invariant": cmd_invariant, "tinkertoy": cmd_tinkertoy,
            "enumerate": cmd_enumerate, "verify": cmd_verify, "strata": cmd_strata}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args) or EXIT_OK
    except NumericalError as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, VassilievError, OSError, ValueError, KeyError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
