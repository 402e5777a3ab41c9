"""Command-line interface.

Exit codes: 0 success, 1 check failed, 2 usage or input error, 3 capacity
failure, 4 no valid radius, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import documents, generators, growth
from .coloring import CapacityError, NoValidRadius, coarse_color_pipeline
from .documents import DocumentError, GraphDocument
from .graph import BudgetExceeded, GraphError
from .symmetry import (
    DEFAULT_MAX_NODES,
    check_coarse_bound,
    enumerate_automorphisms,
    graph_motion,
    group_order,
    search_distinguishing_2coloring,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAPACITY, EXIT_NO_RADIUS, EXIT_BUDGET = range(6)


class _Out:
    """Human text goes to stdout unless the primary output itself does."""

    def __init__(self, args):
        self.args = args
        self.text = sys.stderr if args.output is None else sys.stdout

    def say(self, msg: str) -> None:
        print(msg, file=self.text)

    def primary(self, text: str) -> None:
        if self.args.output is None:
            sys.stdout.write(text)
        else:
            Path(self.args.output).write_text(text)

    def report(self, data: dict, primary: bool = False) -> None:
        """Write the JSON report; for report-only commands ``--output`` is the report."""
        path = self.args.report
        if path is None and self.args.output is not None:
            path = self.args.output if primary else str(self.args.output) + ".report.json"
        if path is not None:
            Path(path).write_text(json.dumps(data, indent=2, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def _nodes(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_MAX_NODES


# -- gen ---------------------------------------------------------------------------------


def _factor(spec: str) -> generators.PointedGraph:
    """``family:size`` with basepoint 0, e.g. ``cycle:3`` or ``path:2``."""
    fam, _, size = spec.partition(":")
    makers = {"cycle": generators.cycle_graph, "path": generators.path_graph, "complete": generators.complete_graph}
    if fam not in makers or not size.isdigit():
        raise GraphError(f"bad factor {spec!r}; use cycle:N, path:N or complete:N")
    return generators.PointedGraph(makers[fam](int(size)), 0)


def cmd_gen(args, out: _Out) -> int:
    b = args.budget
    fam = args.family
    if fam == "tree-ball":
        g = generators.regular_tree_ball(args.d, args.depth, budget=b)
    elif fam == "cycle":
        g = generators.cycle_graph(args.n)
    elif fam == "path":
        g = generators.path_graph(args.n)
    elif fam == "motion-example":
        g = generators.motion_example(args.L)
    elif fam == "counterexample":
        g = generators.counterexample_graph(args.N, budget=b)
    elif fam == "dl":
        g = generators.dl_graph(args.p, args.q, args.H, budget=b)
    elif fam == "free-product":
        g = generators.free_product_truncation([_factor(f) for f in args.factors], args.W, budget=b, start=args.start)
    elif fam == "gadget":
        doc = documents.load(args.input)
        phi = documents.load_coloring(args.coloring) if args.coloring else doc.coloring
        if phi is None or None in phi:
            raise DocumentError("gadget substitution needs a total coloring")
        g = generators.gadget_substitute(doc.graph(), phi)
    else:  # argparse restricts choices
        raise GraphError(f"unknown family {fam}")
    out.primary(GraphDocument.from_graph(g).dumps())
    out.say(f"{fam}: {g.n} vertices, {g.edge_count} edges")
    out.report({"family": fam, "n": g.n, "edges": g.edge_count})
    return EXIT_OK


# -- color / verify / export -----------------------------------------------------------------


def cmd_color(args, out: _Out) -> int:
    doc = documents.load(args.input)
    g = doc.graph()
    formula = growth.formula_by_name(args.formula) if args.formula else None
    try:
        phi, rep = coarse_color_pipeline(
            g, args.R, args.mode, formula=formula, verify=args.verify, max_nodes=_nodes(args)
        )
    except CapacityError as e:
        out.say(f"capacity failure: {e}")
        out.report({"status": "capacity", "error": str(e)})
        return EXIT_CAPACITY
    except NoValidRadius as e:
        out.say(f"no valid R: {e}")
        out.report({"status": "no-valid-R", "error": str(e)})
        return EXIT_NO_RADIUS
    out.primary(GraphDocument.from_graph(g, phi).dumps())
    if rep.degenerate:
        out.say("single vertex: degenerate coloring [0]")
    else:
        out.say(
            f"R={rep.R} |Y|={rep.net_size} xi={rep.xi_strategy} "
            f"capacity_margin={rep.capacity_margin} growth_margin={rep.growth_margin}"
        )
    status = EXIT_OK
    if rep.bound_ok is not None:
        out.say(f"max gm={rep.max_gm} bound={rep.bound} {'pass' if rep.bound_ok else 'FAIL'}")
        status = EXIT_OK if rep.bound_ok else EXIT_FAILED
    out.report({"status": "ok", **rep.to_dict()})
    return status


def _coloring_for(args, doc: GraphDocument):
    if getattr(args, "coloring", None):
        phi = documents.load_coloring(args.coloring)
        documents.check_coloring(phi, doc.n)
        return phi
    return doc.coloring


def cmd_verify(args, out: _Out) -> int:
    doc = documents.load(args.input)
    g = doc.graph()
    phi = _coloring_for(args, doc)
    if phi is None:
        raise DocumentError("verify needs a coloring")
    nodes = _nodes(args)
    data: dict = {"n": g.n, "aut": group_order(g, None, max_nodes=nodes), "aut_phi": group_order(g, phi, max_nodes=nodes)}
    rep = check_coarse_bound(g, phi, args.bound, max_nodes=nodes)
    data.update(bound=args.bound, max_gm=rep.max_gm, passed=rep.passed)
    data["violators"] = [
        {"x": v.x, "image": v.image, "displacement": v.displacement, "automorphism": list(v.witness.perm)}
        for v in rep.violators
    ]
    out.say(f"|Aut|={data['aut']} |Aut(phi)|={data['aut_phi']}")
    out.say(f"max gm={rep.max_gm} bound={args.bound} {'pass' if rep.passed else 'FAIL'}")
    for v in rep.violators[:3]:
        out.say(f"  violator: {v.x} -> {v.image} (distance {v.displacement})")
    out.report(data, primary=True)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_export_dot(args, out: _Out) -> int:
    doc = documents.load(args.input)
    out.primary(documents.to_dot(doc.graph(), _coloring_for(args, doc)))
    return EXIT_OK


def cmd_autos(args, out: _Out) -> int:
    doc = documents.load(args.input)
    g = doc.graph()
    phi = _coloring_for(args, doc)
    nodes = _nodes(args)
    autos = enumerate_automorphisms(g, phi, max_count=args.max_count, max_nodes=nodes)
    m, gm = graph_motion(g, phi, max_nodes=nodes)
    data = {"order": len(autos), "motion": m, "max_gm": gm}
    out.say(f"|Aut|={data['order']} motion={m} max gm={data['max_gm']}")
    if args.list:
        data["automorphisms"] = [list(f.perm) for f in autos]
        for f in autos:
            out.say(" ".join(map(str, f.perm)))
    if args.distinguishing:
        res = search_distinguishing_2coloring(g, mode=args.distinguishing, budget=args.samples, seed=args.seed)
        data["distinguishing"] = {"status": res.status, "coloring": res.coloring, "examined": res.examined}
        out.say(f"distinguishing 2-coloring: {res.status}" + (f" {res.coloring}" if res.coloring else ""))
    out.report(data, primary=True)
    return EXIT_OK


# -- growth ----------------------------------------------------------------------------------


def _source(args):
    if args.formula:
        return growth.formula_by_name(args.formula)
    if args.input:
        return documents.load(args.input).graph()
    raise DocumentError("give --formula or --input")


def cmd_growth(args, out: _Out) -> int:
    what = args.check
    if what == "claim":
        try:
            rep = growth.verify_claim_minimum(args.delta, args.R, args.Q)
        except growth.ParameterError as e:
            out.say(f"parameter error: {e}")
            return EXIT_USAGE
        o = rep.oracle
        out.say(f"min {o.min_value} over {o.feasible_count} feasible tuples, {len(o.minimizers)} minimizer(s)")
        out.say(f"witness {rep.witness} I={rep.I}" if rep.holds else "no minimizer has the stated properties")
        if not rep.holds and rep.holds_corrected:
            out.say(f"corrected form holds: witness {rep.corrected_witness} I={rep.corrected_I}")
        data = {
            "min": o.min_value,
            "minimizers": o.minimizers,
            "feasible": o.feasible_count,
            "holds": rep.holds,
            "witness": rep.witness,
            "I": rep.I,
            "holds_corrected": rep.holds_corrected,
        }
        ok = rep.holds
    elif what == "prodspheres":
        rep = growth.prodspheres_check(_source(args), args.R)
        out.say(f"statement form {'holds' if rep.holds_statement else 'fails'}; "
                f"proof form {'holds' if rep.holds_proof else 'fails'}")
        data = {"holds_statement": rep.holds_statement, "holds_proof": rep.holds_proof, **rep.sample}
        ok = rep.holds_statement
    elif what == "hypothesis":
        rep = growth.hypothesis_lb_check(_source(args), args.radii)
        for r, p in rep.passed.items():
            out.say(f"r={r}: {'pass' if p else 'fail'}")
        data = {"passed": {str(r): p for r, p in rep.passed.items()}}
        ok = rep.ok
    else:
        eps = Fraction(args.eps)
        rep = growth.linear_bound_check(_source(args), eps, (args.r_lo, args.r_hi))
        out.say(f"holds from r={rep.holds_from}" if rep.holds_somewhere else "does not hold in range")
        data = {"eps": str(eps), "range": [args.r_lo, args.r_hi], "holds_from": rep.holds_from}
        ok = rep.holds_somewhere
    out.report(data, primary=True)
    return EXIT_OK if ok else EXIT_FAILED


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags work before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized steps")
    common.add_argument(
        "--budget", type=int, default=argparse.SUPPRESS, help="vertex budget for generators, node budget for searches"
    )
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="primary output file (default stdout)")
    common.add_argument("--report", default=argparse.SUPPRESS, help="JSON report path (default OUTPUT.report.json)")

    p = argparse.ArgumentParser(prog="coarsecolor", description=__doc__.splitlines()[0], parents=[common])
    p.set_defaults(seed=0, budget=None, output=None, report=None)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    g = sub.add_parser("gen", help="generate a graph document")
    g.add_argument("family", choices=[
        "tree-ball", "cycle", "path", "motion-example", "counterexample", "dl", "free-product", "gadget",
    ])
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--depth", type=int, default=4)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--L", type=int, default=3)
    g.add_argument("--N", type=int, default=2)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--H", type=int, default=1)
    g.add_argument("--factors", nargs="+", default=["path:2", "path:2"], help="family:size, basepoint 0")
    g.add_argument("--W", type=int, default=1)
    g.add_argument("--start", choices=["copy", "point"], default="copy", help="free product: root copy or root vertex")
    g.add_argument("--input", help="graph document for gadget substitution")
    g.add_argument("--coloring", help="coloring for gadget substitution")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="run the coarse coloring pipeline")
    c.add_argument("input")
    c.add_argument("--R", type=int, default=None)
    c.add_argument("--mode", choices=["strict", "interior", "formula"], default="strict")
    c.add_argument("--formula", default=None, help="growth family for formula mode (path, grid, tree<d>)")
    c.add_argument("--verify", action="store_true", help="compute max gm against 4R+1")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check max geometric motion of Aut(g, phi) against a bound")
    v.add_argument("input")
    v.add_argument("--coloring", default=None)
    v.add_argument("--bound", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("export-dot", help="write DOT text")
    d.add_argument("input")
    d.add_argument("--coloring", default=None)
    d.set_defaults(func=cmd_export_dot)

    a = sub.add_parser("autos", help="automorphism group summary")
    a.add_argument("input")
    a.add_argument("--coloring", default=None)
    a.add_argument("--list", action="store_true")
    a.add_argument("--max-count", type=int, default=100_000)
    a.add_argument("--distinguishing", choices=["exhaustive", "random"], default=None)
    a.add_argument("--samples", type=int, default=1 << 20)
    a.set_defaults(func=cmd_autos)

    gr = sub.add_parser("growth", help="exact growth checks")
    gs = gr.add_subparsers(dest="check", required=True)
    cl = gs.add_parser("claim", parents=[common])
    cl.add_argument("--delta", type=int, required=True)
    cl.add_argument("--R", type=int, required=True)
    cl.add_argument("--Q", type=int, required=True)
    for name in ("prodspheres", "hypothesis", "linear"):
        sp = gs.add_parser(name, parents=[common])
        sp.add_argument("--formula", default=None)
        sp.add_argument("--input", default=None)
        if name == "prodspheres":
            sp.add_argument("--R", type=int, required=True)
        elif name == "hypothesis":
            sp.add_argument("--radii", type=int, nargs="+", required=True)
        else:
            sp.add_argument("--eps", required=True, help="rational, e.g. 1/1000")
            sp.add_argument("--r-lo", type=int, default=1)
            sp.add_argument("--r-hi", type=int, default=100)
    gr.set_defaults(func=cmd_growth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args)
    if args.func in (cmd_verify, cmd_autos, cmd_growth):
        out.text = sys.stdout  # nothing but the report goes to files
    try:
        return args.func(args, out)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DocumentError, GraphError, growth.ParameterError, growth.InsufficientData, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
