"""Command line interface.

Every subcommand works on one graph, given either as a JSON file path or
as ``--fixture NAME``.  Exit codes encode the verdict: 0 for a definite
positive answer, 3 for a definite negative one, 2 when the search was
inconclusive, and 1 for usage or input errors.  ``--json`` switches the
report to a machine-readable document carrying ``"schema": 1``; the
``k0``, ``splice``, and ``gen`` commands always emit JSON, and the last
two emit documents that load back as graph files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .classify import (
    AlgebraKind,
    CheckStatus,
    TheoremViolationError,
    classify,
    classification_to_json,
    ibn_check,
    ibn_to_json,
    pis_to_json,
    purely_infinite_simple_check,
    serre_check,
    serre_report_to_json,
    stably_free_check,
)
from .fixtures import FIXTURE_DESCRIPTIONS, fixture_graph
from .graded import (
    GRADED_DEFAULT_BUDGET,
    format_graded_element,
    graded_decide_equal,
    graded_serre_check,
    graded_serre_report_to_json,
    parse_graded_element,
)
from .graphs import (
    GraphError,
    InvalidParameterError,
    cuntz_splice,
    graph_from_json,
    graph_to_json,
)
from .ktheory import K0Data, k0_of_graph, k0_to_json
from .monoid import decide_equal, format_element, parse_element
from .search import DEFAULT_BUDGET, SearchBudget, Verdict

SCHEMA = 1

EXIT_POSITIVE = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2
EXIT_NEGATIVE = 3


# -- graph and budget plumbing -------------------------------------------------


def _load_graph(args):
    if args.fixture and args.path:
        raise InvalidParameterError("give either --fixture or a file path, not both")
    if args.fixture:
        return fixture_graph(args.fixture)
    if args.path:
        try:
            with open(args.path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError(
                f"{args.path}:{exc.lineno}:{exc.colno}: {exc.msg}"
            ) from exc
        try:
            return graph_from_json(data)
        except InvalidParameterError as exc:
            raise InvalidParameterError(f"{args.path}: {exc}") from exc
    raise InvalidParameterError("no graph given; use --fixture NAME or a file path")


def _budget(args, default: SearchBudget) -> SearchBudget:
    return SearchBudget(
        max_steps=args.max_steps if args.max_steps is not None else default.max_steps,
        max_element_size=args.max_size if args.max_size is not None
        else default.max_element_size,
        max_frontier=args.max_frontier if args.max_frontier is not None
        else default.max_frontier,
    )


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _status_exit(status: CheckStatus) -> int:
    if status is CheckStatus.HOLDS:
        return EXIT_POSITIVE
    if status is CheckStatus.FAILS:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.is_equal:
        return EXIT_POSITIVE
    if verdict.is_unequal:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


# -- JSON pieces -----------------------------------------------------------------


def _label_json(label):
    return list(label) if isinstance(label, tuple) else label


def _certificate_json(cert) -> dict | None:
    if cert is None:
        return None
    return {
        "meet": str(cert.meet),
        "left_steps": [[_label_json(lbl), str(el)] for lbl, el in cert.left_steps],
        "right_steps": [[_label_json(lbl), str(el)] for lbl, el in cert.right_steps],
    }


def _witness_json(witness) -> dict | None:
    if witness is None:
        return None
    return {"kind": witness.kind, "detail": witness.detail}


def _stats_json(stats) -> dict | None:
    return None if stats is None else asdict(stats)


def _k0_group_text(k0: K0Data) -> str:
    parts = [f"Z/{d}" for d in k0.torsion_divisors] + ["Z"] * k0.free_rank
    return " x ".join(parts) if parts else "trivial"


def _step_text(label) -> str:
    if isinstance(label, tuple):
        shift, vertex = label
        return f"{vertex}({shift})"
    return str(label)


# -- subcommands -----------------------------------------------------------------


def _cmd_eq(args) -> int:
    g = _load_graph(args)
    if args.graded:
        budget = _budget(args, GRADED_DEFAULT_BUDGET)
        a = parse_graded_element(g, args.left)
        b = parse_graded_element(g, args.right)
        verdict = graded_decide_equal(g, a, b, budget)
        left_text, right_text = format_graded_element(a), format_graded_element(b)
    else:
        budget = _budget(args, DEFAULT_BUDGET)
        a = parse_element(g, args.left)
        b = parse_element(g, args.right)
        verdict = decide_equal(g, a, b, budget)
        left_text, right_text = format_element(a), format_element(b)

    if args.json:
        _print_json({
            "schema": SCHEMA,
            "command": "eq",
            "graded": args.graded,
            "left": left_text,
            "right": right_text,
            "verdict": verdict.kind.value,
            "certificate": _certificate_json(verdict.certificate),
            "witness": _witness_json(verdict.witness),
            "stats": _stats_json(verdict.stats),
        })
    else:
        if verdict.is_equal:
            cert = verdict.certificate
            print(f"equal: both sides rewrite to {cert.meet}")
            for side, steps in (("left", cert.left_steps), ("right", cert.right_steps)):
                chain = ", ".join(_step_text(lbl) for lbl, _ in steps) or "(none)"
                print(f"  {side} steps ({len(steps)}): {chain}")
        elif verdict.is_unequal:
            print(f"unequal ({verdict.witness.kind})")
            for key, value in verdict.witness.detail.items():
                print(f"  {key}: {value}")
        else:
            stats = verdict.stats
            seen = stats.visited_left + stats.visited_right if stats else 0
            print(f"unknown: search budget exhausted after {seen} states")
    return _verdict_exit(verdict)


def _cmd_classify(args) -> int:
    g = _load_graph(args)
    budget = _budget(args, DEFAULT_BUDGET)
    c = classify(g, budget)
    if args.json:
        _print_json({"schema": SCHEMA, "command": "classify",
                     **classification_to_json(c)})
    else:
        print(f"kind: {c.kind.value}")
        if c.label is not None:
            origin = "from invariants, conjectural" if c.conjectural else "exact"
            print(f"label: {c.label} ({origin})")
        print(f"unit comparison: {c.serre.status.value}")
        print(f"purely infinite simple: {'yes' if c.pis.holds else 'no'}")
        print(f"k0: {_k0_group_text(c.k0)}")
    if c.kind in (AlgebraKind.GROUND_FIELD, AlgebraKind.LAURENT, AlgebraKind.LEAVITT):
        return EXIT_POSITIVE
    if c.kind is AlgebraKind.NOT_SERRE:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def _cmd_serre(args) -> int:
    g = _load_graph(args)
    budget = _budget(args, DEFAULT_BUDGET)
    report = serre_check(g, budget)
    payload = {"schema": SCHEMA, "command": "serre", "dialect": args.dialect,
               **serre_report_to_json(report)}
    if report.holds and g.n_vertices:
        c = classify(g, budget, serre_report=report)
        label = c.label
        if args.dialect == "cstar" and label and label.startswith("L_"):
            label = "O_" + label[2:]
        payload["label"] = label
        payload["conjectural"] = c.conjectural
    if args.json:
        _print_json(payload)
    else:
        print(f"status: {report.status.value}")
        if "label" in payload:
            print(f"label: {payload['label']}")
        for out in report.outcomes:
            if out.status is CheckStatus.HOLDS:
                print(f"  {out.vertex}: holds (multiplier {out.multiplier})")
            else:
                print(f"  {out.vertex}: {out.status.value} ({out.reason})")
    return _status_exit(report.status)


def _cmd_graded_serre(args) -> int:
    g = _load_graph(args)
    budget = _budget(args, GRADED_DEFAULT_BUDGET)
    lo, hi = args.window
    report = graded_serre_check(g, budget, window=(lo, hi))
    if args.json:
        _print_json({"schema": SCHEMA, "command": "graded-serre",
                     **graded_serre_report_to_json(report)})
    else:
        print(f"status: {report.status.value}")
        print(f"window: [{report.window[0]}, {report.window[1]}], "
              f"up to {report.max_summands} summands")
        for out in report.outcomes:
            if out.status is CheckStatus.HOLDS:
                shifts = " + ".join(f"1({s})" for s in out.shifts)
                print(f"  {out.vertex}(0) = {shifts}")
            else:
                print(f"  {out.vertex}: {out.status.value} ({out.reason})")
    return _status_exit(report.status)


def _cmd_k0(args) -> int:
    g = _load_graph(args)
    k0 = k0_of_graph(g)
    _print_json({"schema": SCHEMA, "command": "k0", "group": _k0_group_text(k0),
                 **k0_to_json(k0)})
    return EXIT_POSITIVE


def _cmd_ibn(args) -> int:
    g = _load_graph(args)
    budget = _budget(args, DEFAULT_BUDGET)
    result = ibn_check(g, budget)
    if args.json:
        _print_json({"schema": SCHEMA, "command": "ibn", **ibn_to_json(result)})
    else:
        if result.status is CheckStatus.HOLDS:
            print("holds: the unit class has infinite order, ranks cannot collide")
        elif result.status is CheckStatus.FAILS:
            n, m = result.witness
            print(f"fails: {n} * unit = {m} * unit in the monoid")
        else:
            print(f"unknown: no collision found (unit order {result.unit_order})")
    return _status_exit(result.status)


def _cmd_stably_free(args) -> int:
    g = _load_graph(args)
    result = stably_free_check(g)
    if args.json:
        _print_json({
            "schema": SCHEMA,
            "command": "stably-free",
            "holds": result.generates,
            "multipliers": result.multipliers,
        })
    else:
        if result.generates:
            print("holds: the unit class generates K0")
            for v, k in sorted(result.multipliers.items()):
                print(f"  [{v}] = {k} * [unit]")
        else:
            print("fails: the unit class does not generate K0")
    return EXIT_POSITIVE if result.generates else EXIT_NEGATIVE


def _cmd_pis(args) -> int:
    g = _load_graph(args)
    result = purely_infinite_simple_check(g)
    if args.json:
        _print_json({"schema": SCHEMA, "command": "pis", **pis_to_json(result)})
    else:
        if result.holds:
            print("holds: purely infinite simple")
        else:
            print("fails: " + ", ".join(result.reasons))
            if result.witness_subset is not None:
                print(f"  invariant subset: {{{', '.join(sorted(result.witness_subset))}}}")
            if result.witness_cycle is not None:
                print(f"  exitless cycle through: {', '.join(result.witness_cycle)}")
    return EXIT_POSITIVE if result.holds else EXIT_NEGATIVE


def _cmd_splice(args) -> int:
    g = _load_graph(args)
    spliced = cuntz_splice(g, args.at)
    _print_json({"schema": SCHEMA, **graph_to_json(spliced)})
    return EXIT_POSITIVE


def _cmd_gen(args) -> int:
    g = _load_graph(args)
    _print_json({"schema": SCHEMA, **graph_to_json(g)})
    return EXIT_POSITIVE


# -- parser ------------------------------------------------------------------------


def _fixture_help() -> str:
    return "; ".join(f"{name}: {text}" for name, text in FIXTURE_DESCRIPTIONS.items())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt-lab",
        description="Exact computations in graph monoids: equality search, "
                    "K0 invariants, and classification of the presented algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def graph_command(name, run, help_text, *, budgets=False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("path", nargs="?", metavar="PATH",
                       help="graph JSON file with vertices and edges")
        p.add_argument("--fixture", metavar="NAME",
                       help="use a named fixture (" + _fixture_help() + ")")
        p.add_argument("--json", action="store_true",
                       help="emit a machine-readable report")
        if budgets:
            p.add_argument("--max-steps", type=int, metavar="N",
                           help="rewrite depth bound per side")
            p.add_argument("--max-size", type=int, metavar="N",
                           help="largest element (total coefficient) kept")
            p.add_argument("--max-frontier", type=int, metavar="N",
                           help="frontier size bound per side")
        p.set_defaults(run=run)
        return p

    p = graph_command("eq", _cmd_eq,
                      "decide whether two monoid elements are equal", budgets=True)
    p.add_argument("left", metavar="LEFT", help='element text, e.g. "2u + v"')
    p.add_argument("right", metavar="RIGHT", help='element text, e.g. "0"')
    p.add_argument("--graded", action="store_true",
                   help='graded elements with shifts, e.g. "u(1) + 2v(-1)"')

    graph_command("classify", _cmd_classify,
                  "name the algebra the graph presents", budgets=True)

    p = graph_command("serre", _cmd_serre,
                      "check that every vertex is a multiple of the unit",
                      budgets=True)
    p.add_argument("--dialect", choices=("lpa", "cstar"), default="lpa",
                   help="naming convention for the label (L_n or O_n)")

    p = graph_command("graded-serre", _cmd_graded_serre,
                      "check that every vertex is a sum of unit translates",
                      budgets=True)
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"),
                   default=(-8, 8), help="shift window to search (default -8 8)")

    graph_command("k0", _cmd_k0, "print the K0 presentation as JSON")

    graph_command("ibn", _cmd_ibn,
                  "probe the invariant basis number property", budgets=True)

    graph_command("stably-free", _cmd_stably_free,
                  "check whether the unit class generates K0")

    graph_command("pis", _cmd_pis,
                  "check the purely-infinite-simple graph conditions")

    p = graph_command("splice", _cmd_splice,
                      "apply the Cuntz splice at a vertex, print the new graph")
    p.add_argument("at", metavar="VERTEX", help="vertex on a cycle to splice at")

    graph_command("gen", _cmd_gen, "print a graph (fixture or file) as JSON")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_POSITIVE if exc.code == 0 else EXIT_USAGE
    try:
        return args.run(args)
    except TheoremViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(exc.evidence, indent=2), file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
