"""Command line front end.

Exit status: 0 analysis completed (whatever the verdict), 1 oracle
disagreement, 2 graph or expression parse error, 3 invalid request, I/O
failure or exceeded work ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .algebra import (DEFAULT_WORK_LIMIT, LeavittAlgebra, WorkLimitExceeded,
                      brute_force_commutator_vertex_span, degree_components, s0_s1_split)
from .expr import ExpressionError, parse_element
from .fields import FieldSpec, solve_in_span, span_basis
from .graph import Graph, GraphError, GraphParseError, induced_subgraph, parse_graph, weak_components
from .simplicity import SimplicityVerdict, _in_field, commutator_vertex_basis, decide_lie_simple
from .verify import verify_certificate

EXIT_OK, EXIT_DISAGREE, EXIT_PARSE, EXIT_REQUEST = 0, 1, 2, 3


class RequestError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_REQUEST)


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def load_graph(path: str) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise RequestError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _vec(vec: dict, g: Graph) -> str:
    if not vec:
        return "0"
    parts = []
    for v in g.ordered(vec):
        c = vec[v]
        s = str(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = v if mag == "1" else f"{mag}*{v}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _set(vs) -> str:
    return "{" + ", ".join(vs) + "}"


def build_report(g: Graph, f: FieldSpec, max_len: Optional[int] = None,
                 work_limit: int = DEFAULT_WORK_LIMIT) -> dict:
    """Everything ``analyze`` prints, as a JSON-ready dict."""
    start = time.perf_counter()
    verdict = decide_lie_simple(g, f)
    verified = verify_certificate(g, f, verdict)
    comps = weak_components(g)
    per_component = []
    for c in comps:
        v = decide_lie_simple(induced_subgraph(g, c), f)
        per_component.append({"vertices": list(c), "outcome": v.outcome, "case": v.case, "reason": v.reason})
    report = {
        "tool": "lpalie",
        "version": __version__,
        "field": str(f),
        "graph": {"vertices": len(g.vertices), "edges": len(g.edges),
                  "components": [list(c) for c in comps]},
        "components": per_component,
        "verdict": verdict.to_dict(),
        "certificate_verified": verified,
    }
    if max_len is not None and verdict.component is not None:
        report["oracle"] = oracle_comparison(induced_subgraph(g, verdict.component), f, max_len, work_limit)
    report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return report


def render_text(g: Graph, report: dict) -> str:
    v = SimplicityVerdict.from_dict(report["verdict"])
    gi = report["graph"]
    lines = [
        f"lpalie {report['version']}",
        f"graph: {gi['vertices']} vertices, {gi['edges']} edges, {len(gi['components'])} component(s)",
        f"field: {report['field']}",
    ]
    for c in report["components"]:
        extra = f", {c['reason']}" if c["reason"] else ""
        lines.append(f"  component {_set(c['vertices'])}: {c['outcome']} ({c['case']}{extra})")
    lines.append(f"outcome: {v.outcome}")
    lines.append(f"case: {v.case}")
    if v.reason:
        lines.append(f"reason: {v.reason}")
    if v.component is not None:
        lines.append(f"component: {_set(v.component)}")
    if v.nonzero_components:
        lines.append("nonzero components: " + ", ".join(_set(c) for c in v.nonzero_components))
    if v.minimal_sets:
        lines.append("minimal hereditary saturated sets: " + ", ".join(_set(s) for s in v.minimal_sets))
    if v.W is not None:
        lines.append(f"W: {_set(v.W)}")
    if v.obstruction is not None:
        ob = v.obstruction
        if ob.kind == "cycle":
            lines.append(f"obstruction in W: cycle without exit {'.'.join(ob.cycle)}")
        else:
            lines.append(f"obstruction in W: proper hereditary saturated subset {_set(ob.subset)}")
    for b in v.balloons:
        conds = " ".join(f"{k}={'yes' if ok else 'no'}" for k, ok in b.conditions.items())
        lines.append(f"balloon {b.vertex}: loop {b.loop or '-'}, edges to W {_set(b.edges_to_w)}, {conds}")
    certs = ([("identity", v.identity_membership)] if v.identity_membership else []) + \
            [(f"balloon sum at {m.vertex}", m) for m in v.memberships]
    for label, m in certs:
        lines.append(f"membership ({label}): target {_vec(m.target, g)}")
        for bv, vec in m.basis:
            lines.append(f"    b_{bv} = {_vec(vec, g)}")
        if m.in_span:
            lines.append("    in span, coefficients [" + ", ".join(map(str, m.coefficients)) + "]")
        else:
            lines.append(f"    not in span, ranks {m.ranks[0]} -> {m.ranks[1]}")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"oracle (max_len {o['max_len']}): spans {'agree' if o['equal'] else 'DISAGREE'}")
    lines.append(f"certificate: {'verified' if report['certificate_verified'] else 'FAILED'}")
    return "\n".join(lines)


def oracle_comparison(g: Graph, f: FieldSpec, max_len: int, work_limit: int = DEFAULT_WORK_LIMIT) -> dict:
    closed = span_basis([_in_field(b, f) for b in commutator_vertex_basis(g).values()], f, order=g.vertices)
    oracle = brute_force_commutator_vertex_span(g, f, max_len, limit=work_limit)
    closed_in_oracle = all(solve_in_span(oracle, b, f, order=g.vertices).in_span for b in closed)
    oracle_in_closed = all(solve_in_span(closed, b, f, order=g.vertices).in_span for b in oracle)
    return {
        "max_len": max_len,
        "closed_form": [{k: str(c) for k, c in b.items()} for b in closed],
        "oracle": [{k: str(c) for k, c in b.items()} for b in oracle],
        "closed_in_oracle": closed_in_oracle,
        "oracle_in_closed": oracle_in_closed,
        "equal": closed_in_oracle and oracle_in_closed,
    }


def cmd_analyze(args) -> int:
    g = load_graph(args.file)
    if not g.vertices:
        raise RequestError("the graph has no vertices")
    report = build_report(g, args.field, args.max_len, args.work_limit)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(g, report))
    return EXIT_OK


def cmd_eval(args) -> int:
    g = load_graph(args.file)
    alg = LeavittAlgebra(g, args.field)
    x = parse_element(alg, args.expr)
    s0, s1 = s0_s1_split(x)
    print(x)
    print(f"S0: {s0}")
    print(f"S1: {s1}")
    for d, part in degree_components(x).items():
        print(f"degree {d}: {part}")
    return EXIT_OK


def cmd_oracle_compare(args) -> int:
    g = load_graph(args.file)
    o = oracle_comparison(g, args.field, args.max_len, args.work_limit)
    print(f"field: {args.field}, max_len: {o['max_len']}")
    print("closed-form basis: " + ("; ".join(_vec(b, g) for b in o["closed_form"]) or "(zero)"))
    print("oracle basis:      " + ("; ".join(_vec(b, g) for b in o["oracle"]) or "(zero)"))
    print(f"closed-form span in oracle span: {o['closed_in_oracle']}")
    print(f"oracle span in closed-form span: {o['oracle_in_closed']}")
    print("spans equal" if o["equal"] else "spans DIFFER")
    return EXIT_OK if o["equal"] else EXIT_DISAGREE


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpalie", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lpalie {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="decide simplicity of [L(G), L(G)]")
    p.add_argument("file")
    p.add_argument("--field", type=_field, required=True, help="q or f<prime>")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-len", type=_positive, default=None,
                   help="also compare against the brute-force oracle at this path length")
    p.add_argument("--work-limit", type=_positive, default=DEFAULT_WORK_LIMIT)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("eval", help="normal form of an element expression")
    p.add_argument("file")
    p.add_argument("--field", type=_field, required=True)
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle-compare", help="closed-form commutator vertex span vs brute force")
    p.add_argument("file")
    p.add_argument("--field", type=_field, required=True)
    p.add_argument("--max-len", type=_positive, default=2)
    p.add_argument("--work-limit", type=_positive, default=DEFAULT_WORK_LIMIT)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_REQUEST
    try:
        return args.func(args)
    except (GraphParseError, ExpressionError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RequestError, WorkLimitExceeded, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REQUEST


if __name__ == "__main__":
    sys.exit(main())
