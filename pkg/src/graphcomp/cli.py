"""Command-line front end.

Exit status: 0 success, 1 inconclusive at the given horizon, 2 invariant
violation, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fc_forest as fc
from . import range_encodings as rng_enc
from . import verify
from . import weak_partitions as wp
from . import weihrauch as wr
from .codec import Horizon, validate_injection
from .errors import Inconclusive, InvariantViolation
from .graph import components, export_dot, export_json, finite_graph, slice_graph

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_f(text: str):
    try:
        values = [int(x) for x in text.split(",")] if text.strip() else []
        return validate_injection(values)
    except ValueError as exc:
        raise UsageError(f"--f: {exc}") from exc


def parse_graph(text: str):
    """``N:a-b,c-d`` is the graph on ``0..N-1`` with the listed edges."""
    try:
        n, _, rest = text.partition(":")
        edges = [tuple(int(x) for x in e.split("-")) for e in rest.split(",") if e]
        if any(len(e) != 2 for e in edges):
            raise ValueError("edges are written a-b")
        return finite_graph(int(n), edges)
    except ValueError as exc:
        raise UsageError(f"--graph {text!r}: {exc}") from exc


def parse_streams(text: str):
    """Comma list of first-zero positions, ``-`` for a stream never zero."""
    try:
        return [wr.LpoStream.zero_at(None if x == "-" else int(x)) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--streams {text!r}: {exc}") from exc


def _horizon(args, default: Horizon) -> Horizon:
    if args.horizon is None:
        return default
    try:
        return Horizon.parse(args.horizon)
    except ValueError as exc:
        raise UsageError(f"--horizon: {exc}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _export(args, s) -> str:
    return export_dot(s) if args.format == "dot" else export_json(s)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------

def cmd_encode(args) -> int:
    f = parse_f(args.f)
    width = max(f.range, default=0) + 1
    h = _horizon(args, Horizon(depth=1, width=width))
    depth = args.depth if args.depth is not None else h.depth
    width = h.width if args.horizon else width
    g = rng_enc.encode_range_graph(f, args.mode)
    _emit(args, _export(args, slice_graph(g, rng_enc.range_slice_vertices(f, depth, width))))
    return EXIT_OK


def cmd_decode(args) -> int:
    f = parse_f(args.f)
    h = _horizon(args, Horizon(width=16))
    js = range(h.width)
    table = components(slice_graph(rng_enc.encode_range_graph(f, args.mode),
                                   rng_enc.decode_vertices(f, 0, js)))
    answers = {str(j): rng_enc.decode_range(table, 0, j, f.support) for j in js}
    _emit(args, _json({"f": list(f.values), "in_range": answers}))
    return EXIT_OK


def cmd_fc(args) -> int:
    f = parse_f(args.f)
    stages = _horizon(args, Horizon(stages=f.support + 1)).stages
    try:
        g = fc.build_fc_graph(f, stages)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fc.component_intervals(g)
    if args.format == "trace":
        _emit(args, g.trace())
    else:
        _emit(args, _export(args, g.slice()))
    return EXIT_OK


def cmd_sigma2(args) -> int:
    try:
        theta = rng_enc.parse_theta(args.theta, args.k)
    except ValueError as exc:
        raise UsageError(f"--theta: {exc}") from exc
    h = _horizon(args, Horizon(stages=16))
    g = rng_enc.Sigma2Graph(theta, h)
    s = g.slice()
    if args.format == "dot":
        _emit(args, export_dot(s))
        return EXIT_OK
    table = components(s)
    m = rng_enc.decode_least_m(table, theta, h)
    _emit(args, _json({"theta": theta.name, "k": args.k, "horizon": h.stages,
                       "least_m": m, "brute_force": rng_enc.brute_least_m(theta, h.stages),
                       "blocks": len(table.blocks)}))
    return EXIT_OK


def cmd_partition(args) -> int:
    if not args.d_file:
        raise UsageError("partition needs --d-file")
    try:
        D = wp.EnumeratedSequence.from_json(Path(args.d_file).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.d_file}: {exc}") from exc
    covered = max(j for _, j in D.table) + 1
    h = _horizon(args, Horizon(width=covered, stages=len(D.table)))
    verdict = wp.check_weak_partition(D, h)
    s = wp.partition_slice(D, h)
    if args.format == "dot":
        _emit(args, export_dot(s))
        return EXIT_OK if verdict.ok else EXIT_INVARIANT
    table = components(s)
    blocks = {}
    for i in sorted(D.blocks(h.stages)):
        p, X = wp.component_to_block(table, wp.d_code(i))
        blocks[str(i)] = {"p": p, "X": sorted(X)}
    _emit(args, _json({"verdict": verdict.kind, "witness": list(verdict.witness),
                       "blocks": blocks}))
    return EXIT_OK if verdict.ok else EXIT_INVARIANT


def cmd_reduce(args) -> int:
    r = random.Random(args.seed)
    name = args.name
    if name not in wr.REGISTRY:
        raise UsageError(f"--name: unknown reduction {name!r}; choose from {', '.join(sorted(wr.REGISTRY))}")
    graph = args.graph or None
    g = parse_graph(graph) if graph else None
    if name in ("cn_to_p2", "cn_to_pk"):
        if not args.p:
            raise UsageError(f"{name} needs --p")
        try:
            p = wr.CnInstance.parse(args.p)
        except ValueError as exc:
            raise UsageError(f"--p: {exc}") from exc
        k = 2 if name == "cn_to_p2" else args.k
        T = _horizon(args, Horizon(stages=64)).stages
        desc = {"p": args.p, "k": k, "T": T}
        out = wr.run_cn_to_pk(p, T, k, 0)
    elif name in ("lpohat_to_p", "lpohat_to_fc3"):
        H = _horizon(args, Horizon(stages=8)).stages
        streams = (parse_streams(args.streams) if args.streams
                   else verify.random_streams(r, 4, H))
        desc = {"streams": [s.first_zero(H) for s in streams], "H": H}
        out = wr.REGISTRY[name].run(streams, H)
    elif name == "fc3_to_fc1_chain":
        f = parse_f(args.f) if args.f else verify.random_injection(r, 60, 120)
        desc = {"f": list(f.values)}
        out = wr.run_fc_chain(f, f.support + 1)
    else:
        if g is None:
            g = (verify.graph_with_blocks(r, 6, args.k) if name in ("dk_to_cn", "pk_to_dk")
                 else verify.random_graph(r, 6, 0.35)[0])
        n = g.vertex_bound
        desc = {"graph": sorted(slice_graph(g, range(n)).edges), "n": n}
        if name == "pxp_to_p":
            out = wr.run_pxp_to_p(g, g, n)
        elif name == "dk_to_cn":
            try:
                out = wr.run_dk_to_cn(g, args.k, n)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        elif name == "fc1_to_lpohat":
            qs = [fc.canonical_index(b) for b in components(slice_graph(g, range(n))).blocks]
            out = wr.run_fc1_to_lpohat(g, n, qs + list(range(1, 32)))
        else:
            out = wr.REGISTRY[name].run(g, n)
    _emit(args, _json(wr.report(name, desc, out)))
    if out.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if out.valid else EXIT_INVARIANT


def cmd_verify(args) -> int:
    try:
        results = verify.run_suites(args.suite, args.seed)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    _emit(args, "".join(_json(res.as_dict()) for res in results))
    return EXIT_INVARIANT if any(res.failures for res in results) else EXIT_OK


COMMANDS = {
    "encode": cmd_encode, "decode": cmd_decode, "fc": cmd_fc, "sigma2": cmd_sigma2,
    "partition": cmd_partition, "reduce": cmd_reduce, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphcomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("dot", "json")):
        p.add_argument("--horizon", help="depth,width,stages")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("encode", help="export a truncation of the range encoder")
    p.add_argument("--f", required=True, help="injection prefix, e.g. 2,0,3")
    p.add_argument("--depth", type=int)
    p.add_argument("--mode", choices=(rng_enc.STANDARD, rng_enc.BOUNDED), default=rng_enc.STANDARD)
    common(p)

    p = sub.add_parser("decode", help="decide range membership from components")
    p.add_argument("--f", required=True)
    p.add_argument("--mode", choices=(rng_enc.STANDARD, rng_enc.BOUNDED), default=rng_enc.STANDARD)
    common(p, ("json",))

    p = sub.add_parser("fc", help="replay the all-finite-components construction")
    p.add_argument("--f", required=True)
    common(p, ("trace", "dot", "json"))

    p = sub.add_parser("sigma2", help="decode the least m from the cap/link graph")
    p.add_argument("--theta", required=True, help="eq, geq:C, false or true")
    p.add_argument("--k", type=int, default=3)
    common(p, ("json", "dot"))

    p = sub.add_parser("partition", help="check a weak partition and read its blocks")
    p.add_argument("--d-file", dest="d_file", help="JSON list of [s, i, j] triples")
    common(p, ("json", "dot"))

    p = sub.add_parser("reduce", help="run one reduction and check it with the oracle")
    p.add_argument("--name", required=True)
    p.add_argument("--p", help="closed-choice instance, e.g. complement-of:2")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--graph", help="N:a-b,c-d")
    p.add_argument("--streams", help="first zero per stream, '-' for none")
    p.add_argument("--f")
    common(p, ("json",))

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all")
    common(p, ("json",))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"graphcomp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
