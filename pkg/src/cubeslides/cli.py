"""Command-line front end.

Data goes to standard output as JSON, JSONL or CSV; diagnostics and the
``--verbose`` tables go to standard error.

Exit status: 0 success, 1 verification failure, 2 usage error,
3 search found no witness.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bijection as bj
from . import search as srch
from . import slide_graph as sg
from . import slides as sl
from . import trees as tr
from . import verify as vf
from .errors import CubeError
from .rng import DEFAULT_SEED, RNG_NAME, CubeRandom

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("CUBESLIDES_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"CUBESLIDES_THREADS must be an integer, got {env!r}") from None
    return 1


def _parse_tree(text: str, n: int | None = None) -> tr.SpanningTree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"tree is not valid JSON: {exc}") from None
    if isinstance(obj, int):
        if n is None:
            raise UsageError("a bare mask needs --n")
        return tr.decode(n, obj)
    if isinstance(obj, list):
        if n is None:
            raise UsageError("a bare edge list needs --n")
        return tr.from_edges(n, [tuple(e) for e in obj])
    if n is not None and obj.get("n") != n:
        raise UsageError(f"tree record has n={obj.get('n')} but --n {n} was given")
    return tr.from_record(obj)


def cmd_count(args, out) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    methods = [args.method] if args.method else ["formula", "kirchhoff", "enumerate"]
    results = {}
    for m in methods:
        if m == "formula":
            results[m] = tr.formula_count(n)
        elif m == "kirchhoff":
            if n > tr.MAX_KIRCHHOFF_N:
                if args.method:
                    raise UsageError(f"kirchhoff method supports n <= {tr.MAX_KIRCHHOFF_N}")
                continue
            results[m] = tr.kirchhoff_count(n)
        elif m == "enumerate":
            if n > 3:
                if args.method:
                    raise UsageError("enumerate method supports n <= 3")
                continue
            results[m] = sum(1 for _ in tr.enumerate_spanning_trees(n))
    if args.verbose:
        for m, v in results.items():
            print(f"{m:>10}: {v}", file=sys.stderr)
    values = set(results.values())
    if len(values) != 1:
        print(f"methods disagree: {results}", file=sys.stderr)
        return EXIT_FAIL
    print(values.pop(), file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.n != 3 and not (args.n in (1, 2)):
        raise UsageError("enumerate supports n <= 3")
    for t in tr.enumerate_spanning_trees(args.n):
        if args.format == "mask":
            print(t.mask, file=out)
        else:
            print(_dump(tr.to_record(t)), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.n != 3:
        raise UsageError("verify runs on n=3 only")
    checks = vf.run(args.suite)
    for c in checks:
        print(_dump(c.to_record()), file=out)
    if args.verbose:
        width = max(len(c.name) for c in checks)
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {c.suite:<10} {c.name:<{width}}  {c.detail}", file=sys.stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_slide_graph(args, out) -> int:
    if args.n != 3:
        raise UsageError("slide-graph supports n=3 only")
    g = sg.build(3)
    comps = sg.components(g)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(sg.export_dot(g))
    if args.census:
        with open(args.census, "w") as fh:
            fh.write(sg.census_csv(comps))
    summary = {
        "nodes": len(g.nodes),
        "edges": len(g.edges()),
        "components": [
            {
                "id": c.id,
                "size": c.size,
                "signature": list(c.signature),
                "q4_certified": c.q4_isomorphic,
                "upright_count": c.upright_count,
            }
            for c in comps
        ],
    }
    print(_dump(summary), file=out)
    return EXIT_OK


def cmd_bijection(args, out) -> int:
    if args.tree is not None and args.stdin_json:
        raise UsageError("give either --tree or --stdin-json")
    if args.tree is not None:
        if args.inverse:
            raise UsageError("--inverse reads a signed section from --stdin-json")
        tree = tr.decode(3, args.tree)
        print(_dump(bj.signed_section_to_record(bj.phi_forward(tree))), file=out)
        return EXIT_OK
    if not args.stdin_json:
        raise UsageError("one of --tree or --stdin-json is required")
    text = sys.stdin.read()
    if args.inverse:
        try:
            ss = bj.signed_section_from_record(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad signed-section record: {exc}") from None
        print(_dump(tr.to_record(bj.phi_inverse(ss))), file=out)
    else:
        tree = _parse_tree(text, 3)
        print(_dump(bj.signed_section_to_record(bj.phi_forward(tree))), file=out)
    return EXIT_OK


def cmd_normalize(args, out) -> int:
    tree = _parse_tree(args.tree, args.n)
    if tree.n > tr.MAX_SAMPLE_N:
        raise UsageError(f"normalize supports n <= {tr.MAX_SAMPLE_N}")
    result, moves = sl.downward_slide_sequence(tree)
    if args.verbose:
        for m in moves:
            print(m, file=sys.stderr)
        print(f"{len(moves)} downward slides", file=sys.stderr)
    print(_dump(tr.to_record(result)), file=out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    if not 1 <= args.n <= tr.MAX_SAMPLE_N:
        raise UsageError(f"sample supports 1 <= n <= {tr.MAX_SAMPLE_N}")
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    rng = CubeRandom(args.seed)
    for k in range(args.count):
        rec = tr.to_record(tr.random_spanning_tree(args.n, rng=rng))
        rec.update(rng=RNG_NAME, seed=args.seed, index=k)
        print(_dump(rec), file=out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.min_excess is not None:
        if args.kind != srch.EXCESS:
            raise UsageError("--min-excess applies to the excess search")
        params["min_excess"] = args.min_excess
    try:
        w = srch.search(args.kind, args.n, args.budget, args.seed, walk=args.walk,
                        workers=_threads(args), **params)
    except srch.WitnessNotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    srch.verify_witness(w)
    if args.fixture:
        srch.save_fixture(args.fixture, w, label=args.label)
    print(_dump(w.to_record()), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubeslides", description="Edge slides on spanning trees of hypercubes.")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env CUBESLIDES_THREADS)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("count", help="number of spanning trees of Q_n")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--method", choices=["formula", "kirchhoff", "enumerate"])
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list every spanning tree of Q_n, n <= 3")
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--format", choices=["jsonl", "mask"], default="jsonl")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run exhaustive check suites on Q_3")
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--suite", choices=["weights", "slides", "retraction", "bijection", "graph", "all"], default="all")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("slide-graph", help="edge-slide graph of Q_3 and its components")
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--dot", metavar="FILE")
    g.add_argument("--census", metavar="FILE")
    g.set_defaults(func=cmd_slide_graph)

    b = sub.add_parser("bijection", help="signed section of a Q_3 tree, or the inverse")
    b.add_argument("--tree", type=int, metavar="MASK")
    b.add_argument("--stdin-json", action="store_true")
    b.add_argument("--inverse", action="store_true")
    b.set_defaults(func=cmd_bijection)

    nz = sub.add_parser("normalize", help="greedy downward slides to an upright tree")
    nz.add_argument("--n", type=int, default=None)
    nz.add_argument("--tree", required=True, metavar="JSON")
    nz.set_defaults(func=cmd_normalize)

    s = sub.add_parser("sample", help="uniform random spanning trees")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_sample)

    x = sub.add_parser("search", help="seeded search for slide counterexamples")
    x.add_argument("--kind", choices=[srch.EXCESS, srch.DEPENDENT], required=True)
    x.add_argument("--n", type=int, choices=[4, 5], required=True)
    x.add_argument("--budget", type=int, default=srch.DEFAULT_BUDGET)
    x.add_argument("--seed", type=int, default=DEFAULT_SEED)
    x.add_argument("--walk", type=int, default=srch.DEFAULT_WALK)
    x.add_argument("--k", type=int, default=None, help="only directions with exactly this many edges")
    x.add_argument("--min-excess", type=int, default=None)
    x.add_argument("--fixture", metavar="FILE")
    x.add_argument("--label", default=None, help="fixture entry label (default: the kind)")
    x.set_defaults(func=cmd_search)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CubeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early, e.g. piped into head
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
