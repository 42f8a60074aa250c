"""Command-line interface: decompose, verify, generate, bench, export."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from .errors import RegpathError, SearchExhausted
from .files import (
    decomposition_from_json,
    decomposition_to_json,
    export_dot,
    parse_instance,
    serialize_instance,
)
from .generators import GeneratorSpec, generate
from .pipeline import decompose_instance
from .verify import Level, verify_decomposition


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regpath", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose an instance into n/2 paths")
    p.add_argument("instance", type=Path)
    p.add_argument("-o", "--output", type=Path, default=None, help="decomposition JSON (default: stdout)")
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--trace", type=Path, default=None, help="write round-by-round rewrite trace JSON")

    p = sub.add_parser("verify", help="check a decomposition against an instance")
    p.add_argument("instance", type=Path)
    p.add_argument("decomposition", type=Path)
    p.add_argument("--level", choices=[l.value for l in Level], default=Level.THEOREM2.value)

    p = sub.add_parser("generate", help="emit a valid instance file")
    p.add_argument("--family", required=True,
                   choices=["complete-bipartite", "projective-incidence", "random-bipartite-regular"])
    p.add_argument("-k", type=int, default=3)
    p.add_argument("-q", type=int, default=None, help="projective plane order (prime)")
    p.add_argument("-n", type=int, default=None, help="vertex count (random family)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-girth-filter", action="store_true")
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("bench", help="run a corpus directory, emit CSV timings")
    p.add_argument("corpus", type=Path)
    p.add_argument("-o", "--output", type=Path, default=None)
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("export", help="DOT export of an instance and optional decomposition")
    p.add_argument("instance", type=Path)
    p.add_argument("decomposition", type=Path, nargs="?", default=None)
    p.add_argument("-o", "--output", type=Path, default=None)
    return ap


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_decompose(args) -> int:
    spec = parse_instance(args.instance)
    trace: list | None = [] if args.trace else None
    result = decompose_instance(spec, node_budget=args.budget, trace=trace)
    _emit(decomposition_to_json(result.decomposition) + "\n", args.output)
    if args.trace:
        args.trace.write_text(json.dumps(trace, indent=2))
    print(
        f"decomposed {args.instance.name}: {len(result.decomposition.elements)} paths, "
        f"lengths {result.decomposition.length_counts()}, "
        f"verified={result.verification.ok}",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args) -> int:
    spec = parse_instance(args.instance)
    d = decomposition_from_json(args.decomposition.read_text())
    report = verify_decomposition(spec.graph, d, Level(args.level))
    print(report.to_json())
    return 0 if report.ok else 1


def _cmd_generate(args) -> int:
    inst = generate(
        GeneratorSpec(
            family=args.family,
            k=args.k,
            q=args.q,
            n=args.n,
            seed=args.seed,
            girth_filter=not args.no_girth_filter,
        )
    )
    _emit(serialize_instance(inst), args.output)
    print(
        f"generated {args.family}: n={inst.graph.n} m={inst.graph.m} k={inst.k}",
        file=sys.stderr,
    )
    return 0


def _cmd_bench(args) -> int:
    rows = []
    for path in sorted(args.corpus.glob("*.graph")):
        spec = parse_instance(path)
        t0 = time.perf_counter()
        try:
            result = decompose_instance(spec, node_budget=args.budget)
            stats = result.stats
            rows.append(
                {
                    "instance": path.name,
                    "n": spec.graph.n,
                    "m": spec.graph.m,
                    "k": spec.k,
                    "ok": True,
                    "paths": len(result.decomposition.elements),
                    "odd_nodes": stats["odd_nodes"],
                    "odd_s": f"{stats['odd_decomp_s']:.3f}",
                    "balance_s": f"{stats['balance_s']:.3f}",
                    "cycle_elim_s": f"{stats['cycle_elim_s']:.3f}",
                    "verify_s": f"{stats['verify_s']:.3f}",
                    "total_s": f"{stats['total_s']:.3f}",
                }
            )
        except SearchExhausted as exc:
            rows.append(
                {
                    "instance": path.name,
                    "n": spec.graph.n,
                    "m": spec.graph.m,
                    "k": spec.k,
                    "ok": False,
                    "paths": 0,
                    "odd_nodes": exc.stats.get("nodes", 0),
                    "odd_s": f"{time.perf_counter() - t0:.3f}",
                    "balance_s": "",
                    "cycle_elim_s": "",
                    "verify_s": "",
                    "total_s": f"{time.perf_counter() - t0:.3f}",
                }
            )
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["instance"])
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_export(args) -> int:
    spec = parse_instance(args.instance)
    d = None
    if args.decomposition is not None:
        d = decomposition_from_json(args.decomposition.read_text())
    _emit(export_dot(spec, d), args.output)
    return 0


_COMMANDS = {
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
    "export": _cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except RegpathError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, SearchExhausted) and exc.stats:
            payload["stats"] = exc.stats
        print(json.dumps(payload), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
