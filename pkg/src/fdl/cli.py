"""Command line interface: ingest, query, serve, eval."""

from __future__ import annotations

import argparse
import json
import sys

from .config import ConfigError, load_config
from .evalharness import load_labels, load_queries, run_eval, write_report
from .ingest import (
    DanglingReference,
    IngestError,
    RecordKind,
    build_graph,
    load_records,
)
from .keyword_index import build_index
from .ontology import load_ontology
from .pipeline import Engine, SnapshotMissing, render_response
from .server import serve_forever


def cmd_ingest(args) -> int:
    config = load_config(args.config)
    lenient = config.lenient or args.lenient
    try:
        providers = load_records(config.fixture_path("providers.jsonl"), RecordKind.PROVIDER)
        locations = load_records(config.fixture_path("locations.jsonl"), RecordKind.LOCATION)
        specialties = load_records(config.fixture_path("specialties.jsonl"), RecordKind.SPECIALTY)
    except FileNotFoundError as exc:
        print(f"error: fixture file missing: {exc.filename}", file=sys.stderr)
        return 2
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ontology = load_ontology(config.ontology_path)
    try:
        graph, report = build_graph(providers, locations, specialties, ontology,
                                    strict=not lenient)
    except DanglingReference as exc:
        print(json.dumps(exc.report.to_json(), indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    config.snapshot_dir.mkdir(parents=True, exist_ok=True)
    graph.save(config.graph_snapshot_path)
    build_index(graph).save(config.index_snapshot_path)
    print(json.dumps(report.to_json(), indent=2))
    return 0


def cmd_query(args) -> int:
    config = load_config(args.config)
    engine = Engine.from_config(config)
    if (args.lat is None) != (args.lon is None):
        print("error: --lat and --lon must be supplied together", file=sys.stderr)
        return 2
    response = engine.search(args.q, lat=args.lat, lon=args.lon,
                             city=args.city, k=args.k)
    print(render_response(response))
    return 0


def cmd_serve(args) -> int:
    config = load_config(args.config)
    try:
        engine = Engine.from_config(config)
    except SnapshotMissing as exc:
        print(f"warning: {exc}; serving 503s until ingest runs", file=sys.stderr)
        engine = None
    serve_forever(args.host or config.host, config.port if args.port is None else args.port,
                  engine)
    return 0


def cmd_eval(args) -> int:
    config = load_config(args.config)
    engine = Engine.from_config(config)
    queries = load_queries(args.queries)
    if not queries:
        print(f"error: query file {args.queries} holds no queries", file=sys.stderr)
        return 2
    labels = load_labels(args.labels) if args.labels else None
    report, outcomes = run_eval(engine, queries, labels, k=config.k)
    print(json.dumps(report.to_json(), indent=2))
    if args.report_dir:
        for path in write_report(report, outcomes, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    ok = report.gained >= args.min_gained
    if labels:
        ok = ok and (report.precision_at_5_hybrid >= report.precision_at_5_keyword)
    if not ok:
        print(f"error: evaluation gate failed (gained={report.gained}, "
              f"min required {args.min_gained})", file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdl",
        description="Find-doctors-and-locations hybrid search engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="build and snapshot the knowledge graph")
    p_ingest.add_argument("--config", required=True)
    p_ingest.add_argument("--lenient", action="store_true",
                          help="keep going on dangling references")
    p_ingest.set_defaults(func=cmd_ingest)

    p_query = sub.add_parser("query", help="answer one question on the command line")
    p_query.add_argument("--config", required=True)
    p_query.add_argument("--q", required=True, help="the question text")
    p_query.add_argument("--lat", type=float)
    p_query.add_argument("--lon", type=float)
    p_query.add_argument("--city")
    p_query.add_argument("--k", type=int)
    p_query.set_defaults(func=cmd_query)

    p_serve = sub.add_parser("serve", help="run the HTTP JSON API")
    p_serve.add_argument("--config", required=True)
    p_serve.add_argument("--host")
    p_serve.add_argument("--port", type=int)
    p_serve.set_defaults(func=cmd_serve)

    p_eval = sub.add_parser("eval", help="run the coverage/quality experiment")
    p_eval.add_argument("--config", required=True)
    p_eval.add_argument("--queries", required=True)
    p_eval.add_argument("--labels")
    p_eval.add_argument("--min-gained", type=int, default=20)
    p_eval.add_argument("--report-dir", help="write per-query TSV and figures here")
    p_eval.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SnapshotMissing, IngestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
