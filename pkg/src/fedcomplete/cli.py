"""Command-line entry point.

Four commands: `profile` a dataset into catalog JSON, `link` the catalogs
of a federation, `query` a federation, and `diff-oracle` to compare the
federated answers against the brute-force union ground truth. Exit codes:
0 success, 1 domain error (bad data, unreachable endpoint, gap found),
2 usage error (bad flags, missing argument files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .errors import FedCompleteError
from .expansion import serialize_trace
from .federation import _load_config, execute, load_federation, mappings_to_csv, mappings_to_jsonl
from .ntriples import parse_ntriples
from .oracle import build_union, canonical_mappings, oracle_evaluate
from .profile import Catalog, build_templates, catalog_from_json, catalog_to_json, link_catalog
from .query import SolutionMapping, parse_query
from .rdf import serialize_term


def _missing(path: str, what: str) -> int:
    print(f"usage error: {what} not found: {path}", file=sys.stderr)
    return 2


def _format_mapping(mapping: SolutionMapping) -> str:
    return " ".join(f"?{v.name}={serialize_term(t)}" for v, t in mapping.items())


def cmd_profile(args: argparse.Namespace) -> int:
    if not Path(args.data).is_file():
        return _missing(args.data, "data file")
    graph = parse_ntriples(Path(args.data).read_bytes())
    catalog = Catalog(build_templates(graph, args.endpoint, args.agg))
    sys.stdout.write(catalog_to_json(catalog))
    return 0


def cmd_link(args: argparse.Namespace) -> int:
    if not Path(args.config).is_file():
        return _missing(args.config, "config file")
    for catalog_path in args.catalog:
        if not Path(catalog_path).is_file():
            return _missing(catalog_path, "catalog file")
    aggregation, graphs, links = _load_config(args.config)
    base = Catalog()
    if args.catalog:
        for catalog_path in args.catalog:
            for mt in catalog_from_json(Path(catalog_path).read_text(encoding="utf-8")):
                base.add(mt)
    else:
        for endpoint_id, graph in graphs.items():
            for mt in build_templates(graph, endpoint_id, aggregation):
                base.add(mt)
    sys.stdout.write(catalog_to_json(link_catalog(base, graphs, links)))
    return 0


def _load_query_inputs(args: argparse.Namespace):
    if not Path(args.config).is_file():
        return _missing(args.config, "config file"), None, None
    if not Path(args.query).is_file():
        return _missing(args.query, "query file"), None, None
    federation = load_federation(args.config)
    bgp = parse_query(Path(args.query).read_text(encoding="utf-8"))
    return None, federation, bgp


def cmd_query(args: argparse.Namespace) -> int:
    code, federation, bgp = _load_query_inputs(args)
    if code is not None:
        return code
    result = execute(bgp, federation, root_hint=args.root)
    if args.trace:
        for trace in result.pattern_traces:
            sys.stderr.write(serialize_trace(trace))
    renderer = mappings_to_csv if args.format == "csv" else mappings_to_jsonl
    sys.stdout.write(renderer(result.mappings, bgp.projection))
    return 0


def cmd_diff_oracle(args: argparse.Namespace) -> int:
    code, federation, bgp = _load_query_inputs(args)
    if code is not None:
        return code
    oracle = oracle_evaluate(bgp, build_union(federation))
    federated = execute(bgp, federation, root_hint=args.root)
    root_only = execute(bgp, federation, root_hint=args.root, expand=False)
    federated_canon = canonical_mappings(federated.mappings, federation.sameas)
    root_canon = canonical_mappings(root_only.mappings, federation.sameas)

    print(f"oracle: {len(oracle)}")
    print(f"federated: {len(federated_canon)}")
    print(f"root-only: {len(root_canon)}")
    missing = sorted(oracle - federated_canon, key=SolutionMapping.sort_key)
    unsound = sorted(federated_canon - oracle, key=SolutionMapping.sort_key)
    if not missing and not unsound:
        print("complete: federated answers equal the oracle")
        return 0
    if missing:
        print(f"missing ({len(missing)}):")
        for mapping in missing:
            print(f"  {_format_mapping(mapping)}")
    if unsound:
        print(f"not in oracle ({len(unsound)}):")
        for mapping in unsound:
            print(f"  {_format_mapping(mapping)}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fedcomplete",
        description="Completeness-aware federated queries over RDF sources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="profile one dataset into catalog JSON")
    p.add_argument("--data", required=True, help="N-Triples file to profile")
    p.add_argument("--endpoint", required=True, help="endpoint id to record")
    p.add_argument("--agg", default="median", choices=["median", "mean", "max"])
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("link", help="link the catalogs of a federation")
    p.add_argument("--config", required=True, help="federation config JSON")
    p.add_argument(
        "--catalog",
        action="append",
        default=[],
        help="pre-computed catalog JSON (repeatable); profiles from data when omitted",
    )
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("query", help="run a SELECT query over a federation")
    p.add_argument("--config", required=True)
    p.add_argument("--query", required=True, help="query file")
    p.add_argument("--root", default=None, help="endpoint id to start evaluation at")
    p.add_argument("--trace", action="store_true", help="write operator traces to stderr")
    p.add_argument("--format", default="csv", choices=["csv", "jsonl"])
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("diff-oracle", help="compare federated answers with the union ground truth")
    p.add_argument("--config", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--root", default=None)
    p.set_defaults(func=cmd_diff_oracle)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FedCompleteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
