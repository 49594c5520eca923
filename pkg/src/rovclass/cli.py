"""Command-line front door: validate, classify, stability, scenario, serve.

Logs go to stderr and data to stdout or files, so report output stays
machine-consumable. Exit codes: 0 success, 1 usage error, 2 input-format
error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from . import api, pipeline, report, scenarios
from .ingest import ConfigurationError, FormatError, load_series

log = logging.getLogger("rovclass")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1 per the CLI contract (argparse defaults to 2)
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bind_address(text: str) -> tuple[str, int]:
    host, _, port_text = text.rpartition(":")
    if not host or not port_text.isdigit():
        raise argparse.ArgumentTypeError(f"{text!r} is not host:port")
    return host, int(port_text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rovclass",
        description="Validate BGP routes against ROAs, classify invalid pairs, "
                    "and track their stability across snapshots.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_validate = sub.add_parser("validate", help="three-state route origin validation summary")
    p_validate.add_argument("--rib", required=True, help="RIB dump file")
    p_validate.add_argument("--roas", required=True, help="validated-ROA CSV file")
    p_validate.add_argument("--mode", choices=("distinct", "raw"), default="distinct")
    p_validate.add_argument("--routes-out", help="optional per-route outcome CSV")
    p_validate.set_defaults(func=cmd_validate)

    p_classify = sub.add_parser("classify", help="classify invalid pairs into false-alarm classes")
    p_classify.add_argument("--rib", required=True)
    p_classify.add_argument("--roas", required=True)
    p_classify.add_argument("--rel", required=True, help="AS relationship file")
    p_classify.add_argument("--out", help="write the report here instead of stdout")
    p_classify.add_argument("--format", choices=("json", "csv"), default="json")
    p_classify.add_argument("--date", help="snapshot date label for the report")
    p_classify.add_argument("--transitive", action="store_true",
                            help="treat provider relations transitively (sensitivity mode)")
    p_classify.set_defaults(func=cmd_classify)

    p_stability = sub.add_parser("stability", help="classify a snapshot series and flag long-lived pairs")
    p_stability.add_argument("--series", required=True, help="root of YYYY-MM-DD snapshot directories")
    p_stability.add_argument("--rel", help="AS relationship file (default: <series>/as-rel.txt)")
    p_stability.add_argument("--threshold", type=float, default=1.0,
                             help="presence fraction counting as long-lived (default 1.0)")
    p_stability.add_argument("--out")
    p_stability.add_argument("--format", choices=("json", "csv"), default="json")
    p_stability.add_argument("--transitive", action="store_true")
    p_stability.set_defaults(func=cmd_stability)

    p_scenario = sub.add_parser("scenario", help="generate a synthetic scenario fixture")
    p_scenario.add_argument("--name", required=True, choices=scenarios.SCENARIO_NAMES)
    p_scenario.add_argument("--seed", type=int, default=0)
    p_scenario.add_argument("--out", required=True, help="output directory")
    p_scenario.set_defaults(func=cmd_scenario)

    p_serve = sub.add_parser("serve", help="serve a report over the read-only query API")
    p_serve.add_argument("--report", required=True, help="JSON report file")
    p_serve.add_argument("--bind", type=_bind_address, default="127.0.0.1:8000",
                         help="host:port to listen on")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def cmd_validate(args: argparse.Namespace) -> int:
    table = pipeline.validate_files(args.rib, args.roas, mode=args.mode)
    pct = table.percentages()
    for state in ("unknown", "valid", "invalid"):
        print(f"{state:<8} {getattr(table, state):>10} {pct[state]:.2f}%")
    print(f"{'total':<8} {table.total:>10}")
    if table.as_set_excluded:
        print(f"{'as-set':<8} {table.as_set_excluded:>10} (excluded)")
    if args.routes_out:
        with open(args.routes_out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("prefix", "origin_asn", "state"))
            for route, outcome in table.outcomes:
                writer.writerow((str(route.prefix), route.path.origin, outcome.state.value))
        log.info("per-route outcomes written to %s", args.routes_out)
    return EXIT_OK


def _deliver(rep: report.ClassificationReport, fmt: str, out: str | None) -> None:
    if out:
        report.emit(rep, fmt, out)
        log.info("report written to %s", out)
    else:
        sys.stdout.write(report.render(rep, fmt))


def cmd_classify(args: argparse.Namespace) -> int:
    graph, _ = pipeline.load_relationship_graph(args.rel)
    result = pipeline.classify_files(args.rib, args.roas, graph, transitive=args.transitive)
    rep = report.build_report(result, date=args.date)
    _deliver(rep, args.format, args.out)
    return EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    series = load_series(args.series)
    rel_path = args.rel or series.rel_path
    if rel_path is None:
        raise ConfigurationError(
            f"no relationship file: pass --rel or place as-rel.txt under {series.root}"
        )
    graph, _ = pipeline.load_relationship_graph(rel_path)
    run = pipeline.run_series(series, graph, threshold=args.threshold,
                              transitive=args.transitive)
    rep = report.build_report(
        run.final_result,
        date=run.snapshot_dates[-1],
        timelines=run.timelines,
        threshold=run.threshold,
        snapshot_dates=run.snapshot_dates,
        stability_stats=run.stats,
    )
    _deliver(rep, args.format, args.out)
    return EXIT_OK


def cmd_scenario(args: argparse.Namespace) -> int:
    manifest = scenarios.generate(scenarios.ScenarioSpec(args.name, args.seed), args.out)
    import json

    sys.stdout.write(json.dumps(manifest, indent=2) + "\n")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    host, port = args.bind
    store = api.ReportStore(report.load_report(args.report))
    try:
        api.serve(store, host=host, port=port)
    except OSError as exc:
        log.error("cannot bind %s:%s: %s", host, port, exc)
        return EXIT_USAGE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (FormatError, ConfigurationError) as exc:
        log.error("%s", exc)
        return EXIT_FORMAT
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_FORMAT


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
