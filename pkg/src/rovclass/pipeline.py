"""File-level orchestration shared by the CLI, tests, and the stability run.

Thin glue only: each function reads the named files with the ingest
parsers and drives the in-memory pipeline (forest -> validation ->
classification), so every consumer gets identical behavior.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .classifier import ClassificationResult, ProbeHook, classify_all, default_probe
from .forest import RoaIndex, build_forest
from .ingest import (
    IngestStats,
    SnapshotSeries,
    parse_relationships,
    parse_rib,
    parse_roas,
)
from .model import InvalidClass
from .relgraph import RelGraph
from .rov import ValidationTable, validate_table
from .stability import ClassStability, PairTimeline, build_timelines, stability_report


def load_rib(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return parse_rib(fh)


def load_roas(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return parse_roas(fh)


def load_relationship_graph(path: str | Path) -> tuple[RelGraph, IngestStats]:
    with open(path, encoding="utf-8") as fh:
        edges, stats = parse_relationships(fh)
    return RelGraph(edges), stats


def validate_files(rib_path: str | Path, roa_path: str | Path,
                   mode: str = "distinct") -> ValidationTable:
    routes, _ = load_rib(rib_path)
    records, _ = load_roas(roa_path)
    return validate_table(routes, RoaIndex(records), mode=mode)


def classify_files(
    rib_path: str | Path,
    roa_path: str | Path,
    graph: RelGraph,
    probe: ProbeHook = default_probe,
    transitive: bool = False,
) -> ClassificationResult:
    routes, _ = load_rib(rib_path)
    records, _ = load_roas(roa_path)
    index = RoaIndex(records)
    forest = build_forest(routes)
    return classify_all(routes, index, forest, graph, probe=probe, transitive=transitive)


@dataclass
class SeriesRun:
    """Everything a stability run produces for reporting."""

    final_result: ClassificationResult
    timelines: list[PairTimeline]
    stats: dict[InvalidClass, ClassStability]
    snapshot_dates: list[str]
    threshold: float


def run_series(
    series: SnapshotSeries,
    graph: RelGraph,
    threshold: float = 1.0,
    probe: ProbeHook = default_probe,
    transitive: bool = False,
) -> SeriesRun:
    """Classify every snapshot, build pair timelines, and summarize stability.

    The reported classification is the final snapshot's; earlier snapshots
    contribute presence only.
    """
    results: dict = {}

    def classify_snapshot(ref):
        result = classify_files(ref.rib_path, ref.roa_path, graph,
                                probe=probe, transitive=transitive)
        results[ref.date] = result
        return result.pairs

    timelines = build_timelines(series, classify_snapshot)
    stats = stability_report(timelines, threshold)
    final_result = results[series.snapshots[-1].date]
    return SeriesRun(
        final_result=final_result,
        timelines=timelines,
        stats=stats,
        snapshot_dates=[d.isoformat() for d in series.dates],
        threshold=threshold,
    )
