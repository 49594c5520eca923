"""BGP route origin validation, invalid-prefix classification, and stability tracking."""

from .classifier import (
    ClassificationResult,
    ClassifiedInvalid,
    PredicateVector,
    classify,
    classify_all,
    classify_with_row,
    eval_predicates,
)
from .forest import Forest, ForestNode, RoaIndex, build_forest, maximal_prefixes, parent_and_siblings
from .ingest import (
    ConfigurationError,
    FormatError,
    IngestStats,
    SnapshotRef,
    SnapshotSeries,
    load_series,
    parse_relationships,
    parse_rib,
    parse_roas,
)
from .model import (
    AsPath,
    InvalidClass,
    IpPrefix,
    RelationshipKind,
    RoaRecord,
    RouteEntry,
    ValidationState,
    covers,
    parse_prefix,
)
from .relgraph import RelGraph
from .report import ClassificationReport, build_report, emit, load_report, render
from .rov import ValidationOutcome, ValidationTable, validate, validate_table
from .scenarios import SCENARIO_NAMES, ScenarioSpec, generate
from .stability import PairTimeline, build_timelines, long_lived, stability_report

__version__ = "0.1.0"
