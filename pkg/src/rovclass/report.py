"""Report assembly and JSON/CSV serialization.

The JSON report is the pipeline's durable output and the query service's
store format; field order is deterministic and emit/load round-trips are
lossless. The CSV form is a flat per-pair projection for spreadsheet use.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .classifier import ClassificationResult, ClassifiedInvalid
from .model import InvalidClass, ratio_pct
from .stability import ClassStability, PairTimeline, long_lived

CSV_COLUMNS = (
    "prefix",
    "origin_asn",
    "class",
    "matched_roas",
    "long_lived",
    "relgraph_miss",
    "probe_status",
)

_PREDICATE_KEYS = (
    "origin_matches_roa",
    "roa_provider_of_origin",
    "origin_provider_of_roa",
    "multiple_providers",
    "relative_path_differs",
    "relative_path_matches",
)


def _pair_to_dict(pair: ClassifiedInvalid, lived: bool | None) -> dict:
    return {
        "prefix": str(pair.prefix),
        "origin": pair.origin,
        "class": pair.category.value,
        "matched_rule_row": pair.matched_rule_row,
        "predicates": {key: getattr(pair.vector, key) for key in _PREDICATE_KEYS},
        "covering_roas": [
            {
                "asn": roa.asn,
                "prefix": str(roa.prefix),
                "max_length": roa.max_length,
                "trust_anchor": roa.trust_anchor,
            }
            for roa in pair.covering_roas
        ],
        "relgraph_miss": pair.relgraph_miss,
        "probe_status": pair.probe_status,
        "long_lived": lived,
    }


@dataclass
class ClassificationReport:
    """Serializable container mirroring the published result tables.

    per_class maps the kebab-case class identifiers to counts and their
    share of the Invalid total (1-decimal percent); validation_summary
    carries the three-state counts with 2-decimal percentages.
    """

    date: str | None
    validation_summary: dict
    per_class: dict[str, dict]
    pairs: list[dict] = field(default_factory=list)
    stability: dict | None = None

    def to_dict(self) -> dict:
        return {
            "date": self.date,
            "validation_summary": self.validation_summary,
            "per_class": self.per_class,
            "pairs": self.pairs,
            "stability": self.stability,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ClassificationReport":
        return cls(
            date=data.get("date"),
            validation_summary=dict(data["validation_summary"]),
            per_class={name: dict(entry) for name, entry in data["per_class"].items()},
            pairs=[dict(pair) for pair in data.get("pairs", [])],
            stability=dict(data["stability"]) if data.get("stability") else None,
        )


def build_report(
    result: ClassificationResult,
    date: str | None = None,
    timelines: Iterable[PairTimeline] | None = None,
    threshold: float = 1.0,
    snapshot_dates: Iterable[str] | None = None,
    stability_stats: Mapping[InvalidClass, ClassStability] | None = None,
) -> ClassificationReport:
    """Assemble a report from a classification result.

    With timelines given, each pair gets its long-lived flag and the report
    gains a stability section; otherwise those fields stay null. Pairs are
    sorted by (prefix, origin).
    """
    invalid_total = result.table.invalid
    per_class = {
        category.value: {
            "count": result.class_counts[category],
            "pct": ratio_pct(result.class_counts[category], invalid_total, 1),
        }
        for category in InvalidClass
    }
    lived_by_pair: dict[tuple, bool] = {}
    if timelines is not None:
        lived_by_pair = {
            (t.prefix, t.origin): long_lived(t, threshold) for t in timelines
        }
    ordered = sorted(
        result.pairs,
        key=lambda p: (p.prefix.family, p.prefix.addr, p.prefix.length, p.origin),
    )
    pair_dicts = [
        _pair_to_dict(pair, lived_by_pair.get((pair.prefix, pair.origin)))
        for pair in ordered
    ]
    stability = None
    if stability_stats is not None:
        stability = {
            "threshold": threshold,
            "snapshots": list(snapshot_dates or []),
            "per_class": {
                category.value: {
                    "total": entry.total,
                    "long_lived": entry.long_lived,
                    "pct": entry.pct,
                }
                for category, entry in stability_stats.items()
            },
        }
    return ClassificationReport(
        date=date,
        validation_summary=result.table.summary(),
        per_class=per_class,
        pairs=pair_dicts,
        stability=stability,
    )


def _roa_cell(roas: list[dict]) -> str:
    return ";".join(
        f"AS{r['asn']} {r['prefix']}-{r['max_length']} {r['trust_anchor']}".rstrip()
        for r in roas
    )


def render(report: ClassificationReport, fmt: str = "json") -> str:
    """Serialize a report to text; field order is deterministic."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for pair in report.pairs:
            writer.writerow([
                pair["prefix"],
                pair["origin"],
                pair["class"],
                _roa_cell(pair["covering_roas"]),
                "" if pair.get("long_lived") is None else str(pair["long_lived"]).lower(),
                str(pair["relgraph_miss"]).lower(),
                pair.get("probe_status") or "",
            ])
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def emit(report: ClassificationReport, fmt: str, out_path: str | Path) -> Path:
    """Write the rendered report to a file and return its path."""
    path = Path(out_path)
    path.write_text(render(report, fmt), encoding="utf-8")
    return path


def load_report(path: str | Path) -> ClassificationReport:
    """Load a JSON report emitted by this module."""
    with open(path, encoding="utf-8") as fh:
        return ClassificationReport.from_dict(json.load(fh))
