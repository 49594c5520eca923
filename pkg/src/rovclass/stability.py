"""Tracking of Invalid (prefix, origin) pairs across a dated snapshot series.

Presence records the snapshots where a pair appears in the table as
Invalid, not mere announcement: a pair that turns Valid mid-series (the
ROA got fixed) stops accruing presence. A pair is long-lived when its
presence fraction reaches the threshold; the default threshold 1.0 means
present in every snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .classifier import ClassifiedInvalid
from .ingest import SnapshotRef, SnapshotSeries
from .model import InvalidClass, IpPrefix, ratio_pct

# Runs the per-snapshot pipeline and yields that snapshot's classified pairs.
SnapshotClassifier = Callable[[SnapshotRef], Iterable[ClassifiedInvalid]]


@dataclass(frozen=True)
class PairTimeline:
    """One (prefix, origin) pair's per-snapshot Invalid presence and classes."""

    prefix: IpPrefix
    origin: int
    present: tuple[bool, ...]
    classes: tuple[InvalidClass | None, ...]

    @property
    def last_class(self) -> InvalidClass | None:
        """Class in the most recent snapshot where the pair was Invalid."""
        for category in reversed(self.classes):
            if category is not None:
                return category
        return None


def build_timelines(series: SnapshotSeries, pipeline: SnapshotClassifier) -> list[PairTimeline]:
    """Run the pipeline over every snapshot and assemble pair timelines.

    One timeline per pair that is Invalid in at least one snapshot, sorted
    by (prefix, origin) for determinism.
    """
    if len(series) == 0:
        raise ValueError("snapshot series is empty")
    length = len(series)
    classes_by_pair: dict[tuple[IpPrefix, int], list[InvalidClass | None]] = {}
    for position, ref in enumerate(series):
        for pair in pipeline(ref):
            key = (pair.prefix, pair.origin)
            slots = classes_by_pair.get(key)
            if slots is None:
                slots = [None] * length
                classes_by_pair[key] = slots
            slots[position] = pair.category
    timelines = [
        PairTimeline(
            prefix=prefix,
            origin=origin,
            present=tuple(c is not None for c in slots),
            classes=tuple(slots),
        )
        for (prefix, origin), slots in classes_by_pair.items()
    ]
    timelines.sort(key=lambda t: (t.prefix.family, t.prefix.addr, t.prefix.length, t.origin))
    return timelines


def long_lived(timeline: PairTimeline, threshold: float = 1.0) -> bool:
    """Whether the pair's Invalid presence fraction reaches the threshold."""
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold {threshold} outside (0, 1]")
    return sum(timeline.present) / len(timeline.present) >= threshold


@dataclass
class ClassStability:
    total: int = 0
    long_lived: int = 0

    @property
    def pct(self) -> float:
        return ratio_pct(self.long_lived, self.total, 1)


def stability_report(
    timelines: Iterable[PairTimeline], threshold: float = 1.0
) -> dict[InvalidClass, ClassStability]:
    """Per-class totals and long-lived counts, over final-snapshot pairs.

    Pairs are grouped by their class in the final snapshot, so per-class
    totals equal the final snapshot's classification counts; pairs no
    longer Invalid at the end of the series are not counted (their most
    recent class remains available as PairTimeline.last_class).
    Percentages are round-half-up to 1 decimal.
    """
    stats = {category: ClassStability() for category in InvalidClass}
    for timeline in timelines:
        category = timeline.classes[-1]
        if category is None:
            continue
        entry = stats[category]
        entry.total += 1
        if long_lived(timeline, threshold):
            entry.long_lived += 1
    return stats
