"""Parsers for the three input corpora and for dated snapshot directories.

Input formats:
  - RIB dump: UTF-8 text, one route per line, pipe-separated
    ``marker|timestamp|type|peer-ip|peer-asn|prefix|as-path|...``; only
    peer-asn, prefix, and as-path are consumed. AS path hops are
    space-separated; AS_SET segments appear as ``{a,b,...}``.
  - ROA export: UTF-8 CSV with header exactly
    ``ASN,IP Prefix,Max Length,Trust Anchor``.
  - AS relationships: ``a|b|-1`` (a is provider of b) or ``a|b|0`` (peers);
    ``#`` starts a comment line.
  - Snapshot layout: ``<root>/<YYYY-MM-DD>/{rib.txt,roas.csv}`` plus one
    shared ``<root>/as-rel.txt``.

Parsers never abort on malformed lines: bad lines are skipped and counted.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from datetime import date as Date
from pathlib import Path
from typing import Iterable, Iterator

from .model import AsPath, IpPrefix, RelationshipKind, RoaRecord, RouteEntry, parse_prefix

log = logging.getLogger(__name__)

ROA_HEADER = ("ASN", "IP Prefix", "Max Length", "Trust Anchor")

RIB_FILENAME = "rib.txt"
ROA_FILENAME = "roas.csv"
REL_FILENAME = "as-rel.txt"

_MAX_ASN = 2**32 - 1


class FormatError(ValueError):
    """Input file violates its expected grammar in a non-recoverable way."""


class ConfigurationError(RuntimeError):
    """Snapshot layout or run configuration is unusable."""


@dataclass
class IngestStats:
    """Per-stream parse counters; lines_parsed + lines_skipped == lines_read."""

    lines_read: int = 0
    lines_parsed: int = 0
    lines_skipped: int = 0
    canonicalization_warnings: int = 0


def _parse_asn(token: str) -> int:
    asn = int(token)
    if not 0 <= asn <= _MAX_ASN:
        raise ValueError(f"ASN {asn} out of range")
    return asn


def _parse_as_path(text: str) -> AsPath:
    hops: list[int] = []
    contains_set = False
    for token in text.split():
        if token.startswith("{") and token.endswith("}"):
            contains_set = True
            for member in token[1:-1].split(","):
                if member:
                    hops.append(_parse_asn(member))
        else:
            hops.append(_parse_asn(token))
    return AsPath(tuple(hops), contains_set)


def parse_rib(lines: Iterable[str]) -> tuple[list[RouteEntry], IngestStats]:
    """Parse a pipe-delimited RIB dump into routes.

    Malformed lines (too few fields, bad prefix, bad path) are skipped and
    counted, never fatal. Prefixes with host bits set are canonicalized and
    counted in `canonicalization_warnings`. An unparsable peer column
    degrades to peer=None; it is not a reason to drop the route.
    """
    routes: list[RouteEntry] = []
    stats = IngestStats()
    for line in lines:
        stats.lines_read += 1
        fields = line.rstrip("\n").split("|")
        if len(fields) < 7 or not fields[5].strip():
            stats.lines_skipped += 1
            continue
        try:
            prefix, had_host_bits = parse_prefix(fields[5])
            path = _parse_as_path(fields[6])
        except ValueError:
            stats.lines_skipped += 1
            continue
        try:
            peer = _parse_asn(fields[4])
        except ValueError:
            peer = None
        if had_host_bits:
            stats.canonicalization_warnings += 1
        routes.append(RouteEntry(prefix, path, peer))
        stats.lines_parsed += 1
    if stats.canonicalization_warnings:
        log.warning("rib: cleared host bits on %d prefixes", stats.canonicalization_warnings)
    return routes, stats


def format_rib_line(
    route: RouteEntry,
    timestamp: int = 0,
    peer_ip: str = "0.0.0.0",
) -> str:
    """Render a route back into the RIB line grammar.

    Re-parsing the result yields a value equal to `route`. AS_SET segment
    boundaries are not modeled on AsPath, so a set-bearing path is written
    with its final hop brace-wrapped, which round-trips the flattened hops
    and the contains_set flag.
    """
    hops = route.path.hops
    if route.path.contains_set:
        as_path = " ".join(str(h) for h in hops[:-1])
        as_path = f"{as_path} {{{hops[-1]}}}".strip()
    else:
        as_path = " ".join(str(h) for h in hops)
    peer = "" if route.peer is None else str(route.peer)
    return f"TABLE_DUMP2|{timestamp}|B|{peer_ip}|{peer}|{route.prefix}|{as_path}|IGP"


def parse_roas(lines: Iterable[str]) -> tuple[list[RoaRecord], IngestStats]:
    """Parse a validated-ROA CSV export.

    The header row must match ``ASN,IP Prefix,Max Length,Trust Anchor``
    exactly (FormatError otherwise). The ASN column tolerates an "AS"
    prefix. Rows violating prefix.length <= max_length <= family width are
    skipped and counted. The header row is not included in the counters.
    """
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError(f"missing ROA header; expected {','.join(ROA_HEADER)}") from None
    if tuple(h.strip() for h in header) != ROA_HEADER:
        raise FormatError(
            f"bad ROA header {','.join(header)!r}; expected {','.join(ROA_HEADER)}"
        )
    records: list[RoaRecord] = []
    stats = IngestStats()
    for row in reader:
        stats.lines_read += 1
        if len(row) != 4:
            stats.lines_skipped += 1
            continue
        asn_text = row[0].strip()
        if asn_text.upper().startswith("AS"):
            asn_text = asn_text[2:]
        try:
            asn = _parse_asn(asn_text)
            prefix, had_host_bits = parse_prefix(row[1])
            record = RoaRecord(asn, prefix, int(row[2]), row[3].strip())
        except ValueError:
            stats.lines_skipped += 1
            continue
        if had_host_bits:
            stats.canonicalization_warnings += 1
        records.append(record)
        stats.lines_parsed += 1
    if stats.canonicalization_warnings:
        log.warning("roas: cleared host bits on %d prefixes", stats.canonicalization_warnings)
    return records, stats


def format_roa_row(record: RoaRecord) -> str:
    """Render a ROA back into its CSV row grammar (re-parses to an equal value)."""
    return f"AS{record.asn},{record.prefix},{record.max_length},{record.trust_anchor}"


RelEdge = tuple[int, int, RelationshipKind]


def parse_relationships(lines: Iterable[str]) -> tuple[list[RelEdge], IngestStats]:
    """Parse provider/peer edges from the serial-1-style relationship format.

    ``a|b|-1`` means a is a provider of b; ``a|b|0`` means a and b peer.
    Comments and blank lines count as skipped; other relationship codes are
    skipped and counted. Duplicate edges are dropped (peer edges compare
    orientation-insensitively).
    """
    edges: list[RelEdge] = []
    seen: set[tuple[int, int, RelationshipKind]] = set()
    stats = IngestStats()
    for line in lines:
        stats.lines_read += 1
        text = line.strip()
        if not text or text.startswith("#"):
            stats.lines_skipped += 1
            continue
        parts = text.split("|")
        if len(parts) != 3:
            stats.lines_skipped += 1
            continue
        try:
            a, b = _parse_asn(parts[0]), _parse_asn(parts[1])
            code = int(parts[2])
        except ValueError:
            stats.lines_skipped += 1
            continue
        if code == -1:
            kind = RelationshipKind.PROVIDER_OF
            key = (a, b, kind)
        elif code == 0:
            kind = RelationshipKind.PEER_WITH
            key = (min(a, b), max(a, b), kind)
        else:
            stats.lines_skipped += 1
            continue
        stats.lines_parsed += 1
        if key in seen:
            continue
        seen.add(key)
        edges.append((a, b, kind))
    return edges, stats


def format_relationship_line(edge: RelEdge) -> str:
    a, b, kind = edge
    code = -1 if kind is RelationshipKind.PROVIDER_OF else 0
    return f"{a}|{b}|{code}"


@dataclass(frozen=True)
class SnapshotRef:
    """One dated (RIB, ROA) snapshot on disk."""

    date: Date
    rib_path: Path
    roa_path: Path


@dataclass(frozen=True)
class SnapshotSeries:
    """Dated snapshots in strictly increasing date order."""

    root: Path
    snapshots: tuple[SnapshotRef, ...]
    rel_path: Path | None = None

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[SnapshotRef]:
        return iter(self.snapshots)

    @property
    def dates(self) -> tuple[Date, ...]:
        return tuple(ref.date for ref in self.snapshots)


def load_series(root: str | Path) -> SnapshotSeries:
    """Scan a snapshot directory tree into a SnapshotSeries.

    Subdirectories named YYYY-MM-DD become snapshots; a dated directory
    missing rib.txt or roas.csv is excluded with a warning. Zero usable
    snapshots is a ConfigurationError. A shared as-rel.txt beside the dated
    directories is picked up when present.
    """
    root = Path(root)
    if not root.is_dir():
        raise ConfigurationError(f"snapshot root {root} is not a directory")
    snapshots: list[SnapshotRef] = []
    for entry in sorted(root.iterdir()):
        if not entry.is_dir():
            continue
        try:
            day = Date.fromisoformat(entry.name)
        except ValueError:
            continue
        rib = entry / RIB_FILENAME
        roas = entry / ROA_FILENAME
        if not rib.is_file() or not roas.is_file():
            log.warning("snapshot %s missing %s or %s; excluded",
                        entry.name, RIB_FILENAME, ROA_FILENAME)
            continue
        snapshots.append(SnapshotRef(day, rib, roas))
    if not snapshots:
        raise ConfigurationError(f"no usable snapshots under {root}")
    snapshots.sort(key=lambda ref: ref.date)
    rel = root / REL_FILENAME
    return SnapshotSeries(root, tuple(snapshots), rel if rel.is_file() else None)
