"""Three-state route origin validation against a ROA index.

A route is Unknown when no ROA prefix covers it, Valid when at least one
covering ROA authorizes its origin AS at its length, and Invalid when it
is covered but no covering ROA validates it. One matching ROA is enough
for Valid even if other covering ROAs would reject the route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .forest import RoaIndex
from .model import RoaRecord, RouteEntry, ValidationState, ratio_pct

_UNKNOWN = None  # set below; shared outcome for the common no-cover case


@dataclass(frozen=True, slots=True)
class ValidationOutcome:
    """Validation state plus the evidence: covering ROAs and the matching subset."""

    state: ValidationState
    covering: tuple[RoaRecord, ...]
    matching: tuple[RoaRecord, ...]


_UNKNOWN = ValidationOutcome(ValidationState.UNKNOWN, (), ())


def validate(route: RouteEntry, index: RoaIndex) -> ValidationOutcome:
    """Validate one route; AS_SET-origin routes must be filtered upstream."""
    if route.path.contains_set:
        raise ValueError("AS_SET-origin route has no single origin; filter before validating")
    covering = index.lookup_covering(route.prefix)
    if not covering:
        return _UNKNOWN
    origin = route.path.origin
    length = route.prefix.length
    matching = tuple(
        roa for roa in covering if length <= roa.max_length and roa.asn == origin
    )
    state = ValidationState.VALID if matching else ValidationState.INVALID
    return ValidationOutcome(state, tuple(covering), matching)


@dataclass
class ValidationTable:
    """Per-route outcomes plus Unknown/Valid/Invalid counts.

    In "distinct" mode (the default) duplicate (prefix, origin) pairs count
    once and `outcomes` holds one entry per pair, carrying the first-seen
    route; "raw" mode counts every evaluated line. AS_SET-origin routes are
    excluded from evaluation and counted separately.
    """

    mode: str
    unknown: int = 0
    valid: int = 0
    invalid: int = 0
    as_set_excluded: int = 0
    duplicates_skipped: int = 0
    outcomes: list[tuple[RouteEntry, ValidationOutcome]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.unknown + self.valid + self.invalid

    def percentages(self) -> dict[str, float]:
        """Counts over total as percentages, round-half-up to 2 decimals."""
        total = self.total
        return {
            "unknown": ratio_pct(self.unknown, total, 2),
            "valid": ratio_pct(self.valid, total, 2),
            "invalid": ratio_pct(self.invalid, total, 2),
        }

    def summary(self) -> dict:
        return {
            "unknown": self.unknown,
            "valid": self.valid,
            "invalid": self.invalid,
            "total": self.total,
            "as_set_excluded": self.as_set_excluded,
            "mode": self.mode,
            "percentages": self.percentages(),
        }


def validate_table(
    routes: Iterable[RouteEntry], index: RoaIndex, mode: str = "distinct"
) -> ValidationTable:
    """Validate a routing table and tally the three states."""
    if mode not in ("distinct", "raw"):
        raise ValueError(f"unknown counting mode {mode!r}")
    table = ValidationTable(mode)
    outcomes = table.outcomes
    seen: set[tuple] = set()
    distinct = mode == "distinct"
    for route in routes:
        if route.path.contains_set:
            table.as_set_excluded += 1
            continue
        if distinct:
            key = (route.prefix, route.path.origin)
            if key in seen:
                table.duplicates_skipped += 1
                continue
            seen.add(key)
        outcome = validate(route, index)
        state = outcome.state
        if state is ValidationState.UNKNOWN:
            table.unknown += 1
        elif state is ValidationState.VALID:
            table.valid += 1
        else:
            table.invalid += 1
        outcomes.append((route, outcome))
    return table
