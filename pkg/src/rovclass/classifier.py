"""Classification of Invalid (prefix, origin) pairs into false-alarm categories.

Six structural predicates feed a first-match rule table:

  row  category              requires
   1   load-balancing        origin==ROA AS,  relative with different path
   2   failing-to-aggregate  origin==ROA AS,  no differing relative, relative with same path
   3   multihoming           ROA AS provides origin, >=2 providers, differing relative
   4   singlehoming          ROA AS provides origin, 1 provider,    differing relative
   5   provider              origin provides ROA AS
   6   transfer              no identity and no provider relation either way

Anything matching no row is "other" (further false-alarm kinds or a real
hijack; no judgment is made). "Relative" means the forest parent node or
any co-child of that parent; paths are prepend-collapsed before equality
tests. Cells a row does not consult are never evaluated, which is what the
tri-state (True/False/None) on PredicateVector records.

When several ROAs cover a pair, the three relation predicates aggregate
existentially with priority origin-match > ROA-provides > origin-provides,
keeping the rows disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .forest import Forest, RoaIndex, build_forest
from .model import AsPath, InvalidClass, IpPrefix, RoaRecord, RouteEntry, ValidationState
from .relgraph import RelGraph
from .rov import ValidationOutcome, ValidationTable, validate_table

PROBE_CONFIRMED = "confirmed"
PROBE_UNCONFIRMED = "unconfirmed"
PROBE_SKIP = "skip"

# Hook for active confirmation of suspected transfer pairs:
# (prefix, origin) -> one of the PROBE_* statuses.
ProbeHook = Callable[[IpPrefix, int], str]


def default_probe(prefix: IpPrefix, origin: int) -> str:
    """No-op probe: leaves transfer pairs unconfirmed."""
    return PROBE_UNCONFIRMED


@dataclass(frozen=True, slots=True)
class PredicateVector:
    """The six rule-table predicates; None marks a cell never evaluated.

    The first three are aggregated over the covering ROA set and mutually
    exclusive; the rest are filled only when some rule row consults them.
    """

    origin_matches_roa: bool
    roa_provider_of_origin: bool
    origin_provider_of_roa: bool
    multiple_providers: bool | None = None
    relative_path_differs: bool | None = None
    relative_path_matches: bool | None = None


_RULE_ROWS: tuple[tuple[int, InvalidClass, dict[str, bool]], ...] = (
    (1, InvalidClass.LOAD_BALANCING, {
        "origin_matches_roa": True,
        "roa_provider_of_origin": False,
        "origin_provider_of_roa": False,
        "relative_path_differs": True,
    }),
    (2, InvalidClass.FAILING_TO_AGGREGATE, {
        "origin_matches_roa": True,
        "roa_provider_of_origin": False,
        "origin_provider_of_roa": False,
        "relative_path_differs": False,
        "relative_path_matches": True,
    }),
    (3, InvalidClass.MULTIHOMING, {
        "origin_matches_roa": False,
        "roa_provider_of_origin": True,
        "origin_provider_of_roa": False,
        "multiple_providers": True,
        "relative_path_differs": True,
    }),
    (4, InvalidClass.SINGLEHOMING, {
        "origin_matches_roa": False,
        "roa_provider_of_origin": True,
        "origin_provider_of_roa": False,
        "multiple_providers": False,
        "relative_path_differs": True,
    }),
    (5, InvalidClass.PROVIDER, {
        "origin_matches_roa": False,
        "roa_provider_of_origin": False,
        "origin_provider_of_roa": True,
    }),
    (6, InvalidClass.TRANSFER, {
        "origin_matches_roa": False,
        "roa_provider_of_origin": False,
        "origin_provider_of_roa": False,
    }),
)


def classify_with_row(vector: PredicateVector) -> tuple[InvalidClass, int | None]:
    """First-match over the rule rows; (other, None) when nothing matches.

    A consulted cell holding None never matches, so a row's don't-care
    cells are the only ones allowed to be unevaluated.
    """
    for row, category, wanted in _RULE_ROWS:
        if all(getattr(vector, name) is value for name, value in wanted.items()):
            return category, row
    return InvalidClass.OTHER, None


def classify(vector: PredicateVector) -> InvalidClass:
    return classify_with_row(vector)[0]


def _relative_collapsed_paths(forest: Forest, prefix: IpPrefix) -> set[tuple[int, ...]]:
    """Prepend-collapsed paths carried by the parent node and all siblings."""
    node = forest.node(prefix)
    parent = node.parent
    if parent is None:
        return set()
    paths = {path.collapsed() for path in parent.paths}
    for child in parent.children:
        if child is not node:
            paths.update(path.collapsed() for path in child.paths)
    return paths


def eval_predicates(
    prefix: IpPrefix,
    origin: int,
    path: AsPath,
    outcome: ValidationOutcome,
    forest: Forest,
    graph: RelGraph,
    transitive: bool = False,
) -> PredicateVector:
    """Evaluate the rule-table predicates for one Invalid pair.

    Raises ValueError when called on a non-Invalid outcome. The prefix must
    be a node of the forest (it is, when the forest was built from the same
    routes). Only cells some still-reachable rule row consults get
    evaluated; the rest stay None.
    """
    if outcome.state is not ValidationState.INVALID:
        raise ValueError(f"predicates are defined for Invalid pairs, not {outcome.state.value}")
    covering = outcome.covering
    origin_match = any(roa.asn == origin for roa in covering)
    roa_provides = (not origin_match) and any(
        graph.is_provider(roa.asn, origin, transitive) for roa in covering
    )
    origin_provides = (not origin_match and not roa_provides) and any(
        graph.is_provider(origin, roa.asn, transitive) for roa in covering
    )
    multiple = graph.provider_count(origin) >= 2 if roa_provides else None
    differs: bool | None = None
    matches: bool | None = None
    if origin_match or roa_provides:
        own = path.collapsed()
        relatives = _relative_collapsed_paths(forest, prefix)
        differs = any(collapsed != own for collapsed in relatives)
        if origin_match and not differs:
            matches = own in relatives
    return PredicateVector(
        origin_matches_roa=origin_match,
        roa_provider_of_origin=roa_provides,
        origin_provider_of_roa=origin_provides,
        multiple_providers=multiple,
        relative_path_differs=differs,
        relative_path_matches=matches,
    )


@dataclass(frozen=True, slots=True)
class ClassifiedInvalid:
    """An Invalid (prefix, origin) pair with its predicate vector and category.

    `relgraph_miss` flags pairs whose origin AS never appears in the
    relationship data; `probe_status` is set on transfer pairs by the probe
    hook. category == OTHER exactly when matched_rule_row is None.
    """

    prefix: IpPrefix
    origin: int
    path: AsPath
    vector: PredicateVector
    category: InvalidClass
    matched_rule_row: int | None
    covering_roas: tuple[RoaRecord, ...]
    relgraph_miss: bool = False
    probe_status: str | None = None


@dataclass
class ClassificationResult:
    """classify_all output: distinct-mode validation table plus classified pairs."""

    table: ValidationTable
    pairs: list[ClassifiedInvalid]
    class_counts: dict[InvalidClass, int]


def classify_all(
    routes: Iterable[RouteEntry],
    index: RoaIndex,
    forest: Forest | None = None,
    graph: RelGraph | None = None,
    probe: ProbeHook = default_probe,
    transitive: bool = False,
) -> ClassificationResult:
    """Validate a routing table and classify every distinct Invalid pair.

    The forest defaults to one built from the given routes; pass it in when
    already built. A pair announced with several paths is judged on its
    first-seen path. Per-class counts always sum to the Invalid total of
    the distinct-mode validation table.
    """
    if forest is None or graph is None:
        routes = list(routes)
        if forest is None:
            forest = build_forest(routes)
        if graph is None:
            graph = RelGraph([])
    table = validate_table(routes, index, mode="distinct")
    pairs: list[ClassifiedInvalid] = []
    counts = {category: 0 for category in InvalidClass}
    for route, outcome in table.outcomes:
        if outcome.state is not ValidationState.INVALID:
            continue
        prefix = route.prefix
        origin = route.path.origin
        vector = eval_predicates(prefix, origin, route.path, outcome, forest, graph, transitive)
        category, row = classify_with_row(vector)
        status = probe(prefix, origin) if category is InvalidClass.TRANSFER else None
        pairs.append(ClassifiedInvalid(
            prefix=prefix,
            origin=origin,
            path=route.path,
            vector=vector,
            category=category,
            matched_rule_row=row,
            covering_roas=outcome.covering,
            relgraph_miss=not graph.knows(origin),
            probe_status=status,
        ))
        counts[category] += 1
    return ClassificationResult(table, pairs, counts)
