"""Prefix aggregation forest over announced prefixes, and a ROA coverage index.

Every distinct announced prefix becomes exactly one node whose parent is
the longest proper covering announced prefix; prefixes with no announced
cover are roots (the maximal prefixes). The forest is frozen after build:
classification only reads it.

The build sorts prefixes by (family, address, length) and walks an
ancestor stack, which yields the longest-proper-cover parent in
O(n log n); covering blocks are nested or disjoint, so an ancestor of a
later prefix is never popped early.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .model import AsPath, IpPrefix, RoaRecord, RouteEntry, covers, family_bits


class ForestNode:
    """One announced prefix with all AS paths observed for it."""

    __slots__ = ("prefix", "paths", "parent", "children")

    def __init__(self, prefix: IpPrefix, paths: tuple[AsPath, ...],
                 parent: "ForestNode | None") -> None:
        self.prefix = prefix
        self.paths = paths
        self.parent = parent
        self.children: list[ForestNode] = []

    def __repr__(self) -> str:
        return f"<ForestNode {self.prefix} children={len(self.children)}>"


class Forest:
    """Read-only view over the built aggregation forest."""

    def __init__(self, nodes: dict[IpPrefix, ForestNode], roots: list[ForestNode]) -> None:
        self._nodes = nodes
        self._roots = roots

    def node(self, prefix: IpPrefix) -> ForestNode:
        """The node for an announced prefix; KeyError when absent."""
        return self._nodes[prefix]

    def get(self, prefix: IpPrefix) -> ForestNode | None:
        return self._nodes.get(prefix)

    @property
    def roots(self) -> list[ForestNode]:
        return self._roots

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, prefix: IpPrefix) -> bool:
        return prefix in self._nodes

    def __iter__(self) -> Iterator[ForestNode]:
        return iter(self._nodes.values())


def _sort_key(prefix: IpPrefix) -> tuple[str, int, int]:
    return (prefix.family, prefix.addr, prefix.length)


def build_forest(routes: Iterable[RouteEntry]) -> Forest:
    """Build the aggregation forest from announced routes.

    A prefix announced with several paths keeps them all on one node, in
    first-seen order with duplicates dropped.
    """
    paths_by_prefix: dict[IpPrefix, dict[AsPath, None]] = {}
    for route in routes:
        paths_by_prefix.setdefault(route.prefix, {})[route.path] = None

    nodes: dict[IpPrefix, ForestNode] = {}
    roots: list[ForestNode] = []
    stack: list[ForestNode] = []
    for prefix in sorted(paths_by_prefix, key=_sort_key):
        while stack and not covers(stack[-1].prefix, prefix):
            stack.pop()
        parent = stack[-1] if stack else None
        node = ForestNode(prefix, tuple(paths_by_prefix[prefix]), parent)
        if parent is None:
            roots.append(node)
        else:
            parent.children.append(node)
        nodes[prefix] = node
        stack.append(node)
    return Forest(nodes, roots)


def maximal_prefixes(forest: Forest) -> list[IpPrefix]:
    """The prefixes not covered by any other announced prefix (forest roots)."""
    return [node.prefix for node in forest.roots]


def parent_and_siblings(
    forest: Forest, prefix: IpPrefix
) -> tuple[ForestNode | None, list[ForestNode]]:
    """A node's parent and the other children of that parent.

    Roots have no parent and no siblings. KeyError when the prefix was
    never announced.
    """
    node = forest.node(prefix)
    if node.parent is None:
        return None, []
    return node.parent, [child for child in node.parent.children if child is not node]


class RoaIndex:
    """Coverage-searchable ROA collection.

    Records are bucketed per family by prefix length and masked address,
    so a covering lookup probes one dict per ROA length no longer than the
    query. Results match a linear scan over all records exactly.
    """

    def __init__(self, records: Iterable[RoaRecord]) -> None:
        self._records = tuple(records)
        buckets: dict[str, dict[int, dict[int, list[RoaRecord]]]] = {}
        for record in self._records:
            prefix = record.prefix
            width = family_bits(prefix.family)
            key = prefix.addr >> (width - prefix.length) if prefix.length else 0
            per_len = buckets.setdefault(prefix.family, {}).setdefault(prefix.length, {})
            per_len.setdefault(key, []).append(record)
        self._buckets = buckets
        self._lengths = {fam: sorted(by_len) for fam, by_len in buckets.items()}

    @property
    def records(self) -> tuple[RoaRecord, ...]:
        return self._records

    def __len__(self) -> int:
        return len(self._records)

    def lookup_covering(self, prefix: IpPrefix) -> list[RoaRecord]:
        """All records whose prefix covers the query prefix."""
        by_len = self._buckets.get(prefix.family)
        if not by_len:
            return []
        width = family_bits(prefix.family)
        addr = prefix.addr
        out: list[RoaRecord] = []
        for length in self._lengths[prefix.family]:
            if length > prefix.length:
                break
            hit = by_len[length].get(addr >> (width - length))
            if hit:
                out.extend(hit)
        return out
