"""Directed AS-relationship graph answering provider/customer predicates.

Provider tests are direct-edge only by default; the transitive mode walks
the provider chain upward and exists for sensitivity analysis. Peer edges
are loaded (symmetric) but unused by the default classification rules.
"""

from __future__ import annotations

from typing import Iterable

from .model import RelationshipKind

_EMPTY: frozenset[int] = frozenset()


class RelGraph:
    """Immutable provider/peer graph over AS numbers."""

    __slots__ = ("_providers", "_peers", "_known")

    def __init__(self, edges: Iterable[tuple[int, int, RelationshipKind]]) -> None:
        providers: dict[int, set[int]] = {}
        peers: dict[int, set[int]] = {}
        known: set[int] = set()
        for a, b, kind in edges:
            if a == b:
                continue
            if kind is RelationshipKind.PROVIDER_OF:
                providers.setdefault(b, set()).add(a)
            else:
                peers.setdefault(a, set()).add(b)
                peers.setdefault(b, set()).add(a)
            known.add(a)
            known.add(b)
        self._providers = providers
        self._peers = peers
        self._known = frozenset(known)

    def is_provider(self, a: int, b: int, transitive: bool = False) -> bool:
        """True when a is a provider of b; unknown ASNs are simply False."""
        providers = self._providers.get(b, _EMPTY)
        if a in providers:
            return True
        if not transitive:
            return False
        frontier = list(providers)
        seen = set(providers)
        while frontier:
            above = self._providers.get(frontier.pop(), _EMPTY)
            if a in above:
                return True
            for asn in above:
                if asn not in seen:
                    seen.add(asn)
                    frontier.append(asn)
        return False

    def provider_count(self, asn: int) -> int:
        """Number of distinct direct providers of an AS; 0 when unknown."""
        return len(self._providers.get(asn, _EMPTY))

    def providers_of(self, asn: int) -> frozenset[int]:
        return frozenset(self._providers.get(asn, _EMPTY))

    def is_peer(self, a: int, b: int) -> bool:
        return b in self._peers.get(a, _EMPTY)

    def knows(self, asn: int) -> bool:
        """Whether the AS appears in any loaded relationship edge."""
        return asn in self._known

    def __len__(self) -> int:
        return len(self._known)
