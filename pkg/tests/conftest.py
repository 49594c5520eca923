"""Shared builders and independent brute-force oracles.

The oracles stay deliberately naive (full bit-string expansion, linear
scans) so they check the optimized paths without sharing code with them.
"""

from __future__ import annotations

import random

import pytest

from rovclass.model import (
    AsPath,
    IpPrefix,
    RoaRecord,
    RouteEntry,
    V4,
    V6,
    ValidationState,
    family_bits,
)


def mk_prefix(text: str) -> IpPrefix:
    return IpPrefix.parse(text)


def mk_route(prefix: str, *hops: int, peer: int | None = None,
             contains_set: bool = False) -> RouteEntry:
    return RouteEntry(mk_prefix(prefix), AsPath(tuple(hops), contains_set), peer)


def mk_roa(asn: int, prefix: str, max_length: int, ta: str = "TA-TEST") -> RoaRecord:
    return RoaRecord(asn, mk_prefix(prefix), max_length, ta)


# ---------------------------------------------------------------------------
# oracles


def bit_string(prefix: IpPrefix) -> str:
    """The prefix's network bits as a '0'/'1' string of the family's full width."""
    return format(prefix.addr, f"0{family_bits(prefix.family)}b")


def oracle_covers(a: IpPrefix, b: IpPrefix) -> bool:
    """Coverage by literal definition: expand to bit strings, compare the first |a| bits."""
    if a.family != b.family:
        return False
    return a.length <= b.length and bit_string(a)[: a.length] == bit_string(b)[: a.length]


def oracle_lookup_covering(records, prefix: IpPrefix) -> list[RoaRecord]:
    return [r for r in records if oracle_covers(r.prefix, prefix)]


def oracle_validate(route: RouteEntry, records) -> ValidationState:
    """Three-state validation by linear scan over all ROAs."""
    covering = oracle_lookup_covering(records, route.prefix)
    if not covering:
        return ValidationState.UNKNOWN
    for roa in covering:
        if route.prefix.length <= roa.max_length and roa.asn == route.path.origin:
            return ValidationState.VALID
    return ValidationState.INVALID


def oracle_longest_proper_cover(prefixes, target: IpPrefix) -> IpPrefix | None:
    """Scan every announced prefix; keep the longest strict cover of target."""
    best = None
    for candidate in prefixes:
        if candidate == target or candidate.length >= target.length:
            continue
        if oracle_covers(candidate, target):
            if best is None or candidate.length > best.length:
                best = candidate
    return best


def oracle_maximal(prefixes) -> set[IpPrefix]:
    """Prefixes not strictly covered by any other announced prefix."""
    out = set()
    for target in prefixes:
        covered = any(
            other != target and other.length < target.length and oracle_covers(other, target)
            for other in prefixes
        )
        if not covered:
            out.add(target)
    return out


# ---------------------------------------------------------------------------
# random generators


def random_prefix(rng: random.Random, family: str = V4,
                  min_len: int = 0, max_len: int | None = None) -> IpPrefix:
    width = family_bits(family)
    if max_len is None:
        max_len = width
    length = rng.randint(min_len, max_len)
    return IpPrefix(family, rng.getrandbits(width), length)


def random_v4_in(rng: random.Random, base: str, min_len: int, max_len: int) -> IpPrefix:
    """A random prefix inside a base block (for fixtures that need coverage overlap)."""
    block = IpPrefix.parse(base)
    length = rng.randint(max(min_len, block.length), max_len)
    span = length - block.length
    offset = rng.getrandbits(span) << (family_bits(V4) - length) if span else 0
    return IpPrefix(V4, block.addr + offset, length)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xBEEF)
