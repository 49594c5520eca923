"""Shared domain vocabulary: prefixes, paths, routes, ROAs, and result states.

Pure value types with no I/O and no policy. Everything here is immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import ipaddress
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

V4 = "v4"
V6 = "v6"

_FAMILY_BITS = {V4: 32, V6: 128}


def family_bits(family: str) -> int:
    """Address width in bits for a family tag ("v4" or "v6")."""
    return _FAMILY_BITS[family]


@dataclass(frozen=True, slots=True)
class IpPrefix:
    """An address-family-tagged network prefix.

    `addr` is the network address as an integer. Host bits are cleared on
    construction, so every IpPrefix is canonical; use `parse_prefix` when
    you need to know whether the input had host bits set.
    """

    family: str
    addr: int
    length: int

    def __post_init__(self) -> None:
        width = _FAMILY_BITS.get(self.family)
        if width is None:
            raise ValueError(f"unknown address family {self.family!r}")
        if not 0 <= self.length <= width:
            raise ValueError(f"prefix length {self.length} out of range for {self.family}")
        if self.addr < 0 or self.addr >> width:
            raise ValueError(f"address {self.addr:#x} does not fit {self.family}")
        host = width - self.length
        canonical = (self.addr >> host) << host
        if canonical != self.addr:
            object.__setattr__(self, "addr", canonical)

    @classmethod
    def parse(cls, text: str) -> "IpPrefix":
        """Parse "a.b.c.d/len" or "h:h::/len"; raises ValueError on malformed input."""
        return parse_prefix(text)[0]

    def __str__(self) -> str:
        if self.family == V4:
            return f"{ipaddress.IPv4Address(self.addr)}/{self.length}"
        return f"{ipaddress.IPv6Address(self.addr)}/{self.length}"


def parse_prefix(text: str) -> tuple[IpPrefix, bool]:
    """Parse a prefix string; returns (prefix, had_host_bits).

    The prefix comes back canonical (host bits cleared); the flag reports
    whether clearing was needed, so parsers can count the warning.
    """
    addr_part, sep, len_part = text.strip().partition("/")
    if not sep:
        raise ValueError(f"missing prefix length in {text!r}")
    length = int(len_part)
    address = ipaddress.ip_address(addr_part)
    family = V4 if address.version == 4 else V6
    raw = int(address)
    prefix = IpPrefix(family, raw, length)
    return prefix, prefix.addr != raw


def covers(a: IpPrefix, b: IpPrefix) -> bool:
    """True when a's address block contains b's.

    Requires the same family (cross-family input returns False), a no
    longer than b, and b agreeing with a on a's first `length` bits.
    Total function: never raises on canonical inputs.
    """
    if a.family != b.family or a.length > b.length:
        return False
    shift = _FAMILY_BITS[a.family] - a.length
    return (b.addr >> shift) == (a.addr >> shift)


@dataclass(frozen=True, slots=True)
class AsPath:
    """An ordered AS-number sequence; the last hop is the origin AS.

    `contains_set` marks paths carrying an aggregated AS_SET segment; such
    routes have no single well-defined origin and are excluded from
    validation and classification upstream. Set members are flattened into
    `hops` (segment boundaries are not modeled).
    """

    hops: tuple[int, ...]
    contains_set: bool = False

    def __post_init__(self) -> None:
        if not self.hops:
            raise ValueError("AS path must have at least one hop")

    @property
    def origin(self) -> int:
        return self.hops[-1]

    def collapsed(self) -> tuple[int, ...]:
        """Hops with consecutive duplicates (prepending) removed."""
        hops = self.hops
        out = [hops[0]]
        for hop in hops[1:]:
            if hop != out[-1]:
                out.append(hop)
        return tuple(out)


@dataclass(frozen=True, slots=True)
class RouteEntry:
    """One routing-table line: a (prefix, AS path) pair plus the collecting peer."""

    prefix: IpPrefix
    path: AsPath
    peer: int | None = None


@dataclass(frozen=True, slots=True)
class RoaRecord:
    """A validated route origin authorization.

    Binds an AS number to a prefix with a maximum announced length under a
    trust anchor. `prefix.length <= max_length <= family width` is enforced.
    """

    asn: int
    prefix: IpPrefix
    max_length: int
    trust_anchor: str = ""

    def __post_init__(self) -> None:
        if not self.prefix.length <= self.max_length <= _FAMILY_BITS[self.prefix.family]:
            raise ValueError(
                f"max_length {self.max_length} outside "
                f"[{self.prefix.length}, {_FAMILY_BITS[self.prefix.family]}]"
            )


class ValidationState(Enum):
    UNKNOWN = "unknown"
    VALID = "valid"
    INVALID = "invalid"


class InvalidClass(Enum):
    """False-alarm categories for invalid (prefix, origin) pairs.

    The values are the stable kebab-case identifiers used in reports and
    the query API.
    """

    LOAD_BALANCING = "load-balancing"
    FAILING_TO_AGGREGATE = "failing-to-aggregate"
    MULTIHOMING = "multihoming"
    SINGLEHOMING = "singlehoming"
    PROVIDER = "provider"
    TRANSFER = "transfer"
    OTHER = "other"


class RelationshipKind(Enum):
    PROVIDER_OF = "provider-of"  # directional: a is provider of b
    PEER_WITH = "peer-with"      # symmetric


def ratio_pct(count: int, total: int, places: int) -> float:
    """count/total as a percentage, rounded half-up to `places` decimals.

    Exact rational arithmetic before rounding; total of zero reports 0.0
    rather than erroring.
    """
    if total == 0:
        return 0.0
    quantum = Decimal(1).scaleb(-places)
    return float((Decimal(count * 100) / Decimal(total)).quantize(quantum, rounding=ROUND_HALF_UP))
