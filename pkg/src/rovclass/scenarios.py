"""Self-contained synthetic fixtures for each false-alarm scenario.

Each scenario writes rib.txt, roas.csv, and as-rel.txt in the ingest
formats plus expected.json holding the ground-truth class per invalid
pair. ASNs are relabeled into the private range 64512-65534 and prefixes
into the 198.18.0.0/15 benchmarking block per seed, so a fixture stays
inert even if it ever leaked into a live session. Same (name, seed) means
byte-identical output.

Scenario topologies keep the minimal AS count of the situation they
reproduce: an origin and its providers as seen from one observer, with a
deliberately stale or too-short ROA making the announcement Invalid.
"""

from __future__ import annotations

import ipaddress
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .ingest import (
    ROA_HEADER,
    format_relationship_line,
    format_rib_line,
    format_roa_row,
)
from .model import AsPath, InvalidClass, IpPrefix, RelationshipKind, RoaRecord, RouteEntry, V4

CLASS_SCENARIOS = tuple(c.value for c in InvalidClass if c is not InvalidClass.OTHER)
CONTROL_SCENARIOS = ("valid-control", "unknown-control", "hijack-control")
SCENARIO_NAMES = CLASS_SCENARIOS + CONTROL_SCENARIOS

_POOL_BASE = int(ipaddress.IPv4Address("198.18.0.0"))  # /15 benchmarking block
_POOL_SLASH23_BLOCKS = 1 << (23 - 15)
_FIXED_TIMESTAMP = 1526428800  # constant so fixtures carry no wall-clock content
_OBSERVER_IP = "192.0.2.1"


@dataclass(frozen=True)
class ScenarioSpec:
    """A scenario name plus the seed driving ASN/prefix relabeling."""

    name: str
    seed: int = 0

    def __post_init__(self) -> None:
        if self.name not in SCENARIO_NAMES:
            raise ValueError(f"unknown scenario {self.name!r}; choose from {SCENARIO_NAMES}")


class ScenarioFixture:
    """Accumulates one scenario's routes, ROAs, edges, and expected labels."""

    def __init__(self, name: str, seed: int) -> None:
        rng = random.Random(f"{name}:{seed}")
        self._asns = iter(rng.sample(range(64512, 65535), 16))
        self._blocks = iter(rng.sample(range(_POOL_SLASH23_BLOCKS), 8))
        self.observer = self.asn()
        self.routes: list[RouteEntry] = []
        self.roas: list[RoaRecord] = []
        self.edges: list[tuple[int, int, RelationshipKind]] = []
        self.expected: list[dict] = []

    def asn(self) -> int:
        return next(self._asns)

    def slash23(self) -> IpPrefix:
        return IpPrefix(V4, _POOL_BASE + (next(self._blocks) << 9), 23)

    @staticmethod
    def subnet24(block: IpPrefix, which: int) -> IpPrefix:
        return IpPrefix(V4, block.addr + (which << 8), 24)

    def route(self, prefix: IpPrefix, *path_hops: int) -> None:
        self.routes.append(RouteEntry(prefix, AsPath(tuple(path_hops)), self.observer))

    def roa(self, asn: int, prefix: IpPrefix, max_length: int, ta: str = "TA-LAB") -> None:
        self.roas.append(RoaRecord(asn, prefix, max_length, ta))

    def provider(self, provider_asn: int, customer_asn: int) -> None:
        self.edges.append((provider_asn, customer_asn, RelationshipKind.PROVIDER_OF))

    def expect(self, prefix: IpPrefix, origin: int, category: InvalidClass) -> None:
        self.expected.append({"prefix": str(prefix), "origin": origin, "class": category.value})


def _load_balancing(fx: ScenarioFixture) -> None:
    # Aggregate plus two specifics through different providers; ROA caps at /23.
    origin, prov_a, prov_b = fx.asn(), fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(origin, block, 23)
    fx.provider(prov_a, origin)
    fx.provider(prov_b, origin)
    fx.route(block, prov_a, origin)
    low, high = fx.subnet24(block, 0), fx.subnet24(block, 1)
    fx.route(low, prov_a, origin)
    fx.route(high, prov_b, origin)
    fx.expect(low, origin, InvalidClass.LOAD_BALANCING)
    fx.expect(high, origin, InvalidClass.LOAD_BALANCING)


def _failing_to_aggregate(fx: ScenarioFixture) -> None:
    # A specific announced on exactly the parent's export path.
    origin, prov = fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(origin, block, 23)
    fx.provider(prov, origin)
    fx.route(block, prov, origin)
    specific = fx.subnet24(block, 0)
    fx.route(specific, prov, origin)
    fx.expect(specific, origin, InvalidClass.FAILING_TO_AGGREGATE)


def _multihoming(fx: ScenarioFixture) -> None:
    # Provider-assigned subprefix announced by a multihomed customer via the other provider.
    holder, customer, other = fx.asn(), fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(holder, block, 24)
    fx.provider(holder, customer)
    fx.provider(other, customer)
    fx.route(block, holder)
    sub = fx.subnet24(block, 0)
    fx.route(sub, other, customer)
    fx.expect(sub, customer, InvalidClass.MULTIHOMING)


def _singlehoming(fx: ScenarioFixture) -> None:
    # Same assignment, but the customer has a single provider and routes through it.
    holder, customer = fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(holder, block, 24)
    fx.provider(holder, customer)
    fx.route(block, holder)
    sub = fx.subnet24(block, 0)
    fx.route(sub, holder, customer)
    fx.expect(sub, customer, InvalidClass.SINGLEHOMING)


def _provider(fx: ScenarioFixture) -> None:
    # Provider propagates the customer's prefix under its own origin AS.
    customer, provider_asn = fx.asn(), fx.asn()
    block = fx.slash23()
    assigned = fx.subnet24(block, 0)
    fx.roa(customer, assigned, 24)
    fx.provider(provider_asn, customer)
    fx.route(assigned, provider_asn)
    fx.expect(assigned, provider_asn, InvalidClass.PROVIDER)


def _transfer(fx: ScenarioFixture) -> None:
    # Address space moved to a new holder; the old holder's ROA was never revoked.
    old_holder, new_holder, transit = fx.asn(), fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(old_holder, block, 24)
    fx.provider(transit, new_holder)
    moved = fx.subnet24(block, 0)
    fx.route(moved, transit, new_holder)
    fx.expect(moved, new_holder, InvalidClass.TRANSFER)


def _valid_control(fx: ScenarioFixture) -> None:
    origin, prov = fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(origin, block, 24)
    fx.provider(prov, origin)
    fx.route(block, prov, origin)
    fx.route(fx.subnet24(block, 1), prov, origin)


def _unknown_control(fx: ScenarioFixture) -> None:
    origin, prov = fx.asn(), fx.asn()
    block = fx.slash23()
    fx.provider(prov, origin)
    fx.route(fx.subnet24(block, 0), prov, origin)


def _hijack_control(fx: ScenarioFixture) -> None:
    # More-specific announced by an AS with no relation to the ROA holder.
    # Indistinguishable from a transfer by the rules; the fixture records
    # the rule-table outcome, and callers should treat {transfer, other}
    # as the acceptable band for this control.
    victim, prov, hijacker, upstream = fx.asn(), fx.asn(), fx.asn(), fx.asn()
    block = fx.slash23()
    fx.roa(victim, block, 23)
    fx.provider(prov, victim)
    fx.provider(upstream, hijacker)
    fx.route(block, prov, victim)
    grabbed = fx.subnet24(block, 0)
    fx.route(grabbed, upstream, hijacker)
    fx.expect(grabbed, hijacker, InvalidClass.TRANSFER)


_BUILDERS = {
    InvalidClass.LOAD_BALANCING.value: _load_balancing,
    InvalidClass.FAILING_TO_AGGREGATE.value: _failing_to_aggregate,
    InvalidClass.MULTIHOMING.value: _multihoming,
    InvalidClass.SINGLEHOMING.value: _singlehoming,
    InvalidClass.PROVIDER.value: _provider,
    InvalidClass.TRANSFER.value: _transfer,
    "valid-control": _valid_control,
    "unknown-control": _unknown_control,
    "hijack-control": _hijack_control,
}


def build_fixture(spec: ScenarioSpec) -> ScenarioFixture:
    """Build a scenario's content in memory (used by generate and by tests)."""
    fx = ScenarioFixture(spec.name, spec.seed)
    _BUILDERS[spec.name](fx)
    return fx


def generate(spec: ScenarioSpec, out_dir: str | Path) -> dict:
    """Write a scenario fixture into a directory and return its manifest.

    Emits rib.txt, roas.csv, as-rel.txt, and expected.json; running the
    full pipeline over the first three must reproduce expected.json.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fx = build_fixture(spec)

    rib_path = out / "rib.txt"
    rib_lines = [
        format_rib_line(route, timestamp=_FIXED_TIMESTAMP, peer_ip=_OBSERVER_IP)
        for route in fx.routes
    ]
    rib_path.write_text("".join(line + "\n" for line in rib_lines), encoding="utf-8")

    roa_path = out / "roas.csv"
    roa_lines = [",".join(ROA_HEADER)] + [format_roa_row(record) for record in fx.roas]
    roa_path.write_text("".join(line + "\n" for line in roa_lines), encoding="utf-8")

    rel_path = out / "as-rel.txt"
    rel_lines = [f"# scenario {spec.name} seed {spec.seed}"]
    rel_lines += [format_relationship_line(edge) for edge in fx.edges]
    rel_path.write_text("".join(line + "\n" for line in rel_lines), encoding="utf-8")

    expected = sorted(fx.expected, key=lambda e: (e["prefix"], e["origin"]))
    expected_path = out / "expected.json"
    expected_path.write_text(json.dumps(expected, indent=2) + "\n", encoding="utf-8")

    return {
        "name": spec.name,
        "seed": spec.seed,
        "out_dir": str(out),
        "rib": str(rib_path),
        "roas": str(roa_path),
        "relationships": str(rel_path),
        "expected_path": str(expected_path),
        "expected": expected,
    }
