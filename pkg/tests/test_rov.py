"""Three-state validation semantics and table counting modes."""

import random

import pytest

from rovclass.forest import RoaIndex
from rovclass.model import ValidationState
from rovclass.rov import validate, validate_table

from conftest import mk_prefix, mk_roa, mk_route, oracle_validate, random_v4_in


class TestValidate:
    def test_too_specific_is_invalid(self):
        # announced /24 exceeds the ROA's max length 23
        index = RoaIndex([mk_roa(64496, "123.121.0.0/23", 23)])
        outcome = validate(mk_route("123.121.0.0/24", 65001, 64496), index)
        assert outcome.state is ValidationState.INVALID
        assert len(outcome.covering) == 1 and outcome.matching == ()

    def test_origin_mismatch_is_invalid(self):
        index = RoaIndex([mk_roa(64500, "123.11.0.0/23", 24)])
        outcome = validate(mk_route("123.11.0.0/24", 65001, 64512), index)
        assert outcome.state is ValidationState.INVALID

    def test_no_cover_is_unknown(self):
        index = RoaIndex([mk_roa(64500, "123.11.0.0/23", 24)])
        outcome = validate(mk_route("198.51.100.0/24", 64500), index)
        assert outcome.state is ValidationState.UNKNOWN
        assert outcome.covering == ()

    def test_exact_match_within_maxlen_is_valid(self):
        index = RoaIndex([mk_roa(64500, "123.11.0.0/23", 24)])
        outcome = validate(mk_route("123.11.0.0/23", 65001, 64500), index)
        assert outcome.state is ValidationState.VALID
        assert outcome.matching == outcome.covering

    def test_any_matching_roa_wins(self):
        # one covering ROA rejects, the other authorizes: still Valid
        index = RoaIndex([
            mk_roa(64999, "10.0.0.0/8", 8),
            mk_roa(64500, "10.0.0.0/16", 24),
        ])
        outcome = validate(mk_route("10.0.0.0/24", 65001, 64500), index)
        assert outcome.state is ValidationState.VALID
        assert len(outcome.covering) == 2 and len(outcome.matching) == 1

    def test_as_set_route_rejected(self):
        index = RoaIndex([])
        with pytest.raises(ValueError):
            validate(mk_route("10.0.0.0/8", 65001, 64500, contains_set=True), index)

    def test_outcome_invariants_on_random_instances(self):
        rng = random.Random(2024)
        records = [
            mk_roa(rng.randrange(64500, 64600), str(random_v4_in(rng, "10.0.0.0/8", 10, 22)),
                   rng.randint(22, 26))
            for _ in range(300)
        ]
        index = RoaIndex(records)
        for _ in range(2000):
            route = mk_route(str(random_v4_in(rng, "10.0.0.0/8", 8, 28)),
                             65001, rng.randrange(64500, 64600))
            outcome = validate(route, index)
            assert (outcome.state is ValidationState.UNKNOWN) == (not outcome.covering)
            assert (outcome.state is ValidationState.VALID) == bool(outcome.matching)
            if outcome.state is ValidationState.INVALID:
                assert outcome.covering and not outcome.matching
            assert outcome.state is oracle_validate(route, records)


class TestMonotonicity:
    @staticmethod
    def _random_instance(rng):
        records = [
            mk_roa(rng.randrange(64500, 64520), str(random_v4_in(rng, "10.0.0.0/8", 10, 22)),
                   rng.randint(22, 25))
            for _ in range(rng.randint(1, 20))
        ]
        route = mk_route(str(random_v4_in(rng, "10.0.0.0/8", 8, 26)),
                         65001, rng.randrange(64500, 64520))
        return route, records

    def test_adding_roa_never_demotes_valid(self):
        rng = random.Random(55)
        for _ in range(300):
            route, records = self._random_instance(rng)
            before = validate(route, RoaIndex(records)).state
            extra = mk_roa(rng.randrange(64500, 64520),
                           str(random_v4_in(rng, "10.0.0.0/8", 8, 24)), rng.randint(24, 28))
            after = validate(route, RoaIndex(records + [extra])).state
            if before is ValidationState.VALID:
                assert after is ValidationState.VALID

    def test_removing_roa_never_promotes_unknown(self):
        rng = random.Random(56)
        for _ in range(300):
            route, records = self._random_instance(rng)
            before = validate(route, RoaIndex(records)).state
            removed = list(records)
            removed.pop(rng.randrange(len(removed)))
            after = validate(route, RoaIndex(removed)).state
            if before is ValidationState.UNKNOWN:
                assert after is ValidationState.UNKNOWN


class TestValidateTable:
    def test_all_valid_fixture(self):
        index = RoaIndex([mk_roa(64500, "10.0.0.0/8", 24)])
        routes = [mk_route(f"10.0.{i}.0/24", 65001, 64500) for i in range(10)]
        table = validate_table(routes, index)
        assert (table.unknown, table.valid, table.invalid) == (0, 10, 0)

    def test_empty_table_reports_zero_percentages(self):
        table = validate_table([], RoaIndex([]))
        assert table.total == 0
        assert table.percentages() == {"unknown": 0.0, "valid": 0.0, "invalid": 0.0}

    def test_distinct_mode_counts_pairs_once(self):
        index = RoaIndex([])
        routes = [
            mk_route("10.0.0.0/24", 65001, 64500),
            mk_route("10.0.0.0/24", 65002, 64500),  # same (prefix, origin), other path
            mk_route("10.0.0.0/24", 65002, 64501),  # same prefix, new origin
        ]
        table = validate_table(routes, index, mode="distinct")
        assert table.unknown == 2 and table.duplicates_skipped == 1

    def test_raw_mode_counts_lines(self):
        index = RoaIndex([])
        routes = [mk_route("10.0.0.0/24", 64500)] * 3
        table = validate_table(routes, index, mode="raw")
        assert table.unknown == 3

    def test_as_set_routes_counted_separately(self):
        index = RoaIndex([])
        routes = [
            mk_route("10.0.0.0/24", 64500),
            mk_route("10.0.1.0/24", 64500, 64501, contains_set=True),
        ]
        table = validate_table(routes, index)
        assert table.total == 1 and table.as_set_excluded == 1

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            validate_table([], RoaIndex([]), mode="lines")
