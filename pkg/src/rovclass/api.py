"""Read-only HTTP query service over classification reports.

Mirrors the published-lookup site: operators ask about a prefix (theirs or
an aggregate of theirs) and get every flagged pair it covers, with class,
ROAs, and stability. No endpoint mutates the store; swapping in a newer
report is an atomic reference replacement between requests.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, ConfigDict, Field

from .model import IpPrefix, InvalidClass, covers
from .report import ClassificationReport

_CLASS_NAMES = {category.value for category in InvalidClass}


class RoaOut(BaseModel):
    asn: int
    prefix: str
    max_length: int
    trust_anchor: str


class PairOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    prefix: str
    origin: int
    category: str = Field(alias="class")
    matched_rule_row: int | None = None
    covering_roas: list[RoaOut] = []
    relgraph_miss: bool = False
    probe_status: str | None = None
    long_lived: bool | None = None


class SummaryOut(BaseModel):
    date: str | None
    validation_summary: dict
    per_class: dict[str, dict]
    stability: dict | None = None


class PrefixPairsOut(BaseModel):
    query: str
    pairs: list[PairOut]


class ClassPairsOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    category: str = Field(alias="class")
    page: int
    per_page: int
    total: int
    pairs: list[PairOut]


class ReportStore:
    """Holds the current report plus parsed pair prefixes for coverage queries."""

    _current: tuple[ClassificationReport, list[tuple[IpPrefix, dict]]]

    def __init__(self, report: ClassificationReport) -> None:
        self.swap(report)

    def swap(self, report: ClassificationReport) -> None:
        parsed = [(IpPrefix.parse(pair["prefix"]), pair) for pair in report.pairs]
        self._current = (report, parsed)  # single reference write: atomic for readers

    @property
    def report(self) -> ClassificationReport:
        return self._current[0]

    @property
    def indexed_pairs(self) -> list[tuple[IpPrefix, dict]]:
        return self._current[1]


def _bad_request(code: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"code": code, "message": message})


def create_app(store: ReportStore) -> FastAPI:
    app = FastAPI(title="rovclass query service", version="1.0")

    @app.get("/v1/summary", response_model=SummaryOut)
    def summary() -> SummaryOut:
        report = store.report
        return SummaryOut(
            date=report.date,
            validation_summary=report.validation_summary,
            per_class=report.per_class,
            stability=report.stability,
        )

    @app.get("/v1/prefix/{prefix_query:path}", response_model=PrefixPairsOut)
    def pairs_under_prefix(prefix_query: str) -> PrefixPairsOut:
        try:
            query = IpPrefix.parse(prefix_query)
        except ValueError as exc:
            raise _bad_request("invalid-prefix", f"{prefix_query!r}: {exc}") from None
        pairs = [
            PairOut.model_validate(pair)
            for prefix, pair in store.indexed_pairs
            if covers(query, prefix)
        ]
        return PrefixPairsOut(query=str(query), pairs=pairs)

    @app.get("/v1/class/{name}", response_model=ClassPairsOut)
    def pairs_of_class(
        name: str,
        page: int = Query(1, ge=1),
        per_page: int = Query(100, ge=1, le=1000),
    ) -> ClassPairsOut:
        if name not in _CLASS_NAMES:
            raise _bad_request("invalid-class", f"{name!r} is not one of {sorted(_CLASS_NAMES)}")
        matching = [pair for pair in store.report.pairs if pair["class"] == name]
        start = (page - 1) * per_page
        window = matching[start:start + per_page]
        return ClassPairsOut(
            category=name,
            page=page,
            per_page=per_page,
            total=len(matching),
            pairs=[PairOut.model_validate(pair) for pair in window],
        )

    return app


def serve(store: ReportStore, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the query service until interrupted (bind failures propagate)."""
    import uvicorn

    uvicorn.run(create_app(store), host=host, port=port, log_level="warning")
