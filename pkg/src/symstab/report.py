"""Batch classification and report serialization (JSON document and CSV table)."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .catalog import Catalog, CatalogEntry, build_model
from .stability import PRINTED_WEYL_BOUND, StabilityReport, classify

__all__ = ["EntryResult", "ReportDocument", "analyze_entry", "classify_catalog", "CSV_COLUMNS", "to_csv", "to_json"]

CSV_COLUMNS = ("id", "n", "p", "lambda1_over_s", "s_sq_over_R_sq", "a", "b", "c", "Q_lambda1",
               "verdict", "expected", "match")

WEYL_BOUND_NOTE = (
    f"The printed constant {PRINTED_WEYL_BOUND} is not the bound these models satisfy: "
    "s^2/|R|^2 <= n(n-1)/2 with equality exactly for constant curvature, and every "
    "compact model here exceeds the printed value."
)


def _is_half_dim(policy: str) -> bool:
    return str(policy).strip() == "half-dim"


@dataclass
class EntryResult:
    entry: CatalogEntry
    report: StabilityReport
    compared: bool

    @property
    def expected(self) -> str | None:
        return self.entry.expected_verdict if self.compared else None

    @property
    def match(self) -> bool | None:
        if self.expected is None:
            return None
        return self.report.verdict.value == self.expected

    def as_dict(self) -> dict:
        d = self.report.as_dict()
        d["provenance"] = dict(d["provenance"], catalog=self.entry.provenance, note=self.entry.note)
        d["expected"] = self.expected
        d["match"] = self.match
        return d


def analyze_entry(entry: CatalogEntry, p, compare: bool | None = None) -> EntryResult:
    """Classify one catalog entry.  Expected verdicts apply to the ``half-dim`` policy only."""
    report = classify(build_model(entry), p)
    if compare is None:
        compare = _is_half_dim(p)
    return EntryResult(entry, report, bool(compare and entry.expected_verdict is not None))


@dataclass
class ReportDocument:
    p_policy: str
    catalog_path: str
    results: list[EntryResult]
    elapsed_s: float
    verification: list[dict] | None = None
    version: str = __version__
    notes: list[str] = field(default_factory=lambda: [WEYL_BOUND_NOTE])

    @property
    def mismatches(self) -> list[str]:
        return [r.entry.id for r in self.results if r.match is False]

    def as_dict(self) -> dict:
        return {
            "tool": "symstab",
            "version": self.version,
            "p_policy": self.p_policy,
            "catalog": self.catalog_path,
            "entries": [r.as_dict() for r in self.results],
            "summary": {
                "total": len(self.results),
                "compared": sum(r.match is not None for r in self.results),
                "mismatches": self.mismatches,
            },
            "verification": self.verification,
            "timing": {"elapsed_s": self.elapsed_s},
            "notes": list(self.notes),
        }


def classify_catalog(catalog: Catalog, p="half-dim", jobs: int = 1) -> ReportDocument:
    """Classify every entry, keeping catalog order."""
    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda e: analyze_entry(e, p), catalog.entries))
    else:
        results = [analyze_entry(e, p) for e in catalog]
    return ReportDocument(str(p), catalog.path, results, time.perf_counter() - start)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def to_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in doc.results:
        rep = r.report
        writer.writerow([_fmt(v) for v in (
            rep.space_id, rep.n, rep.p, rep.lambda1_over_s, rep.weyl_ratio,
            rep.coeffs.a, rep.coeffs.b, rep.coeffs.c, rep.q_lambda1,
            rep.verdict.value, r.expected, r.match,
        )])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"
