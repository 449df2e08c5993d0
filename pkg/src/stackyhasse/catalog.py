"""Scan harness: decide and cross-validate every form in a coefficient box.

Rows are written as CSV in lexicographic (a, b, c) order.  Forms are
grouped by `symmetry_key` so that an exhausted search is shared between
symmetric forms; the groups are independent and can run on any number
of worker processes without changing the output.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .arith import Place
from .decider import Outcome, Verdict, verify_obstruction
from .oracle import Consistency, CrossValidation, cross_validate, symmetry_key

__all__ = [
    "CatalogRow",
    "ScanJob",
    "ScanSummary",
    "CATALOG_FIELDS",
    "parse_range",
    "row_from_validation",
    "render_catalog",
    "parse_catalog",
    "run_scan",
    "verdict_record",
]

log = logging.getLogger(__name__)

CATALOG_FIELDS = (
    "a", "b", "c", "q", "verdict", "witness_class", "witness_point",
    "beh_order", "epsilon", "status",
)


def _format_epsilon(eps: dict) -> str:
    return ";".join(f"{v}:{e:+d}" for v, e in eps.items())


def _parse_epsilon(text: str) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(";"):
        place, value = item.split(":")
        out[Place.parse(place)] = int(value)
    return out


@dataclass(frozen=True)
class CatalogRow:
    a: int
    b: int
    c: int
    q: int
    verdict: str
    witness_class: int | None = None
    witness_point: tuple[int, int] | None = None
    beh_order: int | None = None
    epsilon: dict = field(default_factory=dict)
    status: str = Consistency.CONSISTENT.value

    def to_record(self) -> dict[str, str]:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "q": str(self.q),
            "verdict": self.verdict,
            "witness_class": "" if self.witness_class is None else str(self.witness_class),
            "witness_point": "" if self.witness_point is None else "{}:{}".format(*self.witness_point),
            "beh_order": "" if self.beh_order is None else str(self.beh_order),
            "epsilon": _format_epsilon(self.epsilon),
            "status": self.status,
        }

    @classmethod
    def from_record(cls, rec: dict[str, str]) -> "CatalogRow":
        point = None
        if rec["witness_point"]:
            x, y = rec["witness_point"].split(":")
            point = (int(x), int(y))
        return cls(
            int(rec["a"]), int(rec["b"]), int(rec["c"]), int(rec["q"]),
            rec["verdict"],
            int(rec["witness_class"]) if rec["witness_class"] else None,
            point,
            int(rec["beh_order"]) if rec["beh_order"] else None,
            _parse_epsilon(rec["epsilon"]),
            rec["status"],
        )


def row_from_validation(cv: CrossValidation) -> CatalogRow:
    v = cv.verdict
    point = v.witness_point
    if point is None and cv.report is not None:
        hit = cv.report.found or cv.report.stacky_hit
        point = None if hit is None else (hit.x, hit.y)
    return CatalogRow(
        v.form.a, v.form.b, v.form.c, v.q, v.outcome.value,
        None if v.witness_class is None else v.witness_class.value,
        point, v.beh_order, dict(v.epsilon), cv.status.value,
    )


def render_catalog(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CATALOG_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record())
    return buf.getvalue()


def parse_catalog(text: str) -> list[CatalogRow]:
    return [CatalogRow.from_record(rec) for rec in csv.DictReader(io.StringIO(text))]


def verdict_record(verdict: Verdict, height_bound: int | None = None) -> dict:
    """Structured single-form record with stable field names."""
    x, y = verdict.witness_point if verdict.witness_point else (None, None)
    eps = {("inf" if v.is_real else str(v.prime)): e for v, e in verdict.epsilon.items()}
    return {
        "a": verdict.form.a,
        "b": verdict.form.b,
        "c": verdict.form.c,
        "q": verdict.q,
        "outcome": verdict.outcome.value,
        "witness_class": None if verdict.witness_class is None else verdict.witness_class.value,
        "witness_x": x,
        "witness_y": y,
        "beh_order": verdict.beh_order,
        "epsilon": eps,
        "height_bound": height_bound,
    }


# ---------------------------------------------------------------------------
# Scanning
# ---------------------------------------------------------------------------


def parse_range(text: str) -> tuple[int, int]:
    """``"L:U"`` (inclusive) or a single integer."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ValueError(f"expected a range 'L:U', got {text!r}") from None
    return lo, hi


@dataclass(frozen=True)
class ScanJob:
    a_range: tuple[int, int]
    b_range: tuple[int, int]
    c_range: tuple[int, int]
    height: int
    out: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("height bound must be at least 1")
        if self.workers < 1:
            raise ValueError("need at least one worker")

    def forms(self):
        spans = [range(lo, hi + 1) for lo, hi in (self.a_range, self.b_range, self.c_range)]
        return itertools.product(*spans)


@dataclass
class ScanSummary:
    total: int = 0
    exists: int = 0
    obstruction: int = 0
    degenerate: int = 0
    unresolved: int = 0
    contradiction: int = 0
    reverified: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(vars(self))

    def __str__(self):
        return json.dumps(self.as_dict())


def _run_group(forms: list[tuple[int, int, int]], H: int) -> list[tuple[CatalogRow | None, bool]]:
    cache: dict = {}
    out = []
    for f in forms:
        cv = cross_validate(f, H, cache=cache)
        if cv.status is Consistency.DEGENERATE:
            out.append((None, False))
            continue
        row = row_from_validation(cv)
        ok = True
        if cv.verdict.outcome is Outcome.OBSTRUCTION:
            ok = verify_obstruction(f, cv.verdict.witness_class)
        out.append((row, ok))
    return out


def _groups(job: ScanJob) -> list[list[tuple[int, int, int]]]:
    by_key = defaultdict(list)
    for f in job.forms():
        if f[1] * f[1] - 4 * f[0] * f[2] == 0:
            by_key[("degenerate",)].append(f)
        else:
            by_key[symmetry_key(f)].append(f)
    # largest groups first keeps the pool busy
    return sorted(by_key.values(), key=lambda g: (-len(g), g[0]))


def run_scan(job: ScanJob) -> tuple[list[CatalogRow], ScanSummary]:
    # fail on an unwritable path before doing any work
    handle = open(job.out, "w") if job.out is not None else None
    try:
        rows, summary = _scan(job)
        if handle is not None:
            handle.write(render_catalog(rows))
    finally:
        if handle is not None:
            handle.close()
    return rows, summary


def _scan(job: ScanJob) -> tuple[list[CatalogRow], ScanSummary]:
    groups = _groups(job)
    results = []
    if job.workers == 1 or len(groups) <= 1:
        for g in groups:
            results.extend(_run_group(g, job.height))
    else:
        with ProcessPoolExecutor(max_workers=job.workers) as pool:
            futures = [pool.submit(_run_group, g, job.height) for g in groups]
            for fut in futures:
                results.extend(fut.result())

    summary = ScanSummary()
    rows = []
    for row, ok in results:
        summary.total += 1
        if row is None:
            summary.degenerate += 1
            continue
        rows.append(row)
        if row.verdict == Outcome.EXISTS.value:
            summary.exists += 1
        elif row.verdict == Outcome.OBSTRUCTION.value:
            summary.obstruction += 1
            summary.reverified += ok
        if row.status == Consistency.UNRESOLVED.value:
            summary.unresolved += 1
        elif row.status == Consistency.CONTRADICTION.value:
            summary.contradiction += 1
            log.error("contradiction at %s,%s,%s", row.a, row.b, row.c)
    rows.sort(key=lambda r: (r.a, r.b, r.c))
    return rows, summary
