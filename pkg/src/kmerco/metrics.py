"""Evaluation quantities: dataset rates, trustworthy rate, inserted-to-ignored, throughput.

A :class:`RunReport` serializes to ``key = value`` lines followed by a one-row
CSV block; :func:`parse_reports` reads the key-value part back.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from typing import NamedTuple

CSV_COLUMNS = ("dataset", "K", "tau", "alpha", "k_h", "size_bytes", "total", "distinct",
               "trustworthy", "erroneous", "trustworthy_rate", "insert_per_sec", "elapsed_s")


def trustworthy_rate(technique_trustworthy: int, oracle_trustworthy: int,
                     total_kmers: int) -> float:
    """Signed excess of trustworthy k-mers over the exact count, per total k-mer.

    Positive: erroneous k-mers promoted. Negative: trustworthy k-mers lost.
    """
    if total_kmers <= 0:
        raise ValueError("total_kmers must be positive")
    return (technique_trustworthy - oracle_trustworthy) / total_kmers


class IgnoredRatio(NamedTuple):
    inserted: int
    ignored: int
    inserted_to_ignored: float  # |inserted| / |ignored|, 0 when nothing was ignored
    ignored_to_inserted: float  # |ignored| / |inserted|, the convention of the published plots


def inserted_to_ignored(inserted: int, ignored: int) -> IgnoredRatio:
    """Both orientations of the inserted/ignored ratio; zero when nothing is ignored.

    >>> inserted_to_ignored(26154855, 14858203).ignored_to_inserted  # doctest: +ELLIPSIS
    0.568085...
    """
    if inserted < 0 or ignored < 0:
        raise ValueError("counts must be non-negative")
    forward = inserted / ignored if ignored else 0.0
    backward = ignored / inserted if ignored and inserted else 0.0
    return IgnoredRatio(inserted, ignored, forward, backward)


def throughput(inserted: int, elapsed_seconds: float) -> float:
    if elapsed_seconds <= 0:
        raise ValueError(f"elapsed time must be positive, got {elapsed_seconds}")
    return inserted / elapsed_seconds


def dataset_rates(total: int, distinct: int, trustworthy: int) -> dict[str, float]:
    """Distinct/trustworthy/erroneous rates of a dataset from its exact counts.

    The erroneous rate comes in three normalizations: over total k-mers (the
    defining formula), over distinct k-mers, and ``1 - trustworthy/total``
    (what the published dataset plots tabulate).
    """
    if total <= 0:
        zero = 0.0
        return dict(distinct_rate=zero, trustworthy_rate_of_dataset=zero,
                    erroneous_rate_of_dataset=zero, erroneous_rate_of_distinct=zero,
                    erroneous_rate_complement=zero)
    erroneous = distinct - trustworthy
    return dict(
        distinct_rate=distinct / total,
        trustworthy_rate_of_dataset=trustworthy / total,
        erroneous_rate_of_dataset=erroneous / total,
        erroneous_rate_of_distinct=erroneous / distinct if distinct else 0.0,
        erroneous_rate_complement=1.0 - trustworthy / total,
    )


@dataclass
class RunReport:
    dataset: str
    K: int
    tau: int
    X: int
    Y: int
    alpha: int
    k_h: int
    seed: int
    size_bytes: int
    total: int
    distinct: int
    trustworthy: int
    erroneous: int
    overflow_events: int
    oracle_distinct: int
    oracle_trustworthy: int
    oracle_erroneous: int
    exact_match_rate: float
    undercounted: int
    distinct_rate: float
    trustworthy_rate_of_dataset: float
    erroneous_rate_of_dataset: float
    erroneous_rate_of_distinct: float
    erroneous_rate_complement: float
    trustworthy_rate: float
    inserted: int
    ignored: int
    inserted_to_ignored: float
    ignored_to_inserted: float
    insertions_per_second: float
    elapsed_seconds: float

    def csv_row(self) -> list[object]:
        return [self.dataset, self.K, self.tau, self.alpha, self.k_h, self.size_bytes,
                self.total, self.distinct, self.trustworthy, self.erroneous,
                self.trustworthy_rate, self.insertions_per_second, self.elapsed_seconds]

    def to_text(self) -> str:
        lines = [f"{f.name} = {getattr(self, f.name)!r}" if f.type == "float"
                 else f"{f.name} = {getattr(self, f.name)}" for f in fields(self)]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerow(self.csv_row())
        return "\n".join(lines) + "\n\n[csv]\n" + buf.getvalue()


_CASTS = {"int": int, "float": float, "str": str}


def format_reports(reports: list[RunReport]) -> str:
    return "\n".join(f"[run {i}]\n{r.to_text()}" for i, r in enumerate(reports, 1))


def parse_reports(text: str) -> list[RunReport]:
    """Inverse of :func:`format_reports` (the CSV blocks are skipped)."""
    types = {f.name: _CASTS[f.type] for f in fields(RunReport)}
    reports: list[RunReport] = []
    current: dict[str, object] | None = None
    in_csv = False
    for line in text.splitlines():
        if line.startswith("[run "):
            if current is not None:
                reports.append(RunReport(**current))  # type: ignore[arg-type]
            current, in_csv = {}, False
        elif line == "[csv]":
            in_csv = True
        elif line and not in_csv and current is not None and " = " in line:
            key, _, value = line.partition(" = ")
            current[key] = types[key](value)
    if current is not None:
        reports.append(RunReport(**current))  # type: ignore[arg-type]
    return reports


def summary_csv(reports: list[RunReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def build_report(dataset: str, k: int, tau: int, bf, insertion, classification,
                 exact, oracle_trustworthy: int) -> RunReport:
    """Assemble a :class:`RunReport` from a pipeline run and its exact counts.

    ``bf`` is the filter after insertion, ``insertion``/``classification`` the
    phase statistics, ``exact`` the :class:`~kmerco.oracle.ExactCounts`.
    """
    plan = bf.plan
    matched = under = 0
    for kmer, c in exact.counts.items():
        est = bf.query_min(kmer)
        if est == c:
            matched += 1
        elif est < c:
            under += 1
    total = insertion.total_kmers
    ignored = total - insertion.inserted
    ratio = inserted_to_ignored(insertion.inserted, ignored)
    elapsed = insertion.elapsed_seconds
    return RunReport(
        dataset=dataset, K=k, tau=tau, X=plan.X, Y=plan.Y, alpha=plan.alpha,
        k_h=plan.k_h, seed=plan.seed, size_bytes=plan.size_bytes, total=total,
        distinct=classification.distinct, trustworthy=classification.trustworthy,
        erroneous=classification.erroneous, overflow_events=insertion.overflow_events,
        oracle_distinct=len(exact.counts), oracle_trustworthy=oracle_trustworthy,
        oracle_erroneous=len(exact.counts) - oracle_trustworthy,
        exact_match_rate=matched / len(exact.counts) if exact.counts else 1.0,
        undercounted=under,
        **dataset_rates(exact.total, len(exact.counts), oracle_trustworthy),
        trustworthy_rate=trustworthy_rate(classification.trustworthy, oracle_trustworthy,
                                          total) if total else 0.0,
        inserted=insertion.inserted, ignored=ignored,
        inserted_to_ignored=ratio.inserted_to_ignored,
        ignored_to_inserted=ratio.ignored_to_inserted,
        insertions_per_second=throughput(insertion.inserted, elapsed) if elapsed > 0 else 0.0,
        elapsed_seconds=elapsed,
    )
