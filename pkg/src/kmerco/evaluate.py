"""One full comparison run: size, insert, classify, count exactly, report."""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable, Iterable

from .countbf import DEFAULT_ALPHA, DEFAULT_FPP, DEFAULT_HASHES, DEFAULT_SEED, CountBF
from .io_formats import read_kmer_list
from .metrics import RunReport, build_report
from .oracle import ExactCounts, exact_classify, exact_count
from .pipeline import (DEFAULT_TAU, ClassificationStats, InsertionStats,
                       classification_phase, count_windows, insertion_phase)


@dataclass
class Comparison:
    report: RunReport
    filter: CountBF
    insertion: InsertionStats
    classification: ClassificationStats
    exact: ExactCounts
    distinct: bytes
    trustworthy: bytes
    erroneous: bytes


def compare(reads: Callable[[], Iterable[bytes]], k: int, *, tau: int = DEFAULT_TAU,
            fpp: float = DEFAULT_FPP, alpha: int = DEFAULT_ALPHA,
            k_h: int = DEFAULT_HASHES, seed: int = DEFAULT_SEED,
            expected_n: int | None = None, label: str = "dataset") -> Comparison:
    """Run both KmerCo phases and the exact counter over ``reads()``.

    ``reads`` is called once per pass; without ``expected_n`` the first pass
    only counts windows to size the filter.
    """
    n = expected_n if expected_n is not None else count_windows(reads(), k)
    bf = CountBF.for_items(max(n, 1), fpp, alpha, k_h, seed)
    distinct = io.BytesIO()
    ins = insertion_phase(reads(), k, bf, distinct)
    trust, err = io.BytesIO(), io.BytesIO()
    cls = classification_phase(bf, read_kmer_list(io.BytesIO(distinct.getvalue())), tau,
                               trust, err)
    exact = exact_count(reads(), k, seed)
    _, oracle_trust, _ = exact_classify(exact, tau)
    report = build_report(label, k, tau, bf, ins, cls, exact, len(oracle_trust))
    return Comparison(report, bf, ins, cls, exact, distinct.getvalue(),
                      trust.getvalue(), err.getvalue())
