"""The two KmerCo phases: filter construction with a distinct list, then classification."""
from __future__ import annotations

import time
from dataclasses import dataclass, asdict
from typing import BinaryIO, Iterable

from .countbf import CountBF
from .hashing import _hash64
from .io_formats import ParseError
from .kmer_core import reverse_complement, window_starts

DEFAULT_TAU = 5
_FLUSH_EVERY = 8192


@dataclass
class InsertionStats:
    total_kmers: int = 0
    inserted: int = 0
    first_occurrences: int = 0
    rejected_windows: int = 0
    overflow_events: int = 0
    elapsed_seconds: float = 0.0

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


@dataclass
class ClassificationStats:
    distinct: int = 0
    trustworthy: int = 0
    erroneous: int = 0
    tau: int = DEFAULT_TAU

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


class InsertionError(RuntimeError):
    """Input or output failed mid-phase; ``stats`` holds the progress so far."""

    def __init__(self, message: str, stats: InsertionStats):
        super().__init__(message)
        self.stats = stats


class IntegrityError(RuntimeError):
    """A k-mer from the distinct list is absent from the filter."""


def count_windows(reads: Iterable[bytes], k: int) -> int:
    """Number of accepted windows, used to size the filter before insertion."""
    total = 0
    for seq in reads:
        starts, _ = window_starts(seq.upper(), k)
        total += len(starts)
    return total


def insertion_phase(reads: Iterable[bytes], k: int, bf: CountBF,
                    distinct_sink: BinaryIO) -> InsertionStats:
    """Insert every k-mer of ``reads`` into ``bf``; write first occurrences to ``distinct_sink``.

    Each read is scanned along its lexicographically smaller strand, so a read
    and its reverse complement feed the filter the same k-mer sequence. Each
    window is reduced to its canonical strand (hash function 0), queried,
    and counted. When the query returns 0 the canonical k-mer also goes to the
    distinct list. ``elapsed_seconds`` covers the loop minus time spent
    writing the distinct list.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    stats = InsertionStats()
    overflow_before = bf.overflow_events
    cseed = bf._canon_seed
    count = bf.count
    pending: list[bytes] = []
    write_time = 0.0
    t0 = time.perf_counter()
    try:
        for seq in reads:
            seq = seq.upper()
            rc_seq = reverse_complement(seq)
            if rc_seq < seq:
                seq, rc_seq = rc_seq, seq
            starts, rejected = window_starts(seq, k)
            stats.rejected_windows += rejected
            end = len(seq) - k
            for s in starts:
                fwd = seq[s:s + k]
                rc = rc_seq[end - s:end - s + k]
                kmer = fwd if _hash64(fwd, cseed, signed=False)[0] <= \
                    _hash64(rc, cseed, signed=False)[0] else rc
                if count(kmer) == 0:
                    pending.append(kmer)
            stats.total_kmers += len(starts)
            if len(pending) >= _FLUSH_EVERY:
                w0 = time.perf_counter()
                stats.first_occurrences += _flush(pending, distinct_sink)
                write_time += time.perf_counter() - w0
        w0 = time.perf_counter()
        stats.first_occurrences += _flush(pending, distinct_sink)
        write_time += time.perf_counter() - w0
    except (OSError, ParseError) as exc:
        stats.inserted = stats.total_kmers
        stats.overflow_events = bf.overflow_events - overflow_before
        raise InsertionError(f"insertion aborted: {exc}", stats) from exc
    stats.elapsed_seconds = time.perf_counter() - t0 - write_time
    stats.inserted = stats.total_kmers
    stats.overflow_events = bf.overflow_events - overflow_before
    return stats


def _flush(pending: list[bytes], sink: BinaryIO) -> int:
    n = len(pending)
    if n:
        sink.write(b"\n".join(pending) + b"\n")
        pending.clear()
    return n


def classification_phase(bf: CountBF, distinct_source: Iterable[bytes], tau: int,
                         trustworthy_sink: BinaryIO,
                         erroneous_sink: BinaryIO) -> ClassificationStats:
    """Split the distinct list by filter frequency: ``> tau`` is trustworthy."""
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    stats = ClassificationStats(tau=tau)
    query = bf.query_min
    for lineno, kmer in enumerate(distinct_source, 1):
        freq = query(kmer)
        if freq == 0:
            raise IntegrityError(
                f"distinct k-mer #{lineno} {kmer[:64].decode(errors='replace')} "
                "has frequency 0; the filter does not match this distinct list")
        stats.distinct += 1
        if freq > tau:
            trustworthy_sink.write(kmer + b"\n")
            stats.trustworthy += 1
        else:
            erroneous_sink.write(kmer + b"\n")
            stats.erroneous += 1
    return stats
