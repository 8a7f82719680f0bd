"""Exact canonical k-mer counting, the ground truth the filter is scored against."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .countbf import DEFAULT_SEED
from .kmer_core import canonical_kmer, extract_kmers


@dataclass
class ExactCounts:
    k: int
    seed: int
    counts: Counter = field(default_factory=Counter)
    total: int = 0
    rejected_windows: int = 0

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, kmer: bytes) -> int:
        return self.counts.get(kmer, 0)


def exact_count(reads: Iterable[bytes], k: int, seed: int = DEFAULT_SEED) -> ExactCounts:
    """Count every accepted window under its canonical form for ``seed``.

    The canonical form of a k-mer depends only on its bytes, so it is
    memoised per distinct forward window.
    """
    result = ExactCounts(k=k, seed=seed)
    forward: Counter = Counter()
    for seq in reads:
        kmers, rejected = extract_kmers(seq, k)
        forward.update(kmers)
        result.total += len(kmers)
        result.rejected_windows += rejected
    counts = result.counts
    for kmer, c in forward.items():
        counts[canonical_kmer(kmer, seed).kmer] += c
    return result


def exact_classify(counts: ExactCounts, tau: int) -> tuple[set[bytes], set[bytes], set[bytes]]:
    """``(distinct, trustworthy, erroneous)``; trustworthy means frequency ``> tau``."""
    distinct = set(counts.counts)
    trustworthy = {kmer for kmer, c in counts.counts.items() if c > tau}
    return distinct, trustworthy, distinct - trustworthy


def dump_counts(counts: ExactCounts, sink: BinaryIO) -> None:
    """Write ``KMER<TAB>FREQUENCY`` lines, sorted by k-mer."""
    for kmer in sorted(counts.counts):
        sink.write(b"%s\t%d\n" % (kmer, counts.counts[kmer]))


def load_counts(source: BinaryIO, k: int, seed: int = DEFAULT_SEED) -> ExactCounts:
    result = ExactCounts(k=k, seed=seed)
    for line in source:
        kmer, _, freq = line.rstrip(b"\r\n").partition(b"\t")
        c = int(freq)
        result.counts[kmer] = c
        result.total += c
    return result
