"""K-mer extraction, reverse complement and hash-based canonical selection.

K-mers are plain ``bytes`` over ``ACGTN``, one byte per base. ``N`` is a legal
symbol and complements to itself.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .hashing import kmer_hash

ALPHABET = b"ACGTN"
_COMPLEMENT = bytes.maketrans(b"ACGTN", b"TGCAN")
_VALID = frozenset(ALPHABET)


class CanonicalChoice(NamedTuple):
    kmer: bytes
    picked_rc: int  # 0 = forward kept, 1 = reverse complement


def reverse_complement(kmer: bytes) -> bytes:
    return kmer.translate(_COMPLEMENT)[::-1]


def is_valid_kmer(kmer: bytes) -> bool:
    return len(kmer) > 0 and not kmer.translate(None, ALPHABET)


def window_starts(sequence: bytes, k: int) -> tuple[Sequence[int], int]:
    """Start offsets of all windows of ``sequence`` free of foreign symbols.

    ``sequence`` must already be uppercase. Returns ``(starts, rejected)``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = len(sequence) - k + 1
    if n <= 0:
        return range(0), 0
    if not sequence.translate(None, ALPHABET):
        return range(n), 0
    blocked = bytearray(n)
    for p, base in enumerate(sequence):
        if base not in _VALID:
            lo = max(0, p - k + 1)
            hi = min(p, n - 1)
            blocked[lo:hi + 1] = b"\x01" * (hi - lo + 1)
    starts = [s for s in range(n) if not blocked[s]]
    return starts, n - len(starts)


def extract_kmers(sequence: bytes | str, k: int) -> tuple[list[bytes], int]:
    """Split ``sequence`` into its consecutive length-``k`` windows.

    Input is uppercased first. Windows touching a byte outside ``ACGTN`` are
    dropped and tallied; the second element of the result is that tally.

    >>> extract_kmers(b"GGCTCTAT", 3)[0]
    [b'GGC', b'GCT', b'CTC', b'TCT', b'CTA', b'TAT']
    """
    if isinstance(sequence, str):
        sequence = sequence.encode("ascii", errors="replace")
    seq = sequence.upper()
    starts, rejected = window_starts(seq, k)
    return [seq[s:s + k] for s in starts], rejected


def canonical(kmer: bytes, primary_hash: int, rc_hash: int) -> CanonicalChoice:
    """Keep ``kmer`` unless its reverse complement hashes strictly lower.

    Equal hashes keep the forward strand; for palindromes (``ACGT``) both
    strands are the same bytes anyway.
    """
    if primary_hash <= rc_hash:
        return CanonicalChoice(kmer, 0)
    return CanonicalChoice(reverse_complement(kmer), 1)


def canonical_kmer(kmer: bytes, seed: int) -> CanonicalChoice:
    """Canonical form under hash function 0 of the family seeded with ``seed``."""
    rc = reverse_complement(kmer)
    return canonical(kmer, kmer_hash(kmer, seed, 0), kmer_hash(rc, seed, 0))
