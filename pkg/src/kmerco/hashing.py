"""Seeded 64-bit murmur hash family used for canonical selection and filter addressing.

Function ``a`` of the family is MurmurHash3 x64_128 (lower 64 bits) seeded with
``seed + a``. Index 0 picks the canonical strand; indices ``1..k_h`` address the
filter. mmh3 only accepts 32-bit seeds, so the 64-bit sum is xor-folded.
"""
from __future__ import annotations

import mmh3

MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF

_hash64 = mmh3.hash64


def fold_seed(seed: int, index: int) -> int:
    s = (seed + index) & MASK64
    return (s ^ (s >> 32)) & MASK32


def family_seeds(seed: int, k_h: int) -> tuple[int, ...]:
    """32-bit seeds for hash functions 1..k_h."""
    return tuple(fold_seed(seed, a) for a in range(1, k_h + 1))


def hash_with(kmer: bytes, folded_seed: int) -> int:
    return _hash64(kmer, folded_seed, signed=False)[0]


def kmer_hash(kmer: bytes, seed: int, index: int = 0) -> int:
    return _hash64(kmer, fold_seed(seed, index), signed=False)[0]
