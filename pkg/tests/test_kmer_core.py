from __future__ import annotations

import doctest

import pytest
from hypothesis import given, strategies as st

import kmerco.kmer_core
import kmerco.metrics
from kmerco.hashing import kmer_hash
from kmerco.kmer_core import (canonical, canonical_kmer, extract_kmers, is_valid_kmer,
                              reverse_complement, window_starts)

kmers = st.binary(min_size=1, max_size=64).map(
    lambda b: bytes(b"ACGTN"[x % 5] for x in b))
dna = st.text(alphabet="ACGTNacgtnXY-", max_size=80)


def test_doctests():
    for mod in (kmerco.kmer_core, kmerco.metrics):
        failed, _ = doctest.testmod(mod)
        assert failed == 0


def test_consecutive_3mers():
    assert extract_kmers(b"GGCTCTAT", 3) == (
        [b"GGC", b"GCT", b"CTC", b"TCT", b"CTA", b"TAT"], 0)


def test_shorter_than_k():
    assert extract_kmers(b"GG", 3) == ([], 0)


def test_n_is_legal():
    assert extract_kmers(b"ACGTN", 2) == ([b"AC", b"CG", b"GT", b"TN"], 0)


def test_lowercase_and_str_input():
    assert extract_kmers("acgT", 2) == ([b"AC", b"CG", b"GT"], 0)


def test_foreign_symbols_reject_windows():
    # X at index 2 poisons windows starting at 0, 1, 2 for k=3
    kmers_, rejected = extract_kmers(b"ACXGTAC", 3)
    assert kmers_ == [b"GTA", b"TAC"]
    assert rejected == 3


def test_k_must_be_positive():
    with pytest.raises(ValueError):
        extract_kmers(b"ACGT", 0)


@given(dna, st.integers(1, 10))
def test_window_count(seq, k):
    kmers_, rejected = extract_kmers(seq, k)
    assert len(kmers_) == max(0, len(seq) - k + 1) - rejected
    assert all(len(x) == k and is_valid_kmer(x) for x in kmers_)
    # brute force: windows of the uppercased text without foreign symbols
    up = seq.upper().encode()
    expected = [up[i:i + k] for i in range(len(up) - k + 1)
                if set(up[i:i + k]) <= set(b"ACGTN")]
    assert kmers_ == expected


@pytest.mark.parametrize("fwd, rc", [
    (b"GGCTCTAT", b"ATAGAGCC"),
    (b"N", b"N"),
    (b"AT", b"AT"),
    (b"ACGTN", b"NACGT"),
])
def test_reverse_complement(fwd, rc):
    assert reverse_complement(fwd) == rc


@given(kmers)
def test_reverse_complement_involution(x):
    assert reverse_complement(reverse_complement(x)) == x


def test_canonical_by_hash():
    assert canonical(b"AAC", 5, 9) == (b"AAC", 0)
    assert canonical(b"AAC", 9, 5) == (b"GTT", 1)


def test_palindrome_keeps_forward():
    x = b"ACGT"
    assert reverse_complement(x) == x
    assert kmer_hash(x, 11) == kmer_hash(reverse_complement(x), 11)
    assert canonical_kmer(x, 11) == (x, 0)


@given(kmers, st.integers(0, 2**64 - 1))
def test_canonical_strand_invariant(x, seed):
    assert canonical_kmer(x, seed).kmer == canonical_kmer(reverse_complement(x), seed).kmer


@given(kmers, st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
def test_canonical_swapped_hashes(x, h1, h2):
    a = canonical(x, h1, h2)
    b = canonical(reverse_complement(x), h2, h1)
    if h1 != h2:
        assert a.kmer == b.kmer


@given(kmers)
def test_picked_rc_means_reverse_complement(x):
    choice = canonical_kmer(x, 3)
    if choice.picked_rc:
        assert choice.kmer == reverse_complement(x)
    else:
        assert choice.kmer == x


def test_window_starts_fast_path_is_range():
    starts, rejected = window_starts(b"ACGTACGT", 4)
    assert list(starts) == [0, 1, 2, 3, 4] and rejected == 0
