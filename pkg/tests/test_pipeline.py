from __future__ import annotations

import io

import pytest

from kmerco.countbf import CountBF, plan_dimensions
from kmerco.io_formats import read_kmer_list
from kmerco.kmer_core import canonical_kmer, reverse_complement
from kmerco.oracle import exact_classify, exact_count
from kmerco.pipeline import (ClassificationStats, InsertionError, IntegrityError,
                             classification_phase, count_windows, insertion_phase)
from kmerco.synthetic import simulate_reads


def run(reads, k, n=None, seed=11, alpha=8, tau=5):
    n = n or max(1, count_windows(reads, k))
    bf = CountBF(plan_dimensions(n, 0.001, alpha, 2, seed))
    distinct = io.BytesIO()
    ins = insertion_phase(reads, k, bf, distinct)
    trust, err = io.BytesIO(), io.BytesIO()
    cls = classification_phase(bf, read_kmer_list(io.BytesIO(distinct.getvalue())), tau,
                               trust, err)
    return bf, ins, cls, distinct.getvalue(), trust.getvalue(), err.getvalue()


def test_aaaa_trace():
    bf, ins, cls, distinct, _, _ = run([b"AAAA"], 3)
    assert (ins.total_kmers, ins.inserted, ins.first_occurrences) == (2, 2, 1)
    assert distinct in (b"AAA\n", b"TTT\n")
    assert bf.query_min(distinct.strip()) == 2
    assert cls == ClassificationStats(distinct=1, trustworthy=0, erroneous=1, tau=5)


def test_empty_input():
    bf, ins, cls, distinct, trust, err = run([], 5, n=1)
    assert ins.total_kmers == ins.inserted == ins.first_occurrences == 0
    assert distinct == trust == err == b""
    assert cls.distinct == 0


def test_distinct_entries_are_canonical_and_unique():
    reads = simulate_reads(800, 20, 60, 0.01, seed=3)
    bf, ins, cls, distinct, trust, err = run(reads, 15)
    lines = distinct.split()
    assert len(lines) == len(set(lines)) == ins.first_occurrences
    assert all(canonical_kmer(x, 11).kmer == x for x in lines)
    assert all(bf.query_min(x) >= 1 for x in lines)
    assert cls.trustworthy + cls.erroneous == cls.distinct == len(lines)
    assert len(trust.split()) == cls.trustworthy and len(err.split()) == cls.erroneous


def test_read_plus_reverse_complement_doubles():
    read = b"GGCTCTATTACGGATCAGGT"
    bf1, ins1, _, d1, _, _ = run([read], 5, n=64)
    bf2, ins2, _, d2, _, _ = run([read, reverse_complement(read)], 5, n=64)
    assert set(d1.split()) == set(d2.split())
    assert ins2.total_kmers == 2 * ins1.total_kmers
    for x in d1.split():
        assert bf2.query_min(x) == 2 * bf1.query_min(x)


def test_reverse_complemented_twin_is_byte_identical():
    reads = simulate_reads(3000, 30, 80, 0.01, seed=5, n_rate=0.01)
    twin = [reverse_complement(r) for r in reads]
    # small filter so that first occurrences do hit false positives
    bf1, ins1, _, d1, t1, _ = run(reads, 13, n=2000)
    bf2, ins2, _, d2, t2, _ = run(twin, 13, n=2000)
    assert bf1.cells == bf2.cells
    assert (d1, t1) == (d2, t2)
    assert ins1.first_occurrences == ins2.first_occurrences < len(exact_count(reads, 13, 11))


def test_rejected_windows_counted():
    _, ins, _, _, _, _ = run([b"ACGTXACGT"], 3, n=10)
    assert ins.rejected_windows == 3 and ins.total_kmers == 4 == ins.inserted


def test_threshold_boundary():
    kmer = b"ACCGTTAGCA"
    bf = CountBF(plan_dimensions(100, 0.001, seed=1))
    other = b"TTTTTGGGGG"
    for _ in range(6):
        bf.insert(kmer)
    for _ in range(5):
        bf.insert(other)
    trust, err = io.BytesIO(), io.BytesIO()
    stats = classification_phase(bf, [kmer, other], 5, trust, err)
    assert trust.getvalue() == kmer + b"\n" and err.getvalue() == other + b"\n"
    assert (stats.trustworthy, stats.erroneous) == (1, 1)


def test_integrity_error_on_foreign_kmer():
    bf = CountBF(plan_dimensions(100, 0.001, seed=1))
    with pytest.raises(IntegrityError):
        classification_phase(bf, [b"ACGT"], 5, io.BytesIO(), io.BytesIO())


def test_trustworthy_superset_of_restricted_oracle():
    reads = simulate_reads(1500, 40, 100, 0.003, seed=8)
    bf, ins, cls, distinct, trust, _ = run(reads, 21)
    assert ins.overflow_events == 0
    _, oracle_trust, _ = exact_classify(exact_count(reads, 21, 11), 5)
    listed = set(distinct.split())
    assert oracle_trust & listed <= set(trust.split())


def test_oracle_relations():
    reads = simulate_reads(1500, 30, 100, 0.005, seed=9)
    bf, ins, _, distinct, _, _ = run(reads, 21)
    exact = exact_count(reads, 21, 11)
    assert exact.total == ins.total_kmers
    assert len(exact) >= ins.first_occurrences
    assert set(distinct.split()) <= set(exact.counts)
    assert all(bf.query_min(x) >= c for x, c in exact.counts.items())


def test_reproducible_outputs():
    reads = simulate_reads(600, 20, 80, 0.01, seed=2)
    a = run(reads, 17)
    b = run(reads, 17)
    assert a[3:] == b[3:] and a[0].cells == b[0].cells


def test_timing_is_recorded():
    reads = simulate_reads(500, 10, 100, 0.0, seed=1)
    _, ins, _, _, _, _ = run(reads, 21)
    assert ins.elapsed_seconds > 0


class _FailingSink(io.BytesIO):
    def write(self, data):
        raise OSError("disk full")


def test_sink_failure_carries_progress():
    reads = simulate_reads(500, 10, 100, 0.0, seed=1)
    bf = CountBF(plan_dimensions(10_000, seed=1))
    with pytest.raises(InsertionError) as err:
        insertion_phase(reads, 21, bf, _FailingSink())
    assert err.value.stats.total_kmers > 0


def test_read_failure_carries_progress():
    def reads():
        yield b"ACGTACGTAC"
        raise OSError("network share vanished")
    bf = CountBF(plan_dimensions(100, seed=1))
    with pytest.raises(InsertionError) as err:
        insertion_phase(reads(), 4, bf, io.BytesIO())
    assert err.value.stats.total_kmers == 7
