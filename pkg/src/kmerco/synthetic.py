"""Synthetic sequencing runs: reads sampled from a random genome with substitution errors."""
from __future__ import annotations

import random

from .kmer_core import reverse_complement

_BASES = b"ACGT"


def random_genome(length: int, rng: random.Random) -> bytes:
    return bytes(rng.choices(_BASES, k=length))


def simulate_reads(genome_length: int, coverage: float, read_length: int,
                   error_rate: float, seed: int = 0, n_rate: float = 0.0) -> list[bytes]:
    """Reads drawn uniformly from a random genome, each on a random strand.

    Every base of a read is substituted with probability ``error_rate`` and
    replaced by ``N`` with probability ``n_rate``.
    """
    rng = random.Random(seed)
    genome = random_genome(genome_length, rng)
    read_length = min(read_length, genome_length)
    n_reads = max(1, round(coverage * genome_length / read_length))
    reads = []
    for _ in range(n_reads):
        start = rng.randrange(genome_length - read_length + 1)
        read = bytearray(genome[start:start + read_length])
        if error_rate or n_rate:
            for i in range(read_length):
                r = rng.random()
                if r < error_rate:
                    read[i] = rng.choice([b for b in _BASES if b != read[i]])
                elif r < error_rate + n_rate:
                    read[i] = ord("N")
        read = bytes(read)
        if rng.random() < 0.5:
            read = reverse_complement(read)
        reads.append(read)
    return reads


def write_fasta(reads: list[bytes], path) -> None:
    with open(path, "wb") as fh:
        for i, read in enumerate(reads):
            fh.write(b">r%d\n%s\n" % (i, read))
