"""Independent reference model of the filter's counter layout."""
from __future__ import annotations

from collections import Counter

import mmh3

M64 = (1 << 64) - 1


class MaskModel:
    """Reference model: counters kept in a dict keyed by (row, col, counter)."""

    def __init__(self, plan):
        self.plan = plan
        self.counts: Counter = Counter()

    def seeds(self):
        out = []
        for a in range(1, self.plan.k_h + 1):
            s = (self.plan.seed + a) & M64
            out.append((s ^ (s >> 32)) & 0xFFFFFFFF)
        return out

    def addresses(self, kmer):
        p = self.plan
        for s in self.seeds():
            h = mmh3.hash64(kmer, s, signed=False)[0]
            yield h % p.X, h % p.Y, h % p.eta

    def insert(self, kmer):
        top = 2 ** self.plan.alpha - 1
        for addr in self.addresses(kmer):
            if self.counts[addr] < top:
                self.counts[addr] += 1

    def cells(self):
        p = self.plan
        out = [0] * (p.X * p.Y)
        for (i, j, l), c in self.counts.items():
            out[i * p.Y + j] |= c << (p.alpha * l)
        return out
