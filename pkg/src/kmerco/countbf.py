"""countBF: a two-dimensional counting Bloom filter with bit-packed counters.

The filter is an ``X x Y`` grid of 64-bit cells. Each cell holds
``eta = 64 // alpha`` counters of ``alpha`` bits; counter ``l`` occupies bits
``alpha*l .. alpha*l + alpha - 1``. An item is hashed by ``k_h`` seeded murmur
functions and one 64-bit hash ``h`` addresses cell ``(h % X, h % Y)`` and
counter ``h % eta`` inside it. Counters saturate at ``2**alpha - 1``.

Binary format (version 1, little-endian)::

    magic    4 B   b"KMCO"
    version  1 B   1
    k_h      1 B
    alpha    1 B
    seed     8 B   uint64
    n        8 B   uint64
    fpp      8 B   IEEE-754 double
    X        8 B   uint64
    Y        8 B   uint64
    length   8 B   uint64, payload bytes (= X * Y * 8)
    payload        X * Y uint64 cells, row-major (cell (i, j) at i * Y + j)
    checksum 8 B   BLAKE2b with 8-byte digest over the payload, read as uint64
"""
from __future__ import annotations

import enum
import hashlib
import math
import struct
import sys
from array import array
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .hashing import MASK64, family_seeds, fold_seed, hash_with
from .kmer_core import CanonicalChoice, canonical

BETA = 64
MIN_ALPHA = 5
MAX_ALPHA = 16
DEFAULT_ALPHA = 8
DEFAULT_FPP = 0.001
DEFAULT_HASHES = 2
DEFAULT_SEED = 0x4B4D434F

MAGIC = b"KMCO"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBBBQQdQQQ")
_CHECKSUM = struct.Struct("<Q")


class FilterFormatError(ValueError):
    """A serialized filter is malformed, truncated or inconsistent."""


class Outcome(enum.Enum):
    APPLIED = "applied"
    SATURATED = "saturated"


# ---------------------------------------------------------------- primes ---

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def next_prime(x: float) -> int:
    """Smallest prime strictly greater than ``x``."""
    c = max(2, math.floor(x) + 1)
    while not is_prime(c):
        c += 1
    return c


# ---------------------------------------------------------------- sizing ---

def counters_per_cell(alpha: int) -> int:
    return BETA // alpha


def wasted_bits(alpha: int) -> int:
    return BETA - counters_per_cell(alpha) * alpha


def extract_mask(alpha: int, l: int) -> int:
    return ((1 << alpha) - 1) << (alpha * l)


def reset_mask(alpha: int, l: int) -> int:
    return ~extract_mask(alpha, l) & MASK64


@dataclass(frozen=True)
class FilterPlan:
    n: int
    fpp: float
    m_bits: int
    v: float
    X: int
    Y: int
    alpha: int
    eta: int
    k_h: int
    seed: int
    beta: int = BETA

    @property
    def cells(self) -> int:
        return self.X * self.Y

    @property
    def size_bits(self) -> int:
        return self.X * self.Y * self.beta

    @property
    def size_bytes(self) -> int:
        return self.X * self.Y * 8

    @property
    def max_count(self) -> int:
        return (1 << self.alpha) - 1

    @property
    def wasted_bits(self) -> int:
        return self.beta - self.eta * self.alpha

    def summary(self) -> dict[str, object]:
        return {
            "n": self.n, "fpp": self.fpp, "m_bits": self.m_bits, "v": self.v,
            "X": self.X, "Y": self.Y, "alpha": self.alpha, "eta": self.eta,
            "wasted_bits": self.wasted_bits, "k_h": self.k_h, "seed": self.seed,
            "size_bits": self.size_bits, "size_bytes": self.size_bytes,
        }


def _check_args(n: int, fpp: float, alpha: int, k_h: int, seed: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (0.0 < fpp < 1.0):
        raise ValueError(f"fpp must lie in (0, 1), got {fpp!r}")
    if not (MIN_ALPHA <= alpha <= MAX_ALPHA):
        raise ValueError(f"alpha must lie in [{MIN_ALPHA}, {MAX_ALPHA}], got {alpha!r}")
    if not (1 <= k_h <= 255):
        raise ValueError(f"k_h must lie in [1, 255], got {k_h!r}")
    if not (0 <= seed <= MASK64):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def plan_dimensions(n: int, fpp: float = DEFAULT_FPP, alpha: int = DEFAULT_ALPHA,
                    k_h: int = DEFAULT_HASHES, seed: int = DEFAULT_SEED) -> FilterPlan:
    """Size a filter for ``n`` insertions at false-positive target ``fpp``.

    ``m = ceil(-n ln(fpp) / ln(2)^2)`` is the plain Bloom filter size,
    ``v = sqrt(m / 128)``, ``X`` is the first prime above ``v`` and ``Y`` the
    third prime above ``X``. Total size is ``X * Y * 64`` bits.
    """
    _check_args(n, fpp, alpha, k_h, seed)
    m_bits = math.ceil(-n * math.log(fpp) / (math.log(2) ** 2))
    v = math.sqrt(m_bits / 128)
    X = next_prime(v)
    Y = X
    for _ in range(3):
        Y = next_prime(Y)
    return FilterPlan(n=n, fpp=fpp, m_bits=m_bits, v=v, X=X, Y=Y, alpha=alpha,
                      eta=counters_per_cell(alpha), k_h=k_h, seed=seed)


# ---------------------------------------------------------------- filter ---

@dataclass(eq=False)
class CountBF:
    plan: FilterPlan
    cells: array = field(repr=False, default=None)  # type: ignore[assignment]
    total_increments: int = 0
    overflow_events: int = 0

    def __post_init__(self) -> None:
        p = self.plan
        if self.cells is None:
            self.cells = array("Q", bytes(8 * p.cells))
        elif len(self.cells) != p.cells:
            raise ValueError(f"expected {p.cells} cells, got {len(self.cells)}")
        self.extract_masks = tuple(extract_mask(p.alpha, l) for l in range(p.eta))
        self.reset_masks = tuple(reset_mask(p.alpha, l) for l in range(p.eta))
        self._seeds = family_seeds(p.seed, p.k_h)
        self._canon_seed = fold_seed(p.seed, 0)

    @classmethod
    def for_items(cls, n: int, fpp: float = DEFAULT_FPP, alpha: int = DEFAULT_ALPHA,
                  k_h: int = DEFAULT_HASHES, seed: int = DEFAULT_SEED) -> "CountBF":
        return cls(plan_dimensions(n, fpp, alpha, k_h, seed))

    # addressing

    def slots(self, kmer: bytes) -> list[tuple[int, int]]:
        """``(flat cell index, counter number)`` for each of the k_h hashes."""
        X, Y, eta = self.plan.X, self.plan.Y, self.plan.eta
        out = []
        for s in self._seeds:
            h = hash_with(kmer, s)
            out.append(((h % X) * Y + h % Y, h % eta))
        return out

    def counter(self, index: int, l: int) -> int:
        return (self.cells[index] & self.extract_masks[l]) >> (self.plan.alpha * l)

    # operations

    def insert(self, kmer: bytes) -> Outcome:
        """Increment the k_h counters of ``kmer`` (already canonical).

        A counter already at ``2**alpha - 1`` is left untouched; the other
        counters are still incremented and the outcome is ``SATURATED``.
        """
        cells, em, rm = self.cells, self.extract_masks, self.reset_masks
        alpha, top = self.plan.alpha, self.plan.max_count
        saturated = False
        for index, l in self.slots(kmer):
            shift = alpha * l
            cell = cells[index]
            value = ((cell & em[l]) >> shift) + 1
            if value > top:
                self.overflow_events += 1
                saturated = True
                continue
            cells[index] = (cell & rm[l]) | (value << shift)
        if saturated:
            return Outcome.SATURATED
        self.total_increments += 1
        return Outcome.APPLIED

    def query_min(self, kmer: bytes) -> int:
        """Minimum of the k_h counters of ``kmer``; 0 as soon as one is empty."""
        cells, em = self.cells, self.extract_masks
        alpha = self.plan.alpha
        best = None
        for index, l in self.slots(kmer):
            value = (cells[index] & em[l]) >> (alpha * l)
            if value == 0:
                return 0
            if best is None or value < best:
                best = value
        return best or 0

    def choose_canonical(self, fwd: bytes, rc: bytes) -> CanonicalChoice:
        s = self._canon_seed
        choice = canonical(fwd, hash_with(fwd, s), hash_with(rc, s))
        if choice.picked_rc:
            return CanonicalChoice(rc, 1)
        return choice

    def query_canonical(self, fwd: bytes, rc: bytes) -> tuple[int, int]:
        """Frequency of the canonical strand of ``fwd``/``rc`` and which strand it was."""
        kmer, picked_rc = self.choose_canonical(fwd, rc)
        return self.query_min(kmer), picked_rc

    def count(self, kmer: bytes) -> int:
        """Query then insert ``kmer`` in one addressing pass; returns the prior frequency.

        Equivalent to ``query_min`` followed by ``insert``.
        """
        cells, em, rm = self.cells, self.extract_masks, self.reset_masks
        X, Y, eta = self.plan.X, self.plan.Y, self.plan.eta
        alpha, top = self.plan.alpha, self.plan.max_count
        prior = -1
        saturated = False
        for s in self._seeds:
            h = hash_with(kmer, s)
            index = (h % X) * Y + h % Y
            l = h % eta
            shift = alpha * l
            cell = cells[index]
            value = (cell & em[l]) >> shift
            if prior < 0 or value < prior:
                prior = value
            if value == top:
                self.overflow_events += 1
                saturated = True
                continue
            cells[index] = (cell & rm[l]) | ((value + 1) << shift)
        if not saturated:
            self.total_increments += 1
        return prior

    # inspection

    def iter_counters(self) -> Iterable[int]:
        alpha, top = self.plan.alpha, self.plan.max_count
        for cell in self.cells:
            for l in range(self.plan.eta):
                yield (cell >> (alpha * l)) & top

    def fill_stats(self) -> dict[str, object]:
        total = nonzero = saturated = 0
        peak = 0
        top = self.plan.max_count
        for value in self.iter_counters():
            total += 1
            if value:
                nonzero += 1
                peak = max(peak, value)
                if value == top:
                    saturated += 1
        return {
            "counters": total,
            "nonzero_counters": nonzero,
            "fill_ratio": nonzero / total if total else 0.0,
            "saturated_counters": saturated,
            "max_counter": peak,
        }

    # serialization

    def to_bytes(self) -> bytes:
        p = self.plan
        payload = _cells_to_le(self.cells)
        header = _HEADER.pack(MAGIC, FORMAT_VERSION, p.k_h, p.alpha, p.seed, p.n,
                              p.fpp, p.X, p.Y, len(payload))
        return header + payload + _CHECKSUM.pack(_checksum(payload))

    @classmethod
    def from_bytes(cls, data: bytes) -> "CountBF":
        if len(data) < _HEADER.size:
            raise FilterFormatError(f"stream too short for header ({len(data)} bytes)")
        magic, version, k_h, alpha, seed, n, fpp, X, Y, length = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FilterFormatError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise FilterFormatError(f"unsupported format version {version}")
        if length != X * Y * 8:
            raise FilterFormatError(f"payload length {length} != X*Y*8 = {X * Y * 8}")
        expected = _HEADER.size + length + _CHECKSUM.size
        if len(data) != expected:
            raise FilterFormatError(f"expected {expected} bytes, got {len(data)}")
        try:
            plan = plan_dimensions(n, fpp, alpha, k_h, seed)
        except ValueError as exc:
            raise FilterFormatError(f"invalid plan in header: {exc}") from exc
        if (plan.X, plan.Y) != (X, Y):
            raise FilterFormatError(
                f"dimensions {X}x{Y} do not match n={n}, fpp={fpp} "
                f"(expected {plan.X}x{plan.Y})")
        payload = data[_HEADER.size:_HEADER.size + length]
        (stored,) = _CHECKSUM.unpack_from(data, _HEADER.size + length)
        if stored != _checksum(payload):
            raise FilterFormatError("payload checksum mismatch")
        return cls(plan, _cells_from_le(payload))

    def save(self, fh: BinaryIO) -> None:
        fh.write(self.to_bytes())

    @classmethod
    def load(cls, fh: BinaryIO) -> "CountBF":
        return cls.from_bytes(fh.read())


def serialize(bf: CountBF) -> bytes:
    return bf.to_bytes()


def deserialize(data: bytes) -> CountBF:
    return CountBF.from_bytes(data)


def _checksum(payload: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def _cells_to_le(cells: array) -> bytes:
    if sys.byteorder == "little":
        return cells.tobytes()
    swapped = array("Q", cells)
    swapped.byteswap()
    return swapped.tobytes()


def _cells_from_le(payload: bytes) -> array:
    cells = array("Q")
    cells.frombytes(payload)
    if sys.byteorder != "little":
        cells.byteswap()
    return cells
