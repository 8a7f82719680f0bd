"""Sequence readers (FASTA, FASTQ, one-sequence-per-line) and k-mer list files."""
from __future__ import annotations

import gzip
import io
import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator

from .kmer_core import ALPHABET

log = logging.getLogger(__name__)

FORMATS = ("fasta", "fastq", "lines")
_GZIP_MAGIC = b"\x1f\x8b"


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SequenceRecord:
    id: bytes
    sequence: bytes


@contextmanager
def open_input(path: str | os.PathLike) -> Iterator[BinaryIO]:
    """Open ``path`` for binary reading, gunzipping transparently."""
    raw = open(path, "rb")
    try:
        if raw.peek(2)[:2] == _GZIP_MAGIC:
            with gzip.GzipFile(fileobj=raw) as gz:
                yield io.BufferedReader(gz)  # type: ignore[arg-type]
        else:
            yield raw
    finally:
        raw.close()


def guess_format(path: str | os.PathLike) -> str:
    name = os.fspath(path).lower()
    if name.endswith(".gz"):
        name = name[:-3]
    if name.endswith((".fq", ".fastq")):
        return "fastq"
    if name.endswith((".fa", ".fasta", ".fna", ".fas")):
        return "fasta"
    return "lines"


def read_sequences(source: BinaryIO, fmt: str = "fasta",
                   skip_bad: bool = False) -> Iterator[SequenceRecord]:
    """Yield records from ``source`` in file order.

    ``skip_bad`` logs and drops malformed records instead of raising
    :class:`ParseError`.
    """
    if fmt == "fasta":
        parser = _parse_fasta
    elif fmt == "fastq":
        parser = _parse_fastq
    elif fmt == "lines":
        parser = _parse_lines
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return parser(source, skip_bad)


def _reject(err: ParseError, skip_bad: bool) -> None:
    if not skip_bad:
        raise err
    log.warning("skipping malformed record: %s", err)


def _parse_fasta(source: BinaryIO, skip_bad: bool) -> Iterator[SequenceRecord]:
    header: bytes | None = None
    header_line = 0
    chunks: list[bytes] = []
    for lineno, line in enumerate(source, 1):
        line = line.strip()
        if not line:
            continue
        if line[:1] == b">":
            if header is not None:
                if chunks:
                    yield SequenceRecord(header, b"".join(chunks))
                else:
                    _reject(ParseError("record has no sequence", header_line), skip_bad)
            header, header_line, chunks = line[1:], lineno, []
        elif header is None:
            _reject(ParseError("sequence data before first '>' header", lineno), skip_bad)
        else:
            chunks.append(line)
    if header is not None:
        if chunks:
            yield SequenceRecord(header, b"".join(chunks))
        else:
            _reject(ParseError("record has no sequence", header_line), skip_bad)


def _parse_fastq(source: BinaryIO, skip_bad: bool) -> Iterator[SequenceRecord]:
    lines = enumerate((l.rstrip(b"\r\n") for l in source), 1)
    for lineno, header in lines:
        if not header.strip():
            continue
        if header[:1] != b"@":
            _reject(ParseError("expected '@' header", lineno), skip_bad)
            continue
        body = [next(lines, (lineno, None)) for _ in range(3)]
        (_, seq), (plus_no, plus), (qual_no, qual) = body
        if seq is None or plus is None or qual is None:
            _reject(ParseError("truncated FASTQ record", lineno), skip_bad)
            return
        if plus[:1] != b"+":
            _reject(ParseError("expected '+' separator", plus_no), skip_bad)
            continue
        if len(seq) != len(qual):
            _reject(ParseError(f"sequence length {len(seq)} != quality length {len(qual)}",
                               qual_no), skip_bad)
            continue
        if not seq:
            _reject(ParseError("record has no sequence", lineno), skip_bad)
            continue
        yield SequenceRecord(header[1:], seq)


def _parse_lines(source: BinaryIO, skip_bad: bool) -> Iterator[SequenceRecord]:
    for lineno, line in enumerate(source, 1):
        line = line.strip()
        if line:
            yield SequenceRecord(str(lineno).encode(), line)


def iter_sequences(paths: Iterable[str | os.PathLike], fmt: str | None = None,
                   skip_bad: bool = False) -> Iterator[bytes]:
    """Sequences of every record across ``paths``, opened one after another."""
    for path in paths:
        with open_input(path) as fh:
            for rec in read_sequences(fh, fmt or guess_format(path), skip_bad):
                yield rec.sequence


# ---------------------------------------------------------------- k-mer lists

def write_kmer_list(sink: BinaryIO, kmers: Iterable[bytes]) -> int:
    n = 0
    for kmer in kmers:
        sink.write(kmer + b"\n")
        n += 1
    return n


def read_kmer_list(source: BinaryIO) -> Iterator[bytes]:
    for lineno, line in enumerate(source, 1):
        kmer = line.rstrip(b"\r\n")
        if not kmer or kmer.translate(None, ALPHABET):
            raise ParseError(f"invalid k-mer {kmer[:40]!r}", lineno)
        yield kmer
