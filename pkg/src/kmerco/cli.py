"""Command-line interface: ``kmerco {count,classify,oracle,compare,info,plan}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .countbf import (DEFAULT_ALPHA, DEFAULT_FPP, DEFAULT_HASHES, DEFAULT_SEED, CountBF,
                      FilterFormatError, plan_dimensions)
from .evaluate import compare
from .io_formats import FORMATS, ParseError, iter_sequences, read_kmer_list
from .metrics import format_reports, summary_csv
from .oracle import dump_counts, exact_classify, exact_count
from .pipeline import (DEFAULT_TAU, InsertionError, IntegrityError, classification_phase,
                       count_windows, insertion_phase)

log = logging.getLogger("kmerco")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTEGRITY = 4

FILTER_FILE = "filter.kmco"
DISTINCT_FILE = "distinct.txt"
TRUSTWORTHY_FILE = "trustworthy.txt"
ERRONEOUS_FILE = "erroneous.txt"


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _fpp(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"fpp must lie in (0, 1), got {text}")
    return value


def _alpha(text: str) -> int:
    value = int(text)
    if not 5 <= value <= 16:
        raise argparse.ArgumentTypeError(f"alpha must lie in [5, 16], got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _alpha_list(text: str) -> list[int]:
    return [_alpha(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_positive, default=28, help="k-mer length (default 28)")
    common.add_argument("--tau", type=_positive, default=DEFAULT_TAU,
                        help="trustworthy threshold, frequency > tau (default 5)")
    common.add_argument("--fpp", type=_fpp, default=DEFAULT_FPP)
    common.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA, help="counter bits")
    common.add_argument("--hashes", type=int, default=DEFAULT_HASHES, help="k_h")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="input format (default: guess from extension)")
    common.add_argument("--expected-n", type=_positive, default=None,
                        help="size the filter for this many k-mers and skip the counting pass")
    common.add_argument("--out-dir", type=Path, default=Path("."))
    common.add_argument("--skip-bad-records", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kmerco", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="insertion phase")
    p.add_argument("inputs", nargs="+", type=Path)

    p = sub.add_parser("classify", parents=[common], help="classification phase")
    p.add_argument("--filter", type=Path, help=f"default: OUT_DIR/{FILTER_FILE}")
    p.add_argument("--distinct", type=Path, help=f"default: OUT_DIR/{DISTINCT_FILE}")

    p = sub.add_parser("oracle", parents=[common], help="exact counts and classification")
    p.add_argument("inputs", nargs="+", type=Path)

    p = sub.add_parser("compare", parents=[common], help="count + classify + oracle report")
    p.add_argument("inputs", nargs="+", type=Path)
    p.add_argument("--label", default=None, help="dataset label (default: first input stem)")
    p.add_argument("--alpha-sweep", type=_alpha_list, default=None,
                   help="comma-separated counter lengths, one run each")
    p.add_argument("--n-scale", type=_float_list, default=None,
                   help="comma-separated multipliers of n used for sizing, one run each")

    p = sub.add_parser("info", parents=[common], help="describe a filter file")
    p.add_argument("filter", type=Path)

    p = sub.add_parser("plan", parents=[common], help="print filter dimensions for n")
    p.add_argument("--n", type=_positive, required=True)
    return parser


def _write_kv(path: Path, items: dict[str, object]) -> None:
    path.write_text("".join(f"{k} = {v}\n" for k, v in items.items()), encoding="utf-8")


def _print_kv(items: dict[str, object]) -> None:
    width = max(map(len, items))
    for k, v in items.items():
        print(f"{k:<{width}} = {v}")


def _reads(args):
    return lambda: iter_sequences(args.inputs, args.format, args.skip_bad_records)


def cmd_count(args) -> int:
    reads = _reads(args)
    n = args.expected_n
    if n is None:
        n = count_windows(reads(), args.k)
        log.info("counted %d k-mers for sizing", n)
    bf = CountBF.for_items(max(n, 1), args.fpp, args.alpha, args.hashes, args.seed)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / DISTINCT_FILE, "wb") as sink:
        stats = insertion_phase(reads(), args.k, bf, sink)
    with open(args.out_dir / FILTER_FILE, "wb") as fh:
        bf.save(fh)
    summary = {"K": args.k, **stats.as_dict(), **bf.plan.summary()}
    _write_kv(args.out_dir / "count_stats.txt", summary)
    _print_kv(summary)
    return EXIT_OK


def cmd_classify(args) -> int:
    filter_path = args.filter or args.out_dir / FILTER_FILE
    distinct_path = args.distinct or args.out_dir / DISTINCT_FILE
    with open(filter_path, "rb") as fh:
        bf = CountBF.load(fh)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(distinct_path, "rb") as src, \
            open(args.out_dir / TRUSTWORTHY_FILE, "wb") as trust, \
            open(args.out_dir / ERRONEOUS_FILE, "wb") as err:
        stats = classification_phase(bf, read_kmer_list(src), args.tau, trust, err)
    summary = stats.as_dict()
    _write_kv(args.out_dir / "classify_stats.txt", summary)
    _print_kv(summary)
    return EXIT_OK


def cmd_oracle(args) -> int:
    exact = exact_count(_reads(args)(), args.k, args.seed)
    distinct, trust, err = exact_classify(exact, args.tau)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / "oracle_counts.tsv", "wb") as fh:
        dump_counts(exact, fh)
    for name, kmers in (("oracle_trustworthy.txt", trust), ("oracle_erroneous.txt", err)):
        with open(args.out_dir / name, "wb") as fh:
            fh.writelines(k + b"\n" for k in sorted(kmers))
    summary = {"K": args.k, "tau": args.tau, "seed": args.seed, "total": exact.total,
               "distinct": len(distinct), "trustworthy": len(trust),
               "erroneous": len(err), "rejected_windows": exact.rejected_windows}
    _write_kv(args.out_dir / "oracle_stats.txt", summary)
    _print_kv(summary)
    return EXIT_OK


def cmd_compare(args) -> int:
    reads = _reads(args)
    label = args.label or args.inputs[0].name.split(".")[0]
    alphas = args.alpha_sweep or [args.alpha]
    scales = args.n_scale or [1.0]
    base_n = args.expected_n
    if base_n is None and (len(scales) > 1 or scales[0] != 1.0):
        base_n = count_windows(reads(), args.k)
    reports = []
    for alpha in alphas:
        for scale in scales:
            n = None if base_n is None else max(1, round(base_n * scale))
            log.info("run alpha=%d n=%s", alpha, n if n is not None else "auto")
            run = compare(reads, args.k, tau=args.tau, fpp=args.fpp, alpha=alpha,
                          k_h=args.hashes, seed=args.seed, expected_n=n, label=label)
            reports.append(run.report)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "report.txt").write_text(format_reports(reports), encoding="utf-8")
    table = summary_csv(reports)
    (args.out_dir / "summary.csv").write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    return EXIT_OK


def cmd_info(args) -> int:
    with open(args.filter, "rb") as fh:
        bf = CountBF.load(fh)
    _print_kv({**bf.plan.summary(), **bf.fill_stats()})
    return EXIT_OK


def cmd_plan(args) -> int:
    plan = plan_dimensions(args.n, args.fpp, args.alpha, args.hashes, args.seed)
    summary = plan.summary()
    summary["size_mb"] = round(plan.size_bytes / 1e6, 3)
    summary["size_mib"] = round(plan.size_bytes / 2 ** 20, 3)
    _print_kv(summary)
    return EXIT_OK


COMMANDS = {"count": cmd_count, "classify": cmd_classify, "oracle": cmd_oracle,
            "compare": cmd_compare, "info": cmd_info, "plan": cmd_plan}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="kmerco: %(message)s", stream=sys.stderr)
    if not 1 <= args.hashes <= 255:
        parser.error("--hashes must lie in [1, 255]")
    try:
        return COMMANDS[args.command](args)
    except (IntegrityError, FilterFormatError) as exc:
        print(f"kmerco: integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except InsertionError as exc:
        print(f"kmerco: {exc} (after {exc.stats.total_kmers} k-mers)", file=sys.stderr)
        return EXIT_IO
    except (OSError, ParseError) as exc:
        print(f"kmerco: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"kmerco: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
