from __future__ import annotations

import argparse

from ..aws import (
    aws_gap_function,
    c_log_gap_function,
    gap_allows,
    gap_f,
    glue,
    glue_blocks_property_run,
    glue_property_run,
    hp_gap_function,
    hp_gap_inequality_check,
)
from ..errors import LexError
from ..reports import Report
from ..subshift import check_gap_function
from ..utils import format_fraction, parse_int_list, parse_rational
from ..words import format_word, parse_word_list
from . import Router, arg

router = Router()

GAP_TABLE = {1: 2, 2: 3, 3: 3, 4: 4, 9: 4, 10: 5, 27: 5, 28: 6}


def _smallest_allowed_gap(run_length: int) -> int:
    zeros = 1
    while not gap_allows(run_length, zeros):
        zeros += 1
    return zeros


def gap_table_report(report: Report) -> None:
    rows = ["n,gap_f,expected,smallest_allowed"]
    mismatches = []
    for n, expected in GAP_TABLE.items():
        value = gap_f(n)
        smallest = _smallest_allowed_gap(n)
        rows.append(f"{n},{value},{expected},{smallest}")
        if not value == expected == smallest:
            mismatches.append(n)
    report.table("gap_table", "\n".join(rows) + "\n")
    report.check("gap_table", not mismatches, f"mismatch at n = {mismatches}" if mismatches else "")


@router.command(
    "glue-aws",
    "glue member words with gap_f zero gaps",
    arg("--N", type=int, default=2),
    arg("--trials", type=int, default=1000),
    arg("--words", default=None, help="comma-separated member words to glue once"),
    arg("--gaps", default=None, help="comma-separated zero-gap lengths, default gap_f(|w|)"),
    arg("--k", type=int, default=1, help="also glue block words of the k-th higher power"),
    arg("--n-max", dest="n_max", type=int, default=10_000, help="range for the gap-function sweep"),
)
def glue_command(args: argparse.Namespace) -> Report:
    if args.N < 1:
        raise LexError(f"--N must be positive, got {args.N}")
    report = Report(command="glue-aws", params={"N": args.N, "trials": args.trials, "k": args.k}, seed=args.seed)
    gap_table_report(report)

    sweep = check_gap_function(aws_gap_function(), args.n_max)
    report.check("gap_function", sweep.passed, "; ".join(sweep.violations))
    report.data["gap_function"] = {
        "description": sweep.description,
        "max_ratio": format_fraction(sweep.max_ratio),
        "tail_ratio": format_fraction(sweep.tail_ratio),
        "growth_flag": sweep.growth_flag,
    }

    if args.words:
        words = parse_word_list(args.words)
        gaps = parse_int_list(args.gaps, "gaps") if args.gaps else [gap_f(len(w)) for w in words[:-1]]
        glued = glue(args.N, words, gaps)
        report.data["glued"] = format_word(glued, compact=False)

    run = glue_property_run(args.N, args.trials, args.seed)
    report.check("glued_members", not run.failures, "; ".join(run.failures[:5]))
    report.check("wider_gaps_glue", not run.monotone_failures, "; ".join(run.monotone_failures[:5]))

    if args.k > 1:
        blocks = glue_blocks_property_run(args.N, args.k, max(1, args.trials // 10), args.seed)
        report.check("glued_block_members", blocks.passed, "; ".join(blocks.failures[:5]))
        sweep = check_gap_function(hp_gap_function(args.k), args.n_max)
        report.check("hp_gap_function", sweep.passed, "; ".join(sweep.violations))
    return report


@router.command(
    "hp-inequality",
    "check ceil(gap_f(kn)/k) <= max(1, ceil(C log3 n)) for every n",
    arg("--C", required=True, help="rational constant as p/q"),
    arg("--n-max", dest="n_max", type=int, default=1_000_000),
)
def inequality_command(args: argparse.Namespace) -> Report:
    C = parse_rational(args.C)
    result = hp_gap_inequality_check(C, args.n_max)
    report = Report(command="hp-inequality", params={"C": format_fraction(C), "k": result.k, "n_max": args.n_max})
    shown = ", ".join(f"n={n}: {lhs} > {rhs}" for n, lhs, rhs in result.violations)
    report.check("inequality", result.passed, shown)
    report.data["max_lhs"] = result.max_lhs
    report.data["max_rhs"] = result.max_rhs
    log_gap = check_gap_function(c_log_gap_function(C), min(args.n_max, 10_000))
    report.check("log_gap_function", log_gap.passed, "; ".join(log_gap.violations))
    return report
