from __future__ import annotations

import argparse

from ..aspec import AspecModel, alpha_interval, entropy_bound_check, repair_concatenation, repair_property_run
from ..reports import Report
from ..utils import format_fraction
from ..words import format_word, parse_word_list
from . import Router, arg

router = Router()

ASPEC_ARGS = (
    arg("--N", type=int, default=2),
    arg("--ell", type=int, default=3),
)


@router.command(
    "repair-aspec",
    "concatenate member words with at most four changes per word",
    *ASPEC_ARGS,
    arg("--trials", type=int, default=1000),
    arg("--max-words", dest="max_words", type=int, default=5),
    arg("--max-length", dest="max_length", type=int, default=20),
    arg("--words", default=None, help="comma-separated member words to repair once"),
    arg("--repair-edges", dest="repair_edges", action="store_true", help="also repair the two outermost runs"),
)
def repair_command(args: argparse.Namespace) -> Report:
    model = AspecModel(args.N, args.ell)
    report = Report(
        command="repair-aspec",
        params={"N": args.N, "ell": args.ell, "trials": args.trials, "repair_edges": args.repair_edges},
        seed=args.seed,
    )
    report.table("families", model.family_csv(max(args.max_length, args.ell + 1)))
    if args.words:
        result = repair_concatenation(model, parse_word_list(args.words), repair_edges=args.repair_edges)
        report.data["glued"] = format_word(result.glued, compact=False)
        report.data["distances"] = result.distances
        report.data["transcript"] = result.transcript()

    run = repair_property_run(
        model,
        args.trials,
        args.seed,
        max_words=args.max_words,
        max_length=args.max_length,
        repair_edges=args.repair_edges,
    )
    report.check("repaired_members", not run.failures, "; ".join(run.failures[:5]))
    report.check("signs_preserved", not run.sign_failures, "; ".join(run.sign_failures[:5]))
    report.check("at_most_four_changes", run.max_distance <= 4, f"max distance {run.max_distance}")
    report.data["max_distance"] = run.max_distance
    report.data["histogram"] = {str(d): run.histogram[d] for d in sorted(run.histogram)}
    return report


@router.command(
    "alpha",
    "exact interval for sum M_t/N^t",
    arg("--N", type=int, default=10),
    arg("--ell", type=int, default=32),
    arg("--cutoff", type=int, default=None, help="last exact term; the tail is bounded by 16/cutoff"),
)
def alpha_command(args: argparse.Namespace) -> Report:
    model = AspecModel(args.N, args.ell)
    alpha = alpha_interval(model, args.cutoff)
    report = Report(command="alpha", params={"N": args.N, "ell": args.ell, "cutoff": alpha.cutoff})
    report.data["lower"] = f"{float(alpha.lower):.12f}"
    report.data["upper"] = f"{float(alpha.upper):.12f}"
    report.data["lemma_bound"] = format_fraction(alpha.lemma_bound)
    report.check("upper_below_one", alpha.upper < 1, f"upper = {float(alpha.upper):.6f}")
    report.check("lower_within_lemma_bound", alpha.lower <= alpha.lemma_bound, f"lemma bound = {float(alpha.lemma_bound):.6f}")
    return report


@router.command(
    "entropy-bound",
    "check |L_n| <= (2n/(1 - alpha)) N^n exactly",
    arg("--N", type=int, default=10),
    arg("--ell", type=int, default=32),
    arg("--n-max", dest="n_max", type=int, default=200),
    arg("--cutoff", type=int, default=None),
)
def entropy_bound_command(args: argparse.Namespace) -> Report:
    model = AspecModel(args.N, args.ell)
    result = entropy_bound_check(model, args.n_max, args.cutoff)
    report = Report(command="entropy-bound", params={"N": args.N, "ell": args.ell, "n_max": args.n_max, "cutoff": result.alpha.cutoff})
    report.data["alpha_upper"] = f"{float(result.alpha.upper):.12f}"
    failing = [row.n for row in result.rows if not row.passed]
    report.check("count_bound", not failing, f"fails at n = {failing[:10]}" if failing else "")
    report.table("bound", result.to_csv())
    return report
