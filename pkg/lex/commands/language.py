from __future__ import annotations

import argparse
import csv
import io

from ..aspec import AspecModel, count_formula_literal
from ..errors import LexError
from ..reports import Report
from ..subshift import METHODS, count_table, enumerate_language, entropy_table, subadditivity_violations
from ..words import format_word
from . import MODEL_ARGS, Router, arg, make_model, model_params

router = Router()


def _lengths(args: argparse.Namespace) -> list[int]:
    if args.n is not None:
        return [args.n]
    if args.n_max is not None:
        return list(range(1, args.n_max + 1))
    raise LexError("one of --n or --n-max is required")


def _methods(method: str, model: object) -> list[str]:
    if method != "all":
        return [method]
    # only the aspec model carries an independent closed formula
    return list(METHODS) if isinstance(model, AspecModel) else ["brute", "dp"]


def _format_letter(letter: object) -> str:
    if isinstance(letter, tuple):
        return "[" + format_word(letter, compact=False) + "]"
    return str(letter)


@router.command(
    "enumerate",
    "list L_n in lexicographic order",
    *MODEL_ARGS,
    arg("--n", type=int, required=True),
)
def enumerate_command(args: argparse.Namespace) -> Report:
    model = make_model(args)
    words = enumerate_language(model, args.n)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["word"])
    for w in words:
        writer.writerow([" ".join(_format_letter(letter) for letter in w)])
    report = Report(command="enumerate", params={**model_params(args, model), "n": args.n})
    report.data["count"] = len(words)
    report.table("words", buffer.getvalue())
    report.check("lexicographic", list(words) == sorted(words))
    report.check("members", all(model.is_member(w) for w in words))
    return report


@router.command(
    "count",
    "count L_n by brute force, DP and closed formula",
    *MODEL_ARGS,
    arg("--n", type=int, default=None),
    arg("--n-max", dest="n_max", type=int, default=None),
    arg("--method", choices=[*METHODS, "all"], default="dp"),
)
def count_command(args: argparse.Namespace) -> Report:
    model = make_model(args)
    lengths = _lengths(args)
    methods = _methods(args.method, model)
    table = count_table(model, lengths, methods)
    report = Report(command="count", params={**model_params(args, model), "lengths": [lengths[0], lengths[-1]], "methods": methods})
    report.table("counts", table.to_csv())
    report.data["counts"] = {str(n): {method: str(c) for method, c in table.counts(n).items()} for n in lengths}
    if len(methods) > 1:
        disagreements = table.disagreements()
        report.check("methods_agree", not disagreements, f"disagreeing lengths: {disagreements}" if disagreements else "")
    if isinstance(model, AspecModel):
        short = [n for n in lengths if min(table.counts(n).values()) < 2 * model.N**n]
        report.check("contains_full_shifts", not short, f"lengths below 2N^n: {short}" if short else "")
        if args.method == "all":
            small = [n for n in lengths if n <= 12]
            literal = [n for n in small if count_formula_literal(model, n) != table.counts(n)["formula"]]
            report.check("literal_composition_sum", not literal, f"mismatch at {literal}" if literal else "")
    return report


@router.command(
    "entropy",
    "per-length entropy upper bounds (1/n) ln |L_n|",
    *MODEL_ARGS,
    arg("--n-max", dest="n_max", type=int, required=True),
    arg("--method", choices=list(METHODS), default="dp"),
)
def entropy_command(args: argparse.Namespace) -> Report:
    model = make_model(args)
    table = entropy_table(model, args.n_max, args.method)
    counts = {row.n: row.count for row in table.rows if row.count is not None}
    violations = subadditivity_violations(counts)
    report = Report(command="entropy", params={**model_params(args, model), "n_max": args.n_max, "method": args.method})
    report.table("entropy", table.to_csv())
    report.data["nonincreasing"] = table.nonincreasing
    report.data["upper_bound"] = f"{min(row.log_rate for row in table.rows):.12f}"
    inexact = [row.n for row in table.rows if not row.exact]
    report.data["log_space_from"] = inexact[0] if inexact else None
    report.check("submultiplicative", not violations, f"(m, n) pairs: {violations[:10]}" if violations else "")
    return report
