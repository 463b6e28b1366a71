from __future__ import annotations

import argparse
import math
from fractions import Fraction

from ..errors import LexError
from ..measures import (
    bernoulli_distribution,
    bernoulli_table,
    disjoint_support_check,
    level_entropy,
    marginal,
    max_deviation,
    sample_and_frequencies,
    support_count_check,
)
from ..reports import Report
from ..utils import parse_int_list
from . import Router, arg

router = Router()

MARGINAL_CELLS = 2**20


def _sizes(text: str) -> list[int]:
    sizes = parse_int_list(text, "alphabet sizes")
    if not sizes or min(sizes) < 1:
        raise LexError(f"alphabet sizes must be positive, got {text!r}")
    return sizes


@router.command(
    "measures",
    "uniform Bernoulli entropy, support counts, disjointness and sampling",
    arg("--sizes", default="2,10,20", help="comma-separated alphabet sizes a"),
    arg("--n-max", dest="n_max", type=int, default=12),
    arg("--sample-length", dest="sample_length", type=int, default=100_000),
    arg("--tolerance", type=float, default=0.05, help="allowed sampled deviation from a^-n"),
)
def measures_command(args: argparse.Namespace) -> Report:
    sizes = _sizes(args.sizes)
    report = Report(
        command="measures",
        params={"sizes": sizes, "n_max": args.n_max, "sample_length": args.sample_length},
        seed=args.seed,
    )
    rows = ["a,n,support,entropy,ln_a"]
    entropy_misses = []
    support_misses = []
    for a in sizes:
        letters = range(1, a + 1)
        for n in range(1, args.n_max + 1):
            dist = bernoulli_distribution(letters, n)
            entropy = level_entropy(dist)
            exact = dist.total() == 1 and set(dist.weight_classes()) == {Fraction(1, a**n)}
            if not exact or abs(entropy - math.log(a)) > 1e-12:
                entropy_misses.append(f"a={a} n={n}")
            support = support_count_check(dist)
            if not support.passed or not math.isclose(support.exponent, math.log(support.support), rel_tol=1e-12):
                support_misses.append(f"a={a} n={n}")
            rows.append(f"{a},{n},{support.support},{entropy:.15f},{math.log(a):.15f}")
    report.table("bernoulli", "\n".join(rows) + "\n")
    report.check("entropy_is_ln_a", not entropy_misses, ", ".join(entropy_misses))
    report.check("support_count_equality", not support_misses, ", ".join(support_misses))

    N = max(sizes)
    overlaps = [
        n
        for n in range(1, args.n_max + 1)
        if not disjoint_support_check(bernoulli_distribution(range(1, N + 1), n), bernoulli_distribution(range(-N, 0), n))
    ]
    report.check("signed_supports_disjoint", not overlaps, f"overlap at n = {overlaps}" if overlaps else "")

    small = min(sizes)
    levels = [n for n in range(1, args.n_max + 1) if small**n <= MARGINAL_CELLS]
    marginals_ok = all(
        marginal(bernoulli_table(range(1, small + 1), n)).weights == bernoulli_table(range(1, small + 1), n - 1).weights
        for n in levels
    )
    report.data["marginal_levels"] = levels[-1] if levels else 0
    report.check("marginals_consistent", marginals_ok)

    deviations = {}
    for n in (1, 2):
        sampled = sample_and_frequencies(range(1, small + 1), args.sample_length, n, args.seed)
        deviations[str(n)] = max_deviation(sampled, small)
        report.table(f"sample_n{n}", sampled.to_csv())
    worst = max(deviations.values())
    report.data["sample_deviation"] = {key: f"{value:.6f}" for key, value in deviations.items()}
    report.check("sampled_frequencies", worst <= args.tolerance, f"max deviation {worst:.6f}")
    return report
