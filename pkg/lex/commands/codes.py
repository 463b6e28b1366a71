from __future__ import annotations

import argparse
import itertools
import random

from ..codes import (
    Code,
    CodeFamily,
    build_T,
    build_U,
    build_V,
    class_partition,
    extract_3_separated,
    normalize_letters,
    parse_parity_vector,
    repair_T,
    repair_spanning,
    t_class_counts,
    t_membership,
    verify_separated,
    verify_spanning,
)
from ..reports import Report
from ..utils import parse_int_list
from ..words import parse_word
from . import Router, arg

router = Router()

BUILDERS = {"T": build_T, "U": build_U, "V": build_V}
RADIUS = {"T": 1, "U": 2, "V": 2}

LETTERS_ARG = arg("--letters", default="0,1", help="comma-separated alphabet")


def _letters(text: str) -> tuple[int, ...]:
    return normalize_letters(parse_int_list(text, "alphabet"))


def _lengths(args: argparse.Namespace, smallest: int) -> list[int]:
    if args.n is not None:
        return [args.n]
    return list(range(smallest, args.n_max + 1))


def bound_holds(code: Code) -> bool:
    a, n = code.a, code.n
    if code.family is CodeFamily.T:
        return code.cardinality * 2 ** (n.bit_length() - 1) <= a**n
    if code.family is CodeFamily.U:
        return code.cardinality * n * n <= 16 * a**n
    return code.cardinality == a ** (n - 2)


@router.command(
    "build",
    "construct one spanning code and list its members",
    arg("--family", choices=sorted(BUILDERS), required=True),
    LETTERS_ARG,
    arg("--n", type=int, required=True),
    arg("--members", action="store_true", help="embed the member list"),
    group="codes",
)
def build_command(args: argparse.Namespace) -> Report:
    letters = _letters(args.letters)
    code = BUILDERS[args.family](letters, args.n)
    report = Report(command="codes build", params={"family": args.family, "letters": list(letters), "n": args.n})
    report.data["header"] = code.header()
    report.data["cardinality"] = str(code.cardinality)
    report.check("cardinality_bound", bound_holds(code), code.header())
    if args.members:
        report.table("members", code.to_text())
    return report


@router.command(
    "verify",
    "exhaustively verify covering radius and cardinality bounds",
    arg("--family", choices=sorted(BUILDERS), required=True),
    LETTERS_ARG,
    arg("--n", type=int, default=None),
    arg("--n-max", dest="n_max", type=int, default=12),
    group="codes",
)
def verify_command(args: argparse.Namespace) -> Report:
    letters = _letters(args.letters)
    family = args.family
    radius = RADIUS[family]
    report = Report(command="codes verify", params={"family": family, "letters": list(letters), "radius": radius})
    rows = ["n,cardinality,bound_holds,spanning"]
    failures = []
    partition_failures = []
    for n in _lengths(args, 1 if family == "T" else 2):
        code = BUILDERS[family](letters, n)
        spanning = verify_spanning(code, radius)
        bound = bound_holds(code)
        rows.append(f"{n},{code.cardinality},{bound},{spanning}")
        if not (spanning and bound):
            failures.append(n)
        if family == "T" and sum(t_class_counts(letters, n)) != len(letters) ** n:
            partition_failures.append(n)
    report.table("codes", "\n".join(rows) + "\n")
    report.check(f"{radius}_spanning_within_bound", not failures, f"fails at n = {failures}" if failures else "")
    if family == "T":
        report.check("classes_partition_cube", not partition_failures, f"fails at n = {partition_failures}" if partition_failures else "")
    return report


def _separate_once(report: Report, words: list[tuple[int, ...]], letters: tuple[int, ...], n: int, label: str) -> bool:
    code = extract_3_separated(words, letters, n)
    separated = verify_separated(code.members(), 3)
    bound = code.cardinality * 4 * n * len(letters) ** 2 >= len(words)
    sizes = sum(len(cls) for cls in class_partition(words, letters, n).values())
    ok = separated and bound and sizes == len(words)
    if not ok:
        report.data.setdefault("separate_failures", []).append(f"{label}: separated={separated} bound={bound}")
    return ok


@router.command(
    "separate",
    "extract 3-separated subsets from the cube and from random word sets",
    LETTERS_ARG,
    arg("--n", type=int, default=None),
    arg("--n-max", dest="n_max", type=int, default=8),
    arg("--random", dest="random_sets", type=int, default=50, help="seeded random subsets per length"),
    group="codes",
)
def separate_command(args: argparse.Namespace) -> Report:
    letters = _letters(args.letters)
    rng = random.Random(args.seed)
    report = Report(command="codes separate", params={"letters": list(letters), "random": args.random_sets}, seed=args.seed)
    failed = 0
    checked = 0
    for n in _lengths(args, 1):
        cube = list(itertools.product(letters, repeat=n))
        checked += 1
        failed += not _separate_once(report, cube, letters, n, f"A^{n}")
        for trial in range(args.random_sets):
            subset = rng.sample(cube, rng.randint(1, len(cube)))
            checked += 1
            failed += not _separate_once(report, subset, letters, n, f"n={n} trial {trial}")
    report.data["sets_checked"] = checked
    report.check("three_separated_extraction", failed == 0, f"{failed} of {checked} sets failed" if failed else "")
    return report


@router.command(
    "repair-example",
    "the worked T-code example over {0,1,2}, n = 10, v = 010",
    group="codes",
)
def repair_example_command(args: argparse.Namespace) -> Report:
    letters = (0, 1, 2)
    v = parse_parity_vector("010")
    member = parse_word("0121200111")
    outsider = parse_word("0211221100")
    expected = parse_word("0211211100")
    repaired = repair_T(letters, 10, v, outsider)
    report = Report(command="codes repair-example", params={"letters": list(letters), "n": 10, "v": "010"})
    report.check("member_accepted", t_membership(letters, 10, v, member), "0121200111")
    report.check("outsider_rejected", not t_membership(letters, 10, v, outsider), "0211221100")
    report.check("repair", repaired == expected, "".join(map(str, repaired)))
    report.check("repaired_is_member", t_membership(letters, 10, v, repaired))
    code = build_T(letters, 10)
    sample = parse_word("2222222222")
    report.check("spanning_repair_distance", sum(x != y for x, y in zip(sample, repair_spanning(code, sample))) <= 1)
    return report
