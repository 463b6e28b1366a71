"""`verify all`: every desk-scale acceptance check as one queued batch."""
from __future__ import annotations

import argparse
import logging
from fractions import Fraction
from typing import Callable

from ..aspec import AspecModel, alpha_interval
from ..config import get_settings
from ..queues import Job, JobStatus, run_jobs
from ..reports import Report
from . import Router, arg
from .aspec import entropy_bound_command, repair_command
from .aws import glue_command, inequality_command
from .codes import repair_example_command, separate_command, verify_command
from .language import count_command
from .measures import measures_command

LOGGER = logging.getLogger(__name__)

router = Router()


def _ns(seed: int, **values: object) -> argparse.Namespace:
    return argparse.Namespace(seed=seed, out=None, format="json", **values)


def _merged(command: str, parts: list[tuple[str, Report]]) -> Report:
    report = Report(command=command)
    for prefix, part in parts:
        report.merge(part, prefix)
    return report


def _codes_t(seed: int, n_max: int) -> Report:
    return _merged("codes-t", [
        (letters, verify_command(_ns(seed, family="T", letters=letters, n=None, n_max=n_max)))
        for letters in ("0,1", "0,1,2")
    ])


def _codes_uv(seed: int, n_max: int) -> Report:
    return _merged("codes-uv", [
        (family, verify_command(_ns(seed, family=family, letters="0,1", n=None, n_max=n_max)))
        for family in ("U", "V")
    ])


def _separated(seed: int, n_max: int, random_sets: int) -> Report:
    return _merged("separated", [
        (letters, separate_command(_ns(seed, letters=letters, n=None, n_max=n_max, random_sets=random_sets)))
        for letters in ("0,1", "0,1,2")
    ])


def _aws(seed: int, n_max: int, trials: int) -> Report:
    parts = [
        (f"count_N{N}", count_command(_ns(seed, model="aws", N=N, ell=2, k=1, letters=None, n=None, n_max=n_max, method="all")))
        for N in (1, 2)
    ]
    parts.append(("glue", glue_command(_ns(seed, N=2, trials=trials, words=None, gaps=None, k=1, n_max=10_000))))
    return _merged("aws", parts)


def _inequality(seed: int, n_max: int) -> Report:
    return _merged("hp-inequality", [
        (str(C).replace("/", "_"), inequality_command(_ns(seed, C=str(C), n_max=n_max)))
        for C in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
    ])


def _aspec_counts(seed: int, n_max: int) -> Report:
    return _merged("aspec-counts", [
        (f"ell{ell}", count_command(_ns(seed, model="aspec", N=2, ell=ell, k=1, letters=None, n=None, n_max=n_max, method="all")))
        for ell in (2, 3)
    ])


def _aspec_bound(seed: int, n_max: int) -> Report:
    model = AspecModel(10, 32)
    alpha = alpha_interval(model)
    report = Report(command="aspec-bound")
    report.check("alpha_upper_at_most_0.91", alpha.upper <= Fraction(91, 100), f"upper = {float(alpha.upper):.6f}")
    report.merge(entropy_bound_command(_ns(seed, N=10, ell=32, n_max=n_max, cutoff=None)), "bound")
    return report


def _repair(seed: int, trials: int) -> Report:
    return repair_command(_ns(seed, N=2, ell=3, trials=trials, max_words=5, max_length=20, words=None, repair_edges=False))


def _measures(seed: int, n_max: int) -> Report:
    return measures_command(_ns(seed, sizes="2,10,20", n_max=n_max, sample_length=100_000, tolerance=0.05))


def _determinism(seed: int) -> Report:
    report = Report(command="determinism")
    for name, build in (
        ("glue-aws", lambda: glue_command(_ns(seed, N=2, trials=50, words=None, gaps=None, k=1, n_max=100))),
        ("repair-aspec", lambda: _repair(seed, 50)),
    ):
        first, second = build().to_json(), build().to_json()
        report.check(name, first == second)
    return report


def acceptance_jobs(seed: int, quick: bool) -> list[Job]:
    """Checks in report order; quick shrinks every range to its small end."""
    scale: dict[str, int] = {
        "t": 8 if quick else 12,
        "sep": 5 if quick else 8,
        "sets": 5 if quick else 50,
        "aws": 8 if quick else 14,
        "trials": 100 if quick else 1000,
        "ineq": 10_000 if quick else 1_000_000,
        "aspec": 8 if quick else 12,
        "bound": 40 if quick else 200,
        "levels": 6 if quick else 12,
    }
    checks: list[tuple[str, Callable[[], Report]]] = [
        ("01_repair_example", lambda: repair_example_command(_ns(seed))),
        ("02_t_codes", lambda: _codes_t(seed, scale["t"])),
        ("03_u_v_codes", lambda: _codes_uv(seed, scale["t"])),
        ("04_separated", lambda: _separated(seed, scale["sep"], scale["sets"])),
        ("05_aws", lambda: _aws(seed, scale["aws"], scale["trials"])),
        ("06_hp_inequality", lambda: _inequality(seed, scale["ineq"])),
        ("07_aspec_counts", lambda: _aspec_counts(seed, scale["aspec"])),
        ("08_aspec_bound", lambda: _aspec_bound(seed, scale["bound"])),
        ("09_repair", lambda: _repair(seed, scale["trials"])),
        ("10_measures", lambda: _measures(seed, scale["levels"])),
        ("11_determinism", lambda: _determinism(seed)),
    ]
    return [Job(name=name, func=func) for name, func in checks]


@router.command(
    "all",
    "run every acceptance check and merge the reports",
    arg("--quick", action="store_true", help="small end of every range"),
    arg("--workers", type=int, default=None, help="defaults to LEX_WORKERS"),
    group="verify",
)
def verify_all_command(args: argparse.Namespace) -> Report:
    workers = args.workers if args.workers is not None else get_settings().max_workers
    jobs = run_jobs(acceptance_jobs(args.seed, args.quick), workers)
    report = Report(command="verify all", params={"quick": args.quick}, seed=args.seed)
    for job in jobs:
        if job.status == JobStatus.DONE and isinstance(job.result, Report):
            report.merge(job.result, job.name)
        else:
            report.check(job.name, False, job.last_error or f"job ended as {job.status}")
    LOGGER.info("verify all: %d checks, ok=%s", len(report.checks), report.ok)
    return report
