from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .commands import aspec, aws, codes, common_parent, include_routers, language, measures, verify
from .config import get_settings
from .errors import LexError
from .reports import Report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lex", description="Executable checks for counterexample subshifts and covering codes.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    include_routers(
        subparsers,
        [language.router, aws.router, aspec.router, codes.router, measures.router, verify.router],
        parents=[common_parent()],
    )
    return parser


def run(argv: Sequence[str]) -> tuple[Report | None, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return None, exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        get_settings()
        report = args.handler(args)
    except (LexError, RuntimeError) as exc:
        print(f"lex {args.command_name}: error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE

    output = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        report.write(Path(args.out), args.format)
    sys.stdout.write(output)
    return report, EXIT_OK if report.ok else EXIT_CHECK_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    _, code = run(sys.argv[1:] if argv is None else argv)
    logging.shutdown()
    return code


if __name__ == "__main__":
    sys.exit(main())
