"""Command routers. Each command module owns a `router`; `lex.main` includes them."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable

from ..aspec import AspecModel
from ..aws import AwsModel
from ..errors import LexError
from ..reports import Report
from ..subshift import FullShift, SubshiftModel, higher_power
from ..utils import parse_int_list
from ..words import SignedAlphabet

Handler = Callable[[argparse.Namespace], Report]


@dataclass(slots=True)
class Arg:
    flags: tuple[str, ...]
    options: dict[str, Any]


def arg(*flags: str, **options: Any) -> Arg:
    return Arg(flags=flags, options=options)


@dataclass(slots=True)
class _Command:
    name: str
    help: str
    group: str | None
    arguments: tuple[Arg, ...]
    handler: Handler


@dataclass(slots=True)
class Router:
    commands: list[_Command] = field(default_factory=list)

    def command(self, name: str, help: str, *arguments: Arg, group: str | None = None) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self.commands.append(_Command(name=name, help=help, group=group, arguments=arguments, handler=handler))
            return handler

        return decorator


def include_routers(subparsers: argparse._SubParsersAction, routers: list[Router], parents: list[argparse.ArgumentParser]) -> None:
    groups: dict[str, argparse._SubParsersAction] = {}
    for router in routers:
        for command in router.commands:
            target = subparsers
            if command.group is not None:
                if command.group not in groups:
                    group_parser = subparsers.add_parser(command.group, help=f"{command.group} commands")
                    groups[command.group] = group_parser.add_subparsers(dest="action", required=True)
                target = groups[command.group]
            parser = target.add_parser(command.name, help=command.help, parents=parents)
            for argument in command.arguments:
                parser.add_argument(*argument.flags, **argument.options)
            full_name = f"{command.group} {command.name}" if command.group else command.name
            parser.set_defaults(handler=command.handler, command_name=full_name)


def common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0, help="seed for every random draw")
    parent.add_argument("--out", default=None, help="write the report here (tables land beside it)")
    parent.add_argument("--format", choices=["json", "csv"], default="json")
    return parent


MODEL_ARGS = (
    arg("--model", choices=["full", "aws", "aspec"], required=True),
    arg("--N", type=int, default=2, help="largest letter magnitude"),
    arg("--ell", type=int, default=2, help="run length up to which V families are used"),
    arg("--k", type=int, default=1, help="higher-power exponent"),
    arg("--letters", default=None, help="comma-separated alphabet for the full shift"),
)


def make_model(args: argparse.Namespace) -> SubshiftModel:
    if args.N < 1:
        raise LexError(f"--N must be positive, got {args.N}")
    if args.model == "full":
        if args.letters:
            letters = parse_int_list(args.letters, "alphabet")
        else:
            letters = list(SignedAlphabet(N=args.N, includes_zero=False).letters)
        model: SubshiftModel = FullShift(letters)
    elif args.model == "aws":
        model = AwsModel(args.N)
    else:
        model = AspecModel(args.N, args.ell)
    return higher_power(model, args.k)


def model_params(args: argparse.Namespace, model: SubshiftModel) -> dict[str, Any]:
    params: dict[str, Any] = {"model": args.model, "N": args.N, "k": args.k}
    if args.model == "aspec":
        params["ell"] = args.ell
    if args.model == "full":
        params["letters"] = list(model.base.letters if args.k > 1 else model.letters)  # type: ignore[attr-defined]
    return params
