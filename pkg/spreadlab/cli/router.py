import argparse
from typing import Dict, NoReturn

from spreadlab.cli import deps
from spreadlab.cli.commands import bound, gen, simulate, solve, verify
from spreadlab.core.errors import InvalidParameterError
from spreadlab.models.run_config import Command, RunConfig

commands: Dict[Command, object] = {
    Command.GEN: gen,
    Command.SIMULATE: simulate,
    Command.SOLVE: solve,
    Command.BOUND: bound,
    Command.VERIFY: verify,
}

# RunConfig fields echoed back under "input" for each command
INPUT_FIELDS: Dict[Command, tuple] = {
    Command.GEN: ("graph_file", "family"),
    Command.SIMULATE: ("graph_file", "family", "rule", "seed", "times"),
    Command.SOLVE: ("graph_file", "family", "rule", "budget", "limit"),
    Command.BOUND: ("product", "left", "right", "rule", "construction", "left_set", "right_set", "limit"),
    Command.VERIFY: ("scope", "max_n", "max_product", "solver_cap", "trials", "rng_seed", "limit"),
}


class CommandParser(argparse.ArgumentParser):
    """Raises usage errors instead of printing usage and exiting."""

    def error(self, message: str) -> NoReturn:
        raise InvalidParameterError(f"{self.prog}: {message}", "invalid_config")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    common.add_argument("--limit", type=int, help="exact solver vertex limit (overrides SPREADLAB_SOLVER_LIMIT)")
    common.add_argument("--workers", type=int, help="worker count (overrides SPREADLAB_WORKERS)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = CommandParser(
        prog="spreadlab",
        description="Irreversible k-threshold and majority conversion processes on graphs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in commands.values():
        module.add_parser(subparsers, [common])
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if v is not None and k != "verbose"}
    if "theorem" in values:
        values["construction"] = bound.NUMBERED_CONSTRUCTIONS[values.pop("theorem")]
    if "rule" in values:
        values["rule"] = deps.parse_rule(values["rule"])
    for key in ("seed", "left_set", "right_set"):
        if key in values:
            values[key] = deps.parse_id_list(values[key])
    return RunConfig(**values)


def input_view(config: RunConfig) -> dict:
    fields = set(INPUT_FIELDS[config.command])
    return config.model_dump(mode="json", include=fields, exclude_none=True)
