import json
import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from spreadlab.cli.router import build_config, build_parser, commands, input_view
from spreadlab.core.config import settings
from spreadlab.core.errors import InvalidParameterError, SpreadLabError
from spreadlab.models.run_config import OutputFormat, RunConfig

logger = logging.getLogger(__name__)


def configure_logging(verbose: int = 0) -> None:
    level = settings.LOG_LEVEL
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@contextmanager
def settings_override(config: RunConfig):
    """Apply --limit/--workers to the shared settings for one command."""
    saved = settings.SOLVER_LIMIT, settings.WORKERS
    if config.limit is not None:
        settings.SOLVER_LIMIT = config.limit
    if config.workers is not None:
        settings.WORKERS = config.workers
    try:
        yield
    finally:
        settings.SOLVER_LIMIT, settings.WORKERS = saved


def dispatch(config: RunConfig) -> tuple[int, Dict[str, Any], List[str]]:
    """Run one command; returns (exit status, JSON payload, text lines)."""
    started = time.perf_counter()
    with settings_override(config):
        outcome = commands[config.command].handle(config)
    timing = None
    if config.timing:
        timing = {"elapsed_ms": round((time.perf_counter() - started) * 1000, 3)}
    payload = {
        "command": config.command.value,
        "input": input_view(config),
        "result": outcome.result,
        "timing": timing,
    }
    return outcome.exit_status, payload, outcome.text


def _validation_message(e: ValidationError) -> str:
    first = e.errors()[0]
    return str(first.get("msg", e)).removeprefix("Value error, ")


def _requested_format(argv: List[str]) -> OutputFormat:
    for i, token in enumerate(argv):
        if token == "--format=json" or (token == "--format" and argv[i + 1 : i + 2] == ["json"]):
            return OutputFormat.JSON
    return OutputFormat.TEXT


def _report_error(fmt: OutputFormat, command: Optional[str], view: Dict[str, Any], error: SpreadLabError) -> int:
    logger.info(f"command failed: {error.code}")
    if fmt == OutputFormat.JSON:
        payload = {"command": command, "input": view, "error": error.to_dict()}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stderr.write(f"error[{error.code}]: {error.detail}\n")
    return error.exit_status


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InvalidParameterError as e:
        names = {c.value for c in commands}
        command = next((token for token in argv if token in names), None)
        return _report_error(_requested_format(argv), command, {}, e)
    configure_logging(args.verbose)
    fmt = OutputFormat(args.format)

    config = None
    try:
        config = build_config(args)
        status, payload, text = dispatch(config)
    except ValidationError as e:
        error: SpreadLabError = InvalidParameterError(_validation_message(e), "invalid_config")
    except SpreadLabError as e:
        error = e
    except OSError as e:
        error = InvalidParameterError(f"cannot read input: {e}", "io_error")
    else:
        if fmt == OutputFormat.JSON:
            sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        else:
            sys.stdout.write("\n".join(text) + "\n")
        return status

    return _report_error(fmt, args.command, input_view(config) if config is not None else {}, error)


if __name__ == "__main__":
    sys.exit(main())
