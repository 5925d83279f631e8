import asyncio

from spreadlab.cli.outcome import CommandOutcome
from spreadlab.models.run_config import RunConfig
from spreadlab.services.verify_suite import Scope, SuiteParams, run_suite


def add_parser(subparsers, parents) -> None:
    p = subparsers.add_parser("verify", parents=parents, help="cross-check constructions against the exact solver")
    p.add_argument("--scope", default=Scope.ALL.value, choices=[s.value for s in Scope])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-product", type=int, default=36)
    p.add_argument("--solver-cap", type=int, default=20, help="largest product checked against the exact solver")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--rng-seed", type=int, default=1)


def handle(config: RunConfig) -> CommandOutcome:
    params = SuiteParams(
        max_n=config.max_n,
        max_product=config.max_product,
        solver_cap=config.solver_cap,
        trials=config.trials,
        rng_seed=config.rng_seed,
    )
    report = asyncio.run(run_suite(config.scope, params, config.workers))

    text = [f"scope: {report.scope}", f"passed: {report.passed}", f"failed: {report.failed}"]
    text += [f"FAIL {c.key}: {c.detail}" for c in report.checks if not c.passed]
    return CommandOutcome(
        result=report.model_dump(mode="json"),
        text=text,
        exit_status=1 if report.failed else 0,
    )
