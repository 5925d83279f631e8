from spreadlab.cli import deps
from spreadlab.cli.outcome import CommandOutcome
from spreadlab.models.run_config import RunConfig
from spreadlab.services.exact_solver import ExactSolver


def add_parser(subparsers, parents) -> None:
    p = subparsers.add_parser("solve", parents=parents, help="exact minimum conversion set")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--family")
    source.add_argument("--graph", dest="graph_file")
    p.add_argument("--rule", required=True, help="majority, k:K or K")
    p.add_argument("--budget", type=int, help="largest cardinality to search")


def handle(config: RunConfig) -> CommandOutcome:
    graph = deps.get_graph(config)
    solver = ExactSolver(limit=config.limit, workers=config.workers)
    result = solver.min_conversion(graph, config.rule, config.budget)

    if result.found:
        text = [
            f"rule: {config.rule}",
            f"size: {result.size}",
            f"witness: {' '.join(map(str, result.witness.ids()))}",
            f"explored: {result.explored}",
        ]
    else:
        text = [f"rule: {config.rule}", f"no conversion set within budget {result.budget}",
                f"explored: {result.explored}"]
    return CommandOutcome(result=result.model_dump(mode="json"), text=text)
