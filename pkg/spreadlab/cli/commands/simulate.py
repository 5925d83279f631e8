from spreadlab.cli import deps
from spreadlab.cli.outcome import CommandOutcome
from spreadlab.models.run_config import RunConfig
from spreadlab.services import conversion_engine as engine


def add_parser(subparsers, parents) -> None:
    p = subparsers.add_parser("simulate", parents=parents, help="run a conversion process from a seed set")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--family")
    source.add_argument("--graph", dest="graph_file")
    p.add_argument("--rule", required=True, help="majority, k:K or K")
    p.add_argument("--seed", required=True, help="seed ids, e.g. 0,2-4")
    p.add_argument("--times", action="store_true", help="also report per-vertex conversion times")


def handle(config: RunConfig) -> CommandOutcome:
    graph = deps.get_graph(config)
    seed = deps.check_ids(graph, config.seed, "--seed")
    trace = engine.run(graph, config.rule, seed)
    result = trace.model_dump(mode="json")

    text = [
        f"rule: {config.rule}",
        f"seed: {' '.join(map(str, seed.ids()))}",
    ]
    text += [f"step {t}: {' '.join(map(str, w.ids()))}" for t, w in enumerate(trace.waves, start=1)]
    text += [f"converted: {str(trace.converted).lower()}", f"steps: {trace.steps}"]

    if config.times:
        times = engine.conversion_times(graph, config.rule, seed).times
        result["times"] = times
        text.append("times: " + " ".join("-" if t is None else str(t) for t in times))
    return CommandOutcome(result=result, text=text)
