from spreadlab.cli import deps
from spreadlab.cli.outcome import CommandOutcome
from spreadlab.models.run_config import RunConfig
from spreadlab.services.edge_list import format_edge_list


def add_parser(subparsers, parents) -> None:
    p = subparsers.add_parser("gen", parents=parents, help="write a graph in edge-list format")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", help="family spec, e.g. cycle:4 or multipartite:3,2,1")
    source.add_argument("--graph", dest="graph_file", help="edge-list file to normalise")


def handle(config: RunConfig) -> CommandOutcome:
    graph = deps.get_graph(config)
    text = format_edge_list(graph).rstrip("\n").split("\n")
    result = {"n": graph.n, "m": graph.edge_count, "edges": [list(e) for e in graph.edges]}
    return CommandOutcome(result=result, text=text)
