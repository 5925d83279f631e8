"""
Witness constructions giving upper bounds on minimum conversion sets of
Cartesian and tensor products from conversion sets of the factors.

Every construction simulates its witness on the product before returning; a
witness that fails to convert raises ``VerificationError``.
"""
import logging
from typing import Callable, List, Optional

from spreadlab.core.config import settings
from spreadlab.core.errors import PreconditionError, VerificationError
from spreadlab.models.graph import Graph
from spreadlab.models.results import BoundReport, Construction, FactorSide, ProductKind
from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services import conversion_engine as engine
from spreadlab.services.exact_solver import ExactSolver, shrink_to_minimal
from spreadlab.services.graph_builder import cartesian_product, induced_subgraph, tensor_product

logger = logging.getLogger(__name__)

WitnessProvider = Callable[[Graph, Rule], VertexSet]


def factor_witness(graph: Graph, rule: Rule) -> VertexSet:
    """Exact minimum witness within the solver limit, otherwise a greedy minimal one."""
    if graph.n <= settings.SOLVER_LIMIT:
        return ExactSolver().minimum_witness(graph, rule)
    logger.info(f"factor with {graph.n} vertices exceeds solver limit, using a minimal set")
    return shrink_to_minimal(graph, rule, graph.vertices)


def _require_converts(graph: Graph, rule: Rule, vertices: VertexSet, subject: str) -> None:
    if not engine.converts(graph, rule, vertices):
        raise PreconditionError(
            f"{subject} factor set {vertices.ids()} does not convert its factor under {rule}",
            "not_conversion_set", subject=subject,
        )


def _require_no_isolated(graph: Graph, subject: str) -> None:
    if graph.isolated:
        raise PreconditionError(
            f"{subject} factor has isolated vertices {graph.isolated.ids()}",
            "isolated_vertices", subject=subject,
        )


def _verify(product: Graph, rule: Rule, witness: VertexSet, construction: Construction) -> int:
    trace = engine.run(product, rule, witness)
    if not trace.converted:
        raise VerificationError(
            f"{construction.value} witness {witness.ids()} leaves "
            f"{product.n - len(trace.final)} vertices white",
        )
    return trace.steps


def left_slab(left: VertexSet, right_order: int) -> VertexSet:
    """All product vertices whose left coordinate lies in ``left``."""
    return VertexSet.of(g * right_order + h for g in left for h in range(right_order))


def right_slab(right: VertexSet, left_order: int, right_order: int) -> VertexSet:
    """All product vertices whose right coordinate lies in ``right``."""
    return VertexSet.of(g * right_order + h for g in range(left_order) for h in right)


def set_product(left: VertexSet, right: VertexSet, right_order: int) -> VertexSet:
    return VertexSet.of(g * right_order + h for g in left for h in right)


def product_layers(g: Graph, seed: VertexSet, rule: Rule, h: Graph,
                   side: FactorSide = FactorSide.LEFT) -> List[VertexSet]:
    """
    Partition of the product vertices by the time at which their ``side``
    coordinate is coloured in that factor's own process; vertices whose
    coordinate is never coloured form a trailing layer.
    """
    factor = g if side == FactorSide.LEFT else h
    times = engine.conversion_times(factor, rule, seed)
    layers = [
        left_slab(level, h.n) if side == FactorSide.LEFT else right_slab(level, g.n, h.n)
        for level in times.level_sets()
    ]
    never = times.never
    if never:
        layers.append(left_slab(never, h.n) if side == FactorSide.LEFT else right_slab(never, g.n, h.n))
    return layers


def cartesian_k_witness(g: Graph, s_g: VertexSet, h: Graph, s_h: VertexSet, k: int) -> BoundReport:
    rule = Rule.k_threshold(k)
    _require_converts(g, rule, s_g, "left")
    _require_converts(h, rule, s_h, "right")

    product = cartesian_product(g, h)
    witness = set_product(s_g, s_h, h.n)
    construction = Construction.CARTESIAN_K_PRODUCT
    steps = _verify(product, rule, witness, construction)
    logger.info(f"{construction.value}: bound {len(witness)} verified in {steps} steps")
    return BoundReport(
        construction=construction, product=ProductKind.CARTESIAN, rule=rule,
        bound=len(s_g) * len(s_h), witness=witness, verified=True, T=steps,
        order=product.n, right_order=h.n,
    )


def _slab_union(g: Graph, d_g: VertexSet, h: Graph, d_h: VertexSet) -> VertexSet:
    return left_slab(d_g, h.n) | right_slab(d_h, g.n, h.n)


def cartesian_dynamo_witness(g: Graph, d_g: VertexSet, h: Graph, d_h: VertexSet) -> BoundReport:
    rule = Rule.majority()
    _require_converts(g, rule, d_g, "left")
    _require_converts(h, rule, d_h, "right")

    product = cartesian_product(g, h)
    witness = _slab_union(g, d_g, h, d_h)
    bound = len(d_g) * h.n + len(d_h) * g.n - len(d_g) * len(d_h)
    construction = Construction.CARTESIAN_SLAB_UNION
    steps = _verify(product, rule, witness, construction)
    logger.info(f"{construction.value}: bound {bound} verified in {steps} steps")
    return BoundReport(
        construction=construction, product=ProductKind.CARTESIAN, rule=rule,
        bound=bound, witness=witness, verified=True, T=steps,
        order=product.n, right_order=h.n,
        layers=product_layers(g, d_g, rule, h),
    )


def cartesian_dynamo_witness_reduced(g: Graph, d_g: VertexSet, h: Graph, d_h: VertexSet) -> BoundReport:
    """Slab union minus D_G x D_H; needs isolated-free factors and minimal factor dynamos."""
    rule = Rule.majority()
    _require_no_isolated(g, "left")
    _require_no_isolated(h, "right")
    for graph, d, subject in ((g, d_g, "left"), (h, d_h, "right")):
        _require_converts(graph, rule, d, subject)
        if not engine.is_minimal(graph, rule, d):
            raise PreconditionError(
                f"{subject} factor dynamo {d.ids()} is not minimal", "not_minimal", subject=subject,
            )

    product = cartesian_product(g, h)
    witness = _slab_union(g, d_g, h, d_h) - set_product(d_g, d_h, h.n)
    bound = len(d_g) * h.n + len(d_h) * g.n - 2 * len(d_g) * len(d_h)
    construction = Construction.CARTESIAN_SLAB_UNION_REDUCED
    steps = _verify(product, rule, witness, construction)
    logger.info(f"{construction.value}: bound {bound} verified in {steps} steps")
    return BoundReport(
        construction=construction, product=ProductKind.CARTESIAN, rule=rule,
        bound=bound, witness=witness, verified=True, T=steps,
        order=product.n, right_order=h.n,
    )


def _tensor_side(g: Graph, s_g: VertexSet, h: Graph, s_h: VertexSet, rule: Rule,
                 construction: Construction) -> BoundReport:
    _require_no_isolated(g, "left")
    _require_no_isolated(h, "right")
    _require_converts(g, rule, s_g, "left")
    _require_converts(h, rule, s_h, "right")

    left_cost = len(s_g) * h.n
    right_cost = len(s_h) * g.n
    # ties go to the left factor
    if left_cost <= right_cost:
        side, bound = FactorSide.LEFT, left_cost
        witness = left_slab(s_g, h.n)
        layers = product_layers(g, s_g, rule, h, FactorSide.LEFT)
    else:
        side, bound = FactorSide.RIGHT, right_cost
        witness = right_slab(s_h, g.n, h.n)
        layers = product_layers(g, s_h, rule, h, FactorSide.RIGHT)

    product = tensor_product(g, h)
    steps = _verify(product, rule, witness, construction)
    logger.info(f"{construction.value}: {side.value} side, bound {bound} verified in {steps} steps")
    return BoundReport(
        construction=construction, product=ProductKind.TENSOR, rule=rule,
        bound=bound, witness=witness, verified=True, T=steps,
        order=product.n, right_order=h.n, side=side, layers=layers,
    )


def tensor_k_witness(g: Graph, s_g: VertexSet, h: Graph, s_h: VertexSet, k: int) -> BoundReport:
    return _tensor_side(g, s_g, h, s_h, Rule.k_threshold(k), Construction.TENSOR_K_SIDE)


def tensor_dynamo_witness(g: Graph, d_g: VertexSet, h: Graph, d_h: VertexSet) -> BoundReport:
    return _tensor_side(g, d_g, h, d_h, Rule.majority(), Construction.TENSOR_DYNAMO_SIDE)


def tensor_general(g: Graph, h: Graph, rule: Rule,
                   provider: Optional[WitnessProvider] = None) -> BoundReport:
    """
    Tensor bound for arbitrary factors: build the side construction on the
    isolated-free cores, then add every isolated vertex of the product.
    """
    provider = provider or factor_witness
    i_g, i_h = g.isolated, h.isolated
    if not i_g and not i_h:
        return tensor_general_core(g, h, rule, provider)

    core_g, map_g = induced_subgraph(g, g.vertices - i_g)
    core_h, map_h = induced_subgraph(h, h.vertices - i_h)

    witness = left_slab(i_g, h.n) | right_slab(i_h, g.n, h.n)
    isolated = len(i_g) * h.n + len(i_h) * g.n - len(i_g) * len(i_h)
    core_bound = 0
    side = None
    if core_g.n and core_h.n:
        inner = tensor_general_core(core_g, core_h, rule, provider)
        core_bound, side = inner.bound, inner.side
        witness = witness | VertexSet.of(
            map_g[gc] * h.n + map_h[hc]
            for gc, hc in (divmod(v, core_h.n) for v in inner.witness)
        )

    construction = Construction.TENSOR_WITH_ISOLATED
    product = tensor_product(g, h)
    steps = _verify(product, rule, witness, construction)
    logger.info(f"{construction.value}: core {core_bound} + isolated {isolated} verified")
    return BoundReport(
        construction=construction, product=ProductKind.TENSOR, rule=rule,
        bound=core_bound + isolated, witness=witness, verified=True, T=steps,
        order=product.n, right_order=h.n, side=side, isolated=isolated,
    )


def tensor_general_core(g: Graph, h: Graph, rule: Rule, provider: WitnessProvider) -> BoundReport:
    s_g, s_h = provider(g, rule), provider(h, rule)
    if rule.is_majority:
        return tensor_dynamo_witness(g, s_g, h, s_h)
    return tensor_k_witness(g, s_g, h, s_h, rule.k)
