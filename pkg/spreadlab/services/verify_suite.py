"""
Verification sweep: cross-checks closed forms, product constructions and
engine/solver invariants against the exact solver and the simulator.

Cases are built deterministically up front, executed concurrently in worker
threads, and reported sorted by case key, so the report does not depend on
scheduling or worker count.
"""
import asyncio
import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, List, Optional, Tuple

from spreadlab.core.config import settings
from spreadlab.core.errors import SpreadLabError
from spreadlab.models.graph import Graph, MultipartiteSpec
from spreadlab.models.results import CheckResult, SuiteReport
from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services import closed_forms, conversion_engine as engine, product_bounds
from spreadlab.services.exact_solver import ExactSolver, forced_vertices, shrink_to_minimal, threshold_lower_bound
from spreadlab.services.graph_builder import (
    cartesian_product, complete, complete_multipartite, empty, gnp, make_graph, parse_family, random_tree,
    tensor_product,
)
from spreadlab.services.structure import check_double_cover

logger = logging.getLogger(__name__)


class Scope(str, Enum):
    MULTIPARTITE = "multipartite"
    CARTESIAN = "cartesian"
    TENSOR = "tensor"
    LEMMAS = "lemmas"
    ENGINE = "engine"
    SPOT = "spot"
    ALL = "all"


PRODUCT_CATALOG = [
    "path:2", "path:3", "path:4", "path:5",
    "cycle:3", "cycle:4", "cycle:5", "cycle:6",
    "complete:3", "complete:4", "multipartite:2,2", "star:4",
]

DOUBLE_COVER_FAMILY = [
    "path:2", "path:3", "path:4", "path:5", "path:6",
    "cycle:4", "cycle:6", "star:3", "star:4", "star:5",
]

SPOT_VALUES = [
    ("cycle:4", Rule.majority(), 1),
    ("path:4", Rule.k_threshold(2), 3),
    ("complete:5", Rule.majority(), 2),
    ("multipartite:3,2,1", Rule.k_threshold(4), 4),
    ("multipartite:3,2,1", Rule.majority(), 2),
]

K_VALUES = (1, 2, 3)


@dataclass(frozen=True)
class SuiteParams:
    max_n: int = 8
    max_product: int = 36
    solver_cap: int = 20
    trials: int = 200
    rng_seed: int = 1


@dataclass(frozen=True)
class Case:
    key: str
    name: str
    check: Callable[[], Optional[str]]


class CheckFailed(Exception):
    pass


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Integer partitions of n as non-increasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


class VerifySuite:
    def __init__(self, params: SuiteParams):
        self.params = params
        self.solver = ExactSolver(workers=1)

    def exact(self, graph: Graph, rule: Rule) -> int:
        return self.solver.min_conversion(graph, rule).size

    # multipartite -----------------------------------------------------

    def multipartite_cases(self) -> List[Case]:
        cases = []
        for n in range(2, self.params.max_n + 1):
            for parts in partitions(n):
                if len(parts) < 2:
                    continue
                spec = MultipartiteSpec(parts=parts)
                label = ",".join(map(str, parts))
                for k in range(1, n + 3):
                    cases.append(Case(
                        f"multipartite/n={n:02d}/{label}/k={k:02d}", "multipartite.min_k",
                        lambda spec=spec, k=k: self._check_multipartite_k(spec, k),
                    ))
                cases.append(Case(
                    f"multipartite/n={n:02d}/{label}/majority", "multipartite.dynamo",
                    lambda spec=spec: self._check_multipartite_dynamo(spec),
                ))
                cases.append(Case(
                    f"multipartite/n={n:02d}/{label}/monotone", "multipartite.monotone_in_k",
                    lambda spec=spec: self._check_monotone(spec),
                ))
        return cases

    def _check_multipartite_k(self, spec: MultipartiteSpec, k: int) -> str:
        graph = complete_multipartite(spec)
        rule = Rule.k_threshold(k)
        value = closed_forms.multipartite_min_k(spec, k)
        exact = self.exact(graph, rule)
        expect(value == exact, f"closed form {value} != exact {exact}")
        bound = threshold_lower_bound(graph, rule)
        expect(bound <= value, f"degree lower bound {bound} above closed form {value}")
        answer = closed_forms.multipartite_min_k_witness(spec, k)
        expect(len(answer.witness) == answer.value == value, f"witness size {len(answer.witness)} != {value}")
        ok, steps = engine.is_conversion_set(graph, rule, answer.witness)
        expect(ok, f"witness {answer.witness.ids()} does not convert")
        expect(steps <= answer.predicted_T, f"witness took {steps} > {answer.predicted_T} steps")
        return f"value={value} T={steps}"

    def _check_multipartite_dynamo(self, spec: MultipartiteSpec) -> str:
        graph = complete_multipartite(spec)
        rule = Rule.majority()
        answer = closed_forms.multipartite_dynamo(spec)
        exact = self.exact(graph, rule)
        expect(answer.value == exact, f"closed form {answer.value} != exact {exact}")
        bound = threshold_lower_bound(graph, rule)
        expect(bound <= answer.value, f"degree lower bound {bound} above closed form {answer.value}")
        expect(len(answer.witness) == answer.value, "witness size mismatch")
        ok, steps = engine.is_conversion_set(graph, rule, answer.witness)
        expect(ok, f"witness {answer.witness.ids()} does not convert")
        expect(steps <= answer.predicted_T, f"witness took {steps} > {answer.predicted_T} steps")
        return f"value={answer.value} T={steps}"

    def _check_monotone(self, spec: MultipartiteSpec) -> str:
        values = [closed_forms.multipartite_min_k(spec, k) for k in range(1, spec.n + 3)]
        expect(values == sorted(values), f"min_k not monotone in k: {values}")
        return f"values={values}"

    # products ---------------------------------------------------------

    def _catalog_pairs(self) -> Iterator[Tuple[str, str, Graph, Graph]]:
        for left, right in itertools.combinations_with_replacement(PRODUCT_CATALOG, 2):
            g, h = parse_family(left), parse_family(right)
            if g.n * h.n <= self.params.max_product:
                yield left, right, g, h

    def _within_oracle(self, order: int) -> bool:
        return order <= min(self.params.solver_cap, self.solver.limit)

    def _oracle_le(self, product: Graph, rule: Rule, bound: int) -> str:
        if not self._within_oracle(product.n):
            return ""
        exact = self.exact(product, rule)
        expect(exact <= bound, f"exact {exact} exceeds bound {bound}")
        return f" exact={exact}"

    def cartesian_cases(self) -> List[Case]:
        cases = []
        for left, right, g, h in self._catalog_pairs():
            prefix = f"cartesian/{left}x{right}"
            for k in K_VALUES:
                cases.append(Case(f"{prefix}/k={k}", "cartesian.k_product",
                                  lambda g=g, h=h, k=k: self._check_cartesian_k(g, h, k)))
            cases.append(Case(f"{prefix}/slab_union", "cartesian.slab_union",
                              lambda g=g, h=h: self._check_slab_union(g, h)))
            cases.append(Case(f"{prefix}/slab_union_reduced", "cartesian.slab_union_reduced",
                              lambda g=g, h=h: self._check_slab_union_reduced(g, h)))
        for a, b in itertools.combinations_with_replacement(range(1, 4), 2):
            cases.append(Case(f"cartesian/empty:{a}xempty:{b}/tight", "cartesian.edgeless_tight",
                              lambda a=a, b=b: self._check_edgeless_tight(a, b)))
        return cases

    def _check_cartesian_k(self, g: Graph, h: Graph, k: int) -> str:
        rule = Rule.k_threshold(k)
        s_g, s_h = product_bounds.factor_witness(g, rule), product_bounds.factor_witness(h, rule)
        report = product_bounds.cartesian_k_witness(g, s_g, h, s_h, k)
        expect(report.bound == len(s_g) * len(s_h) == len(report.witness), "size formula mismatch")
        extra = self._oracle_le(cartesian_product(g, h), rule, report.bound)
        return f"bound={report.bound} T={report.T}{extra}"

    def _check_slab_union(self, g: Graph, h: Graph) -> str:
        rule = Rule.majority()
        d_g, d_h = product_bounds.factor_witness(g, rule), product_bounds.factor_witness(h, rule)
        report = product_bounds.cartesian_dynamo_witness(g, d_g, h, d_h)
        formula = len(d_g) * h.n + len(d_h) * g.n - len(d_g) * len(d_h)
        expect(report.bound == formula == len(report.witness), "size formula mismatch")
        extra = self._oracle_le(cartesian_product(g, h), rule, report.bound)
        return f"bound={report.bound} T={report.T}{extra}"

    def _check_slab_union_reduced(self, g: Graph, h: Graph) -> str:
        rule = Rule.majority()
        d_g, d_h = product_bounds.factor_witness(g, rule), product_bounds.factor_witness(h, rule)
        full = product_bounds.cartesian_dynamo_witness(g, d_g, h, d_h)
        report = product_bounds.cartesian_dynamo_witness_reduced(g, d_g, h, d_h)
        expect(report.bound == full.bound - len(d_g) * len(d_h), "reduced bound relation broken")
        expect(report.bound == len(report.witness) > 0, "reduced witness empty or wrong size")
        extra = self._oracle_le(cartesian_product(g, h), rule, report.bound)
        return f"bound={report.bound} T={report.T}{extra}"

    def _check_edgeless_tight(self, a: int, b: int) -> str:
        g, h = empty(a), empty(b)
        rule = Rule.majority()
        report = product_bounds.cartesian_dynamo_witness(g, g.vertices, h, h.vertices)
        exact = self.exact(cartesian_product(g, h), rule)
        expect(report.bound == exact == a * b, f"bound {report.bound} exact {exact}")
        return f"bound={report.bound}"

    def tensor_cases(self) -> List[Case]:
        cases = []
        for left, right, g, h in self._catalog_pairs():
            prefix = f"tensor/{left}x{right}"
            for k in K_VALUES:
                cases.append(Case(f"{prefix}/k={k}", "tensor.k_side",
                                  lambda g=g, h=h, k=k: self._check_tensor(g, h, Rule.k_threshold(k))))
            cases.append(Case(f"{prefix}/majority", "tensor.dynamo_side",
                              lambda g=g, h=h: self._check_tensor(g, h, Rule.majority())))

        rng = random.Random(self.params.rng_seed)
        family = [(name, parse_family(name)) for name in DOUBLE_COVER_FAMILY]
        for i in range(20):
            n, seed = rng.randint(2, 8), rng.randrange(2 ** 31)
            family.append((f"tree:{n},{seed}", random_tree(n, seed)))
        for index, (name, g) in enumerate(family):
            prefix = f"tensor/double_cover/{index:02d}/{name}"
            cases.append(Case(f"{prefix}/structure", "tensor.double_cover_structure",
                              lambda g=g: self._check_double_cover_structure(g)))
            for rule in [Rule.k_threshold(k) for k in K_VALUES] + [Rule.majority()]:
                cases.append(Case(f"{prefix}/{rule.label()}", "tensor.double_cover_tight",
                                  lambda g=g, rule=rule: self._check_double_cover_tight(g, rule)))

        isolated_pairs = [
            ("k2+iso", make_graph(3, [(0, 1)]), "path:2", parse_family("path:2")),
            ("p3+iso", make_graph(4, [(0, 1), (1, 2)]), "cycle:4", parse_family("cycle:4")),
            ("empty:2", parse_family("empty:2"), "empty:3", parse_family("empty:3")),
            ("path:3", parse_family("path:3"), "k2+iso", make_graph(3, [(0, 1)])),
        ]
        for left, g, right, h in isolated_pairs:
            for rule in (Rule.majority(), Rule.k_threshold(1), Rule.k_threshold(2)):
                cases.append(Case(f"tensor/isolated/{left}x{right}/{rule.label()}", "tensor.with_isolated",
                                  lambda g=g, h=h, rule=rule: self._check_tensor_general(g, h, rule)))
        return cases

    def _check_tensor(self, g: Graph, h: Graph, rule: Rule) -> str:
        s_g, s_h = product_bounds.factor_witness(g, rule), product_bounds.factor_witness(h, rule)
        if rule.is_majority:
            report = product_bounds.tensor_dynamo_witness(g, s_g, h, s_h)
        else:
            report = product_bounds.tensor_k_witness(g, s_g, h, s_h, rule.k)
        expected = min(len(s_g) * h.n, len(s_h) * g.n)
        expect(report.bound == expected == len(report.witness), "size formula mismatch")
        extra = self._oracle_le(tensor_product(g, h), rule, report.bound)
        return f"bound={report.bound} side={report.side.value} T={report.T}{extra}"

    def _check_double_cover_structure(self, g: Graph) -> str:
        report = check_double_cover(g)
        expect(report.applicable, "family member is not connected bipartite")
        expect(report.holds, f"double cover components {report.component_sizes}")
        return f"components={report.components}"

    def _check_double_cover_tight(self, g: Graph, rule: Rule) -> str:
        k2 = complete(2)
        cover = tensor_product(g, k2)
        base = self.exact(g, rule)
        doubled = self.exact(cover, rule)
        expect(doubled == 2 * base, f"min(GxK2)={doubled} != 2*{base}")
        s_g = self.solver.minimum_witness(g, rule)
        s_h = self.solver.minimum_witness(k2, rule)
        if rule.is_majority:
            report = product_bounds.tensor_dynamo_witness(g, s_g, k2, s_h)
        else:
            report = product_bounds.tensor_k_witness(g, s_g, k2, s_h, rule.k)
        expect(report.bound == doubled, f"side bound {report.bound} != exact {doubled}")
        return f"min={base} doubled={doubled}"

    def _check_tensor_general(self, g: Graph, h: Graph, rule: Rule) -> str:
        report = product_bounds.tensor_general(g, h, rule, self.solver.minimum_witness)
        product = tensor_product(g, h)
        expect(len(report.witness) == report.bound, "witness size mismatch")
        expect(product.isolated <= report.witness, "isolated product vertices missing from witness")
        expect(len(product.isolated) == report.isolated, "isolated count formula mismatch")
        extra = self._oracle_le(product, rule, report.bound)
        return f"bound={report.bound} isolated={report.isolated}{extra}"

    # lemmas -----------------------------------------------------------

    def _random_isolated_free(self, rng: random.Random) -> Tuple[int, int, Graph]:
        n = rng.randint(2, max(2, self.params.max_n))
        while True:
            seed = rng.randrange(2 ** 31)
            g = gnp(n, 1, 2, seed)
            if not g.isolated:
                return n, seed, g

    def lemma_cases(self) -> List[Case]:
        rng = random.Random(self.params.rng_seed)
        cases = []
        for trial in range(self.params.trials):
            n, seed, g = self._random_isolated_free(rng)
            perm = list(range(n))
            rng.shuffle(perm)
            cases.append(Case(f"lemmas/trial={trial:04d}/gnp:{n},1/2,{seed}", "lemmas.minimal_complement",
                              lambda g=g, perm=tuple(perm): self._check_lemmas(g, perm)))
        return cases

    def _check_lemmas(self, g: Graph, perm: Tuple[int, ...]) -> str:
        rule = Rule.majority()
        minimal = shrink_to_minimal(g, rule, g.vertices)
        expect(engine.is_minimal(g, rule, minimal), f"greedy result {minimal.ids()} not minimal")
        for d in (minimal, self.solver.minimum_witness(g, rule)):
            ok, steps = engine.is_conversion_set(g, rule, d.complement(g.n))
            expect(ok and steps <= 1, f"complement of minimal dynamo {d.ids()} fails (T={steps})")
        exact = self.exact(g, rule)
        expect(2 * exact <= g.n, f"min dynamo {exact} exceeds half of {g.n}")
        expect(exact >= threshold_lower_bound(g, rule), "solver below threshold lower bound")
        relabelled = make_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        expect(self.exact(relabelled, rule) == exact, "minimum changes under relabelling")
        return f"n={g.n} min={exact} greedy={len(minimal)}"

    # engine -----------------------------------------------------------

    def engine_cases(self) -> List[Case]:
        rng = random.Random(self.params.rng_seed)
        cases = []
        for trial in range(self.params.trials * 5):
            n = rng.randint(1, max(1, self.params.max_n))
            num, seed = rng.randint(1, 3), rng.randrange(2 ** 31)
            g = gnp(n, num, 4, seed)
            rule = Rule.majority() if rng.random() < 0.5 else Rule.k_threshold(rng.randint(1, 3))
            start = VertexSet.of(v for v in range(n) if rng.random() < 0.3)
            extra = VertexSet.of(v for v in range(n) if rng.random() < 0.3)
            cases.append(Case(f"engine/trial={trial:04d}/gnp:{n},{num}/4,{seed}/{rule.label()}",
                              "engine.invariants",
                              lambda g=g, rule=rule, s=start, e=extra: self._check_engine(g, rule, s, e)))
        for d_graph in ("cycle:5", "cycle:6", "complete:4", "complete:5", "multipartite:3,3"):
            g = parse_family(d_graph)
            for trial in range(10):
                start = VertexSet.of(v for v in range(g.n) if rng.random() < 0.3)
                cases.append(Case(f"engine/regular/{d_graph}/{trial:02d}", "engine.rule_equivalence",
                                  lambda g=g, s=start: self._check_rule_equivalence(g, s)))
        return cases

    def _check_engine(self, g: Graph, rule: Rule, start: VertexSet, extra: VertexSet) -> str:
        trace = engine.run(g, rule, start)
        seen = start
        for wave in trace.waves:
            expect(bool(wave) and not (wave & seen), "waves overlap or are empty")
            seen = seen | wave
        expect(trace.steps <= g.n, f"{trace.steps} steps on {g.n} vertices")
        expect(trace.converted == (seen == g.vertices), "converted flag disagrees with waves")
        expect(engine.step(g, rule, seen) == seen, "fixpoint is not stable")
        times = engine.conversion_times(g, rule, start)
        expected_levels = [start] + trace.waves if start else []
        expect(times.level_sets() == expected_levels, "times disagree with waves")
        expect(forced_vertices(g, rule) <= start or not trace.converted, "forced vertex not seeded")
        if trace.converted:
            bigger = engine.run(g, rule, start | extra)
            expect(bigger.converted and bigger.steps <= trace.steps, "superset closure broken")
        return f"T={trace.steps} converted={trace.converted}"

    def _check_rule_equivalence(self, g: Graph, start: VertexSet) -> str:
        d = g.degrees[0]
        a = engine.run(g, Rule.majority(), start)
        b = engine.run(g, Rule.k_threshold((d + 1) // 2), start)
        expect(a.waves == b.waves and a.converted == b.converted, "majority and k traces differ")
        return f"T={a.steps}"

    # spot values ------------------------------------------------------

    def spot_cases(self) -> List[Case]:
        cases = []
        for family, rule, expected in SPOT_VALUES:
            cases.append(Case(f"spot/{family}/{rule.label()}", "spot.value",
                              lambda family=family, rule=rule, expected=expected:
                              self._check_spot(family, rule, expected)))
        return cases

    def _check_spot(self, family: str, rule: Rule, expected: int) -> str:
        value = self.exact(parse_family(family), rule)
        expect(value == expected, f"got {value}, expected {expected}")
        return f"value={value}"

    def cases(self, scope: Scope) -> List[Case]:
        builders = {
            Scope.MULTIPARTITE: self.multipartite_cases,
            Scope.CARTESIAN: self.cartesian_cases,
            Scope.TENSOR: self.tensor_cases,
            Scope.LEMMAS: self.lemma_cases,
            Scope.ENGINE: self.engine_cases,
            Scope.SPOT: self.spot_cases,
        }
        if scope == Scope.ALL:
            return [case for build in builders.values() for case in build()]
        return builders[scope]()


def _execute(case: Case) -> CheckResult:
    try:
        detail = case.check() or ""
        return CheckResult(key=case.key, name=case.name, passed=True, detail=detail)
    except (CheckFailed, SpreadLabError) as e:
        logger.warning(f"{case.key}: {e}")
        return CheckResult(key=case.key, name=case.name, passed=False, detail=str(e))


async def run_suite(scope: Scope | str, params: Optional[SuiteParams] = None,
                    workers: Optional[int] = None) -> SuiteReport:
    scope = Scope(scope)
    params = params or SuiteParams()
    workers = workers or settings.WORKERS
    suite = VerifySuite(params)
    cases = suite.cases(scope)
    logger.info(f"verify {scope.value}: {len(cases)} cases on {workers} worker(s)")

    limiter = asyncio.Semaphore(workers)

    async def run_case(case: Case) -> CheckResult:
        async with limiter:
            return await asyncio.to_thread(_execute, case)

    results = await asyncio.gather(*(run_case(c) for c in cases))
    results = sorted(results, key=lambda r: r.key)
    failed = [r for r in results if not r.passed]
    return SuiteReport(
        scope=scope.value,
        parameters={
            "max_n": params.max_n,
            "max_product": params.max_product,
            "solver_cap": params.solver_cap,
            "trials": params.trials,
            "rng_seed": params.rng_seed,
        },
        checks=results,
        passed=len(results) - len(failed),
        failed=len(failed),
        first_counterexample=failed[0] if failed else None,
    )
