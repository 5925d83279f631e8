from hypothesis import given, settings, strategies as st

from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services import conversion_engine as engine
from spreadlab.services.exact_solver import min_conversion
from spreadlab.services.graph_builder import cartesian_product, make_graph, tensor_product

rules = st.one_of(st.just(Rule.majority()), st.integers(1, 3).map(Rule.k_threshold))


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return make_graph(n, edges)


@st.composite
def graph_and_subsets(draw):
    g = draw(graphs())
    ids = st.lists(st.integers(0, max(g.n - 1, 0)), max_size=g.n) if g.n else st.just([])
    return g, VertexSet.of(draw(ids)), VertexSet.of(draw(ids))


@given(graph_and_subsets(), rules)
def test_black_set_grows_monotonically(data, rule):
    g, seed, extra = data
    bigger = seed | extra
    assert seed <= engine.step(g, rule, seed)
    assert engine.step(g, rule, seed) <= engine.step(g, rule, bigger)
    assert engine.run(g, rule, seed).final <= engine.run(g, rule, bigger).final


@given(graph_and_subsets(), rules)
def test_supersets_of_conversion_sets_convert(data, rule):
    g, seed, extra = data
    trace = engine.run(g, rule, seed)
    if trace.converted:
        bigger = engine.run(g, rule, seed | extra)
        assert bigger.converted
        assert bigger.steps <= trace.steps


@given(graph_and_subsets(), rules)
def test_steps_bounded_by_order(data, rule):
    g, seed, _ = data
    trace = engine.run(g, rule, seed)
    assert trace.steps <= g.n
    assert all(trace.waves)


@given(graphs(max_n=4), graphs(max_n=4))
def test_product_degree_identities(g, h):
    cart, tens = cartesian_product(g, h), tensor_product(g, h)
    for u in range(g.n):
        for v in range(h.n):
            vid = u * h.n + v
            assert cart.degree(vid) == g.degree(u) + h.degree(v)
            assert tens.degree(vid) == g.degree(u) * h.degree(v)
    assert cart.edge_count == g.edge_count * h.n + h.edge_count * g.n
    assert tens.edge_count == 2 * g.edge_count * h.edge_count


@given(graphs(max_n=4), graphs(max_n=4))
def test_products_commute_up_to_relabelling(g, h):
    for product in (cartesian_product, tensor_product):
        gh, hg = product(g, h), product(h, g)
        assert gh.n == hg.n
        assert gh.edge_count == hg.edge_count
        assert sorted(gh.degrees) == sorted(hg.degrees)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), rules, st.randoms(use_true_random=False))
def test_minimum_invariant_under_relabelling(g, rule, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    relabelled = make_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert min_conversion(g, rule).size == min_conversion(relabelled, rule).size


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), rules)
def test_minimum_witness_converts_and_is_minimal(g, rule):
    result = min_conversion(g, rule)
    assert result.found
    assert result.forced <= result.witness
    assert engine.converts(g, rule, result.witness)
    assert engine.is_minimal(g, rule, result.witness)
