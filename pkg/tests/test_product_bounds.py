import pytest

from spreadlab.core.errors import PreconditionError
from spreadlab.models.results import Construction, FactorSide
from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services import conversion_engine as engine
from spreadlab.services.graph_builder import (
    cartesian_product, complete, cycle, empty, make_graph, path, product_pairs, tensor_product,
)
from spreadlab.services.product_bounds import (
    cartesian_dynamo_witness, cartesian_dynamo_witness_reduced, cartesian_k_witness, factor_witness,
    left_slab, product_layers, right_slab, set_product, tensor_dynamo_witness, tensor_general, tensor_k_witness,
)


def ids(*items):
    return VertexSet.of(items)


def test_slabs_and_set_product():
    # G has 3 vertices, H has 2
    assert left_slab(ids(1), 2).ids() == [2, 3]
    assert right_slab(ids(0), 3, 2).ids() == [0, 2, 4]
    assert set_product(ids(0, 2), ids(1), 2).ids() == [1, 5]


def test_cartesian_k_p3_p3():
    report = cartesian_k_witness(path(3), ids(0, 2), path(3), ids(0, 2), 2)
    assert report.construction == Construction.CARTESIAN_K_PRODUCT
    assert report.bound == 4
    assert report.verified
    assert product_pairs(report.witness, 3) == [(0, 0), (0, 2), (2, 0), (2, 2)]


def test_cartesian_k1_k2_k2():
    report = cartesian_k_witness(complete(2), ids(0), complete(2), ids(0), 1)
    assert report.bound == 1
    assert report.witness.ids() == [0]


def test_cartesian_k_names_failing_factor(p3):
    with pytest.raises(PreconditionError) as exc:
        cartesian_k_witness(p3, ids(0, 2), p3, ids(0), 2)
    assert exc.value.subject == "right"
    assert exc.value.code == "not_conversion_set"


def test_slab_union_k2_k2(k2):
    report = cartesian_dynamo_witness(k2, ids(0), k2, ids(0))
    assert report.bound == 3
    assert len(report.witness) == 3
    assert engine.converts(cartesian_product(k2, k2), Rule.majority(), report.witness)


def test_slab_union_c4_c4(c4):
    report = cartesian_dynamo_witness(c4, ids(0), c4, ids(0))
    assert report.bound == 1 * 4 + 1 * 4 - 1 == 7
    assert report.order == 16
    assert report.verified


def test_slab_union_full_factor_sets(c4, k2):
    report = cartesian_dynamo_witness(c4, c4.vertices, k2, k2.vertices)
    assert report.witness == VertexSet.full(8)
    assert report.T == 0


def test_slab_union_layers_partition_product(c4):
    report = cartesian_dynamo_witness(c4, ids(0), c4, ids(0))
    assert [len(layer) for layer in report.layers] == [4, 8, 4]
    union = VertexSet()
    for layer in report.layers:
        assert not (union & layer)
        union = union | layer
    assert union == VertexSet.full(16)


def test_reduced_k2_k2(k2):
    report = cartesian_dynamo_witness_reduced(k2, ids(0), k2, ids(0))
    assert report.bound == 2
    assert product_pairs(report.witness, 2) == [(0, 1), (1, 0)]
    assert report.verified


def test_reduced_c4_k2(c4, k2):
    report = cartesian_dynamo_witness_reduced(c4, ids(0), k2, ids(0))
    assert report.bound == 1 * 2 + 1 * 4 - 2 == 4
    assert report.order == 8


def test_reduced_rejects_isolated_vertices(k2_plus_isolated, k2):
    with pytest.raises(PreconditionError) as exc:
        cartesian_dynamo_witness_reduced(k2_plus_isolated, ids(0, 2), k2, ids(0))
    assert exc.value.code == "isolated_vertices"
    assert exc.value.subject == "left"


def test_reduced_rejects_non_minimal_dynamo(c4, k2):
    with pytest.raises(PreconditionError) as exc:
        cartesian_dynamo_witness_reduced(c4, ids(0, 1), k2, ids(0))
    assert exc.value.code == "not_minimal"


def test_tensor_k_p3_k2(p3, k2):
    report = tensor_k_witness(p3, ids(0, 2), k2, ids(0, 1), 2)
    assert report.bound == min(2 * 2, 2 * 3) == 4
    assert report.side == FactorSide.LEFT
    assert report.witness == left_slab(ids(0, 2), 2)


def test_tensor_k_c4_c4_tie_goes_left(c4):
    report = tensor_k_witness(c4, ids(0, 2), c4, ids(1, 3), 2)
    assert report.bound == 8
    assert report.side == FactorSide.LEFT
    assert report.witness == left_slab(ids(0, 2), 4)


def test_tensor_k_picks_cheaper_right_side(c4, p3):
    report = tensor_k_witness(p3, ids(0, 2), c4, ids(0, 2), 2)
    # 2 * 4 on the left against 2 * 3 on the right
    assert report.side == FactorSide.RIGHT
    assert report.bound == 6
    assert report.witness == right_slab(ids(0, 2), 3, 4)


def test_tensor_dynamo_p3_k2(p3, k2):
    report = tensor_dynamo_witness(p3, ids(1), k2, ids(0))
    assert report.bound == 2
    assert report.side == FactorSide.LEFT
    assert product_pairs(report.witness, 2) == [(1, 0), (1, 1)]


def test_tensor_dynamo_k2_k2(k2):
    report = tensor_dynamo_witness(k2, ids(0), k2, ids(1))
    assert report.bound == 2
    assert report.side == FactorSide.LEFT
    assert engine.converts(tensor_product(k2, k2), Rule.majority(), report.witness)


def test_tensor_rejects_isolated_factor(k2_plus_isolated, k2):
    with pytest.raises(PreconditionError) as exc:
        tensor_dynamo_witness(k2, ids(0), k2_plus_isolated, ids(0, 2))
    assert exc.value.subject == "right"


def test_tensor_general_with_isolated_vertex(k2_plus_isolated, k2, majority):
    report = tensor_general(k2_plus_isolated, k2, majority)
    assert report.construction == Construction.TENSOR_WITH_ISOLATED
    assert report.isolated == 1 * 2 + 0 * 3 - 0 == 2
    assert report.bound == 4
    assert len(report.witness) == 4
    assert tensor_product(k2_plus_isolated, k2).isolated <= report.witness


def test_tensor_general_without_isolated_matches_core(p3, k2, majority):
    report = tensor_general(p3, k2, majority)
    core = tensor_dynamo_witness(p3, factor_witness(p3, majority), k2, factor_witness(k2, majority))
    assert report == core


def test_tensor_general_edgeless(majority):
    report = tensor_general(empty(2), empty(3), majority)
    assert report.bound == 6
    assert report.witness == VertexSet.full(6)


def test_tensor_general_uses_provider(k2_plus_isolated, k2):
    calls = []

    def provider(graph, rule):
        calls.append(graph.n)
        return graph.vertices

    report = tensor_general(k2_plus_isolated, k2, Rule.k_threshold(1), provider)
    assert calls == [2, 2]
    assert report.bound == 2 + 4


def test_product_layers_follow_factor_times(c4, k2, majority):
    layers = product_layers(c4, ids(0), majority, k2)
    assert layers == [left_slab(ids(0), 2), left_slab(ids(1, 3), 2), left_slab(ids(2), 2)]
    right = product_layers(c4, ids(0), majority, k2, FactorSide.RIGHT)
    assert right == [right_slab(ids(0), 4, 2), right_slab(ids(1), 4, 2)]


def test_product_layers_trailing_never_layer(p3):
    layers = product_layers(p3, ids(0), Rule.k_threshold(2), complete(2))
    assert layers == [left_slab(ids(0), 2), left_slab(ids(1, 2), 2)]


def test_factor_witness_falls_back_to_minimal_set(small_solver_limit, majority):
    g = cycle(small_solver_limit + 2)
    witness = factor_witness(g, majority)
    assert engine.is_minimal(g, majority, witness)


def test_factor_witness_is_exact_within_limit(majority):
    assert factor_witness(make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), majority).ids() == [0]
