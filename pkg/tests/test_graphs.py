"""Graph construction, traversal, and serialization."""

import pytest

from leavitt_lab.graphs import (
    DanglingEdgeError,
    DuplicateVertexError,
    Graph,
    GraphTooLargeError,
    InvalidParameterError,
    SUBSET_ENUMERATION_CAP,
    UnknownVertexError,
    VertexNotOnCycleError,
    build_graph,
    cuntz_splice,
    cycle_has_exit,
    cycle_vertices,
    every_vertex_connects_to_cycle,
    graph_from_json,
    graph_to_json,
    hereditary_saturated_subsets,
    is_hereditary,
    is_saturated,
    matrix_graph,
    nontrivial_hereditary_saturated,
    rose_graph,
    same_labeled_graph,
    simple_cycles,
    vertices_on_cycles,
)


def test_basic_accessors():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("a", "b"), ("b", "c")])
    assert g.n_vertices == 3
    assert g.vertices == ("a", "b", "c")
    assert g.out_degree("a") == 2
    assert g.out_degree("c") == 0
    assert g.is_sink("c") and not g.is_sink("a")
    assert g.sinks() == ("c",)
    assert g.regular_vertices() == ("a", "b")
    assert g.edge_source(0) == "a" and g.edge_range(2) == "c"


def test_duplicate_vertex_rejected():
    with pytest.raises(DuplicateVertexError):
        build_graph(["a", "a"], [])


def test_dangling_edge_rejected():
    with pytest.raises(DanglingEdgeError):
        build_graph(["a"], [("a", "b")])


def test_unknown_vertex_lookup():
    g = rose_graph(2)
    with pytest.raises(UnknownVertexError):
        g.index("nope")


def test_rose_graph():
    g = rose_graph(3)
    assert g.vertices == ("u",)
    assert g.edges == (("u", "u"),) * 3
    assert rose_graph(0).sinks() == ("u",)
    with pytest.raises(InvalidParameterError):
        rose_graph(-1)


def test_matrix_graph():
    g = matrix_graph(3, 4)
    assert g.vertices == ("u", "v")
    assert g.edges.count(("u", "v")) == 2
    assert g.edges.count(("v", "v")) == 4
    for bad in [(1, 4), (3, 1)]:
        with pytest.raises(InvalidParameterError):
            matrix_graph(*bad)


def test_cuntz_splice_shape():
    g = cuntz_splice(rose_graph(2), "u")
    assert g.vertices == ("u", "v", "w")
    added = [("u", "v"), ("v", "u"), ("v", "w"), ("w", "v"), ("v", "v"), ("w", "w")]
    for e in added:
        assert e in g.edges
    assert len(g.edges) == 2 + 6


def test_cuntz_splice_fresh_names_avoid_collisions():
    base = build_graph(["v", "w"], [("v", "w"), ("w", "v")])
    g = cuntz_splice(base, "v")
    assert g.n_vertices == 4
    assert len(set(g.vertices)) == 4


def test_cuntz_splice_requires_cycle():
    g = build_graph(["a", "b"], [("a", "b")])
    with pytest.raises(VertexNotOnCycleError):
        cuntz_splice(g, "a")


def test_simple_cycles_and_exits():
    g = build_graph(["a", "b"], [("a", "b"), ("b", "a"), ("a", "a")])
    cycles = simple_cycles(g)
    vertex_sets = {frozenset(cycle_vertices(g, c)) for c in cycles}
    assert vertex_sets == {frozenset({"a"}), frozenset({"a", "b"})}
    for c in cycles:
        assert cycle_has_exit(g, c)


def test_parallel_loop_counts_as_exit():
    assert all(cycle_has_exit(rose_graph(2), c) for c in simple_cycles(rose_graph(2)))
    assert not any(cycle_has_exit(rose_graph(1), c) for c in simple_cycles(rose_graph(1)))


def test_vertices_on_cycles():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c")])
    assert vertices_on_cycles(g) == ("a", "b")
    assert every_vertex_connects_to_cycle(g) is False  # c is a sink off the cycle
    h = build_graph(["a", "b"], [("a", "b"), ("b", "a")])
    assert every_vertex_connects_to_cycle(h) is True


def test_hereditary_saturated_subsets():
    # v feeds z, z only feeds itself: {z} is invariant, {v} is not
    g = build_graph(["v", "z"], [("v", "v"), ("v", "z"), ("z", "z"), ("z", "z")])
    subsets = hereditary_saturated_subsets(g)
    assert frozenset() in subsets and frozenset({"v", "z"}) in subsets
    assert frozenset({"z"}) in subsets
    assert frozenset({"v"}) not in subsets
    assert nontrivial_hereditary_saturated(g) == frozenset({"z"})
    assert is_hereditary(g, {"z"}) and is_saturated(g, {"z"})
    assert not is_hereditary(g, {"v"})


def test_saturation_requires_regular_preimages():
    # a -> b, a regular with its only range in the subset, so {b} alone
    # is not saturated
    g = build_graph(["a", "b"], [("a", "b"), ("b", "b")])
    assert is_hereditary(g, {"b"})
    assert not is_saturated(g, {"b"})
    assert nontrivial_hereditary_saturated(g) is None


def test_subset_enumeration_cap():
    n = SUBSET_ENUMERATION_CAP + 1
    g = build_graph([f"v{i}" for i in range(n)], [])
    with pytest.raises(GraphTooLargeError):
        hereditary_saturated_subsets(g)


def test_json_round_trip():
    g = matrix_graph(3, 2)
    doc = graph_to_json(g)
    assert graph_from_json(doc) == g
    # extra keys are tolerated, which lets command output feed back in
    doc["schema"] = 1
    assert graph_from_json(doc) == g


def test_json_diagnostics_name_the_field():
    with pytest.raises(InvalidParameterError, match="vertices"):
        graph_from_json({"edges": []})
    with pytest.raises(InvalidParameterError, match=r"edges.*\[1\]"):
        graph_from_json({"vertices": ["a"], "edges": [["a", "a"], ["a"]]})


def test_same_labeled_graph_ignores_edge_order():
    a = build_graph(["x", "y"], [("x", "y"), ("y", "x")])
    b = build_graph(["y", "x"], [("y", "x"), ("x", "y")])
    assert same_labeled_graph(a, b)
    c = build_graph(["x", "y"], [("x", "y"), ("x", "y")])
    assert not same_labeled_graph(a, c)
