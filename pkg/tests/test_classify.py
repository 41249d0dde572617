"""Unit comparison, structural checks, and the classification pipeline."""

from math import gcd

import pytest

from leavitt_lab.classify import (
    AlgebraKind,
    CheckStatus,
    classify,
    ibn_check,
    purely_infinite_simple_check,
    serre_check,
    stably_free_check,
)
from leavitt_lab.fixtures import fixture_graph
from leavitt_lab.graphs import (
    Graph,
    InvalidParameterError,
    build_graph,
    matrix_graph,
    rose_graph,
)
from leavitt_lab.monoid import replay_certificate, unit_element, vertex_element
from leavitt_lab.search import SearchBudget


def test_serre_holds_on_spliced_rose():
    g = fixture_graph("e2-minus")
    report = serre_check(g)
    assert report.status is CheckStatus.HOLDS
    assert report.multipliers() == {"u": 1, "v": 1, "w": 1}
    one = unit_element(g)
    for out in report.outcomes:
        cert = out.certificate
        assert cert is not None
        start = vertex_element(g, out.vertex)
        assert replay_certificate(g, start, cert.left_steps) == cert.meet
        assert replay_certificate(g, one.scaled(out.multiplier), cert.right_steps) \
            == cert.meet


def test_serre_fails_by_k0_screen():
    report = serre_check(fixture_graph("ex34-1"))
    assert report.status is CheckStatus.FAILS
    assert report.failing_vertex == "v"
    reasons = {out.vertex: out.reason for out in report.outcomes
               if out.status is CheckStatus.FAILS}
    assert set(reasons.values()) == {"no-k0-solution"}

    report = serre_check(fixture_graph("ex34-2"))
    assert report.status is CheckStatus.FAILS
    assert report.failing_vertex == "z"


def test_serre_fails_with_no_search_on_acyclic_graphs():
    # a = b and unit -> 2 in K0 = Z: no vertex class is a positive
    # multiple, so the screen refutes before any rewrite search runs
    g = build_graph(["a", "b"], [("a", "b")])
    report = serre_check(g)
    assert report.status is CheckStatus.FAILS
    assert all(out.reason == "no-k0-solution" for out in report.outcomes
               if out.status is CheckStatus.FAILS)
    assert all(out.certificate is None for out in report.outcomes)


def test_serre_single_vertex_always_holds():
    for n in range(0, 4):
        report = serre_check(rose_graph(n))
        assert report.status is CheckStatus.HOLDS
        assert report.multipliers() == {"u": 1}


def test_serre_gcd_criterion_five_by_five():
    for d in range(2, 7):
        for n in range(2, 7):
            report = serre_check(matrix_graph(d, n))
            expected = CheckStatus.HOLDS if gcd(d, n - 1) == 1 else CheckStatus.FAILS
            assert report.status is expected, (d, n, report.status)


def test_pis_fixture_verdicts():
    assert purely_infinite_simple_check(fixture_graph("ex34-1")).holds
    result = purely_infinite_simple_check(fixture_graph("ex34-2"))
    assert not result.holds
    assert result.witness_subset == frozenset({"z"})
    assert "nontrivial-hereditary-saturated-subset" in result.reasons


def test_pis_cycle_conditions():
    no_exit = purely_infinite_simple_check(rose_graph(1))
    assert not no_exit.holds
    assert "cycle-without-exit" in no_exit.reasons
    assert no_exit.witness_cycle == ("u",)

    acyclic = purely_infinite_simple_check(build_graph(["a"], []))
    assert not acyclic.holds
    assert "no-cycle" in acyclic.reasons

    assert purely_infinite_simple_check(fixture_graph("e2-minus")).holds
    assert not purely_infinite_simple_check(Graph((), ())).holds


def test_no_exit_cycle_respects_parallel_edges():
    assert purely_infinite_simple_check(rose_graph(2)).holds
    two_cycle = build_graph(["a", "b"], [("a", "b"), ("b", "a")])
    result = purely_infinite_simple_check(two_cycle)
    assert not result.holds
    assert result.witness_cycle in (("a", "b"), ("b", "a"))


def test_ibn_results():
    assert ibn_check(fixture_graph("ex34-2")).status is CheckStatus.HOLDS
    result = ibn_check(fixture_graph("e2"))
    assert result.status is CheckStatus.FAILS
    assert result.witness == (1, 2)
    assert result.unit_order == 1
    result = ibn_check(rose_graph(4))  # unit order 3: first collision 1 vs 4
    assert result.status is CheckStatus.FAILS
    assert result.witness == (1, 4)


def test_stably_free_dichotomy():
    assert not stably_free_check(fixture_graph("ex34-1")).generates
    result = stably_free_check(fixture_graph("ex34-2"))
    assert result.generates
    assert result.multipliers == {"v": 1, "z": 0}


def test_classify_fixture_labels():
    expected = {
        "e2": (AlgebraKind.LEAVITT, "L_2", False),
        "e2-minus": (AlgebraKind.LEAVITT, "L_2", True),
        "ex36": (AlgebraKind.LEAVITT, "L_2", True),
        "ex34-1": (AlgebraKind.NOT_SERRE, None, False),
        "ex34-2": (AlgebraKind.NOT_SERRE, None, False),
        "rose0": (AlgebraKind.GROUND_FIELD, "k", False),
        "rose1": (AlgebraKind.LAURENT, "k[x, x^-1]", False),
        "rose5": (AlgebraKind.LEAVITT, "L_5", False),
        "matrix-3-5": (AlgebraKind.LEAVITT, "L_5", True),
        "matrix-2-5": (AlgebraKind.NOT_SERRE, None, False),
    }
    for name, (kind, label, conjectural) in expected.items():
        c = classify(fixture_graph(name))
        assert (c.kind, c.label, c.conjectural) == (kind, label, conjectural), name


def test_classify_reports_undecided_on_tiny_budget():
    g = fixture_graph("e2-minus")
    c = classify(g, SearchBudget(max_steps=1, max_element_size=4, max_frontier=2))
    assert c.kind is AlgebraKind.UNDECIDED


def test_classify_rejects_empty_graph():
    with pytest.raises(InvalidParameterError):
        classify(Graph((), ()))


def test_classify_accepts_precomputed_report():
    g = fixture_graph("e2")
    report = serre_check(g)
    c = classify(g, serre_report=report)
    assert c.serre is report
    assert c.label == "L_2"
