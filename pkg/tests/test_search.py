"""The generic budgeted search layer, driven by toy rewrite systems."""

import pytest

from leavitt_lab.search import SearchBudget, closure, meet_search


def collatz_like(n):
    # strictly growing: no meets between different parities of trajectory
    return [("double", n * 2)]


def mod5_successors(n):
    return [("step", (n + 2) % 5)]


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_steps=0)
    with pytest.raises(ValueError):
        SearchBudget(max_frontier=-1)


def test_closure_complete_on_finite_system():
    elems, complete = closure(0, mod5_successors, SearchBudget(max_steps=50), lambda n: 1)
    assert complete
    assert elems == frozenset({0, 2, 4, 1, 3})


def test_closure_cut_by_steps():
    elems, complete = closure(1, collatz_like, SearchBudget(max_steps=3, max_element_size=10**9), lambda n: 1)
    assert not complete
    assert elems == frozenset({1, 2, 4, 8})


def test_closure_cut_by_size():
    elems, complete = closure(1, collatz_like, SearchBudget(max_steps=50, max_element_size=8), lambda n: n)
    assert not complete
    assert elems == frozenset({1, 2, 4, 8})


def test_meet_of_identical_roots():
    out = meet_search(7, 7, collatz_like, SearchBudget(), lambda n: 1)
    assert out.kind == "meet"
    assert out.meet == 7
    assert out.left_steps == () and out.right_steps == ()


def test_meet_found_and_paths_recorded():
    out = meet_search(1, 4, collatz_like, SearchBudget(max_steps=10, max_element_size=10**9), lambda n: 1)
    assert out.kind == "meet"
    assert out.meet == 4
    assert [lbl for lbl, _ in out.left_steps] == ["double", "double"]
    assert out.right_steps == ()


def test_disjoint_closures_prove_inequality():
    # 0 -> {0,2,4,1,3} mod 5 vs a one-step cycle elsewhere
    def odd_cycle(n):
        return [("swap", 11 - n)]  # 5 <-> 6

    def successors(n):
        return mod5_successors(n) if n < 5 else odd_cycle(n)

    out = meet_search(0, 5, successors, SearchBudget(max_steps=50), lambda n: 1)
    assert out.kind == "disjoint"
    assert out.stats.closed_left and out.stats.closed_right


def test_exhausted_when_budget_too_small():
    out = meet_search(1, 3, collatz_like, SearchBudget(max_steps=4, max_element_size=10**9), lambda n: 1)
    assert out.kind == "exhausted"
    assert not (out.stats.closed_left and out.stats.closed_right)
