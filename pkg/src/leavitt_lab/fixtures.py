"""Named example graphs.

Small graphs with known invariants, used by the command line interface
and throughout the tests.  Beyond the fixed names there are two families:
``rose<n>`` (one vertex, n loops) and ``matrix-<d>-<n>`` (two vertices,
d - 1 parallel edges into a vertex carrying n loops).
"""

from __future__ import annotations

import re

from .graphs import Graph, InvalidParameterError, build_graph, matrix_graph, rose_graph


def _e2() -> Graph:
    # one vertex, two loops; its monoid identifies all nonzero multiples
    return rose_graph(2)


def _e2_minus() -> Graph:
    # the Cuntz splice of the two-loop rose at its vertex: two extra
    # vertices in a mutual embrace, K-theory unchanged
    return build_graph(
        ["u", "v", "w"],
        [("u", "u"), ("u", "u"), ("u", "v"), ("v", "u"),
         ("v", "w"), ("w", "v"), ("v", "v"), ("w", "w")],
    )


def _ex34_1() -> Graph:
    # three mutually feeding vertices; K0 is infinite cyclic and the unit
    # class lands on zero, so no vertex is a positive multiple of the unit
    return build_graph(
        ["u", "v", "z"],
        [("u", "v"), ("u", "z"), ("v", "v"), ("v", "u"),
         ("z", "z"), ("z", "u")],
    )


def _ex34_2() -> Graph:
    # a loop feeding a doubled loop; {z} is hereditary and saturated, so
    # the monoid has a proper invariant quotient
    return build_graph(
        ["v", "z"],
        [("v", "v"), ("v", "z"), ("z", "z"), ("z", "z")],
    )


def _ex36() -> Graph:
    # two vertices, three edges, adjacency like a Fibonacci substitution;
    # trivial K0 with every vertex a single unit translate in the graded
    # monoid
    return build_graph(
        ["u", "v"],
        [("u", "u"), ("u", "v"), ("v", "u")],
    )


_FIXED = {
    "e2": _e2,
    "e2-minus": _e2_minus,
    "ex34-1": _ex34_1,
    "ex34-2": _ex34_2,
    "ex36": _ex36,
}

_ROSE = re.compile(r"^rose(\d+)$")
_MATRIX = re.compile(r"^matrix-(\d+)-(\d+)$")

FIXTURE_DESCRIPTIONS = {
    "e2": "one vertex with two loops",
    "e2-minus": "Cuntz splice of e2",
    "ex34-1": "three-vertex graph with K0 = Z and unit class 0",
    "ex34-2": "two-vertex graph with a proper hereditary saturated subset",
    "ex36": "two-vertex graph with trivial K0, graded unit comparisons in one step",
    "rose<n>": "one vertex with n loops",
    "matrix-<d>-<n>": "d-1 edges into a vertex with n loops (d, n >= 2)",
}


def fixture_names() -> tuple[str, ...]:
    return tuple(FIXTURE_DESCRIPTIONS)


def fixture_graph(name: str) -> Graph:
    """Look up a fixture by name; template names are parsed on the fly."""
    builder = _FIXED.get(name)
    if builder is not None:
        return builder()
    m = _ROSE.match(name)
    if m:
        return rose_graph(int(m.group(1)))
    m = _MATRIX.match(name)
    if m:
        return matrix_graph(int(m.group(1)), int(m.group(2)))
    known = ", ".join(fixture_names())
    raise InvalidParameterError(f"unknown fixture {name!r}; available: {known}")
