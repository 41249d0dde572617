"""The graph monoid: free abelian elements and one-step rewriting.

The monoid of a graph is generated by the vertices subject to, for every
non-sink v, the relation  v = sum of the ranges of the edges leaving v.
Orienting each relation left to right gives the one-step rewrite used
everywhere here: pick a vertex with a positive coefficient, trade one
copy of it for the multiset of its edge ranges.  Two elements are equal
in the monoid exactly when they rewrite to a common element, which is
what ``decide_equal`` searches for after a cheap K0 refutation pass.

``MonoidElement`` equality and hashing are structural (equality in the
free abelian monoid); monoid equality is always a derived judgment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from operator import add

from .graphs import Graph, InvalidParameterError, UnknownVertexError
from .ktheory import class_in_k0
from .search import (
    DEFAULT_BUDGET,
    Certificate,
    MeetOutcome,
    SearchBudget,
    Verdict,
    VerdictKind,
    Witness,
    closure,
    meet_search,
)

__all__ = [
    "MonoidElement",
    "ZeroElementError",
    "make_element",
    "zero_element",
    "vertex_element",
    "unit_element",
    "parse_element",
    "format_element",
    "one_step_rewrites",
    "reachable",
    "decide_equal",
    "enumerate_monoid",
    "MonoidEnumeration",
    "replay_certificate",
    "CertificateReplayError",
]


class ZeroElementError(ValueError):
    """The zero element admits no rewrite step."""


class CertificateReplayError(ValueError):
    """A certificate step does not match any legal rewrite."""


@dataclass(frozen=True)
class MonoidElement:
    """Finitely supported vertex multiset with positive coefficients.

    ``items`` is the canonical form: (vertex, coefficient) pairs in the
    ambient graph's vertex order with no zero coefficients stored, so
    structural equality, hashing, and serialization all agree.
    """

    vertices: tuple[str, ...]
    items: tuple[tuple[str, int], ...]

    @property
    def coefficients(self) -> dict[str, int]:
        return dict(self.items)

    def coefficient(self, vertex: str) -> int:
        for v, c in self.items:
            if v == vertex:
                return c
        if vertex not in self.vertices:
            raise UnknownVertexError(f"no vertex {vertex!r} in ambient graph")
        return 0

    @property
    def total(self) -> int:
        return sum(c for _, c in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    def support(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.items)

    def dense(self) -> tuple[int, ...]:
        coeffs = dict(self.items)
        return tuple(coeffs.get(v, 0) for v in self.vertices)

    def __add__(self, other: "MonoidElement") -> "MonoidElement":
        if self.vertices != other.vertices:
            raise InvalidParameterError("cannot add elements over different graphs")
        return _from_dense(self.vertices, tuple(map(add, self.dense(), other.dense())))

    def scaled(self, k: int) -> "MonoidElement":
        if k < 0:
            raise InvalidParameterError("monoid elements have no negatives")
        return _from_dense(self.vertices, tuple(c * k for c in self.dense()))

    def __str__(self) -> str:
        return format_element(self)


def _from_dense(vertices: tuple[str, ...], vec: tuple[int, ...]) -> MonoidElement:
    items = tuple((v, c) for v, c in zip(vertices, vec) if c)
    return MonoidElement(vertices, items)


def make_element(g: Graph, coefficients) -> MonoidElement:
    """Build an element from a vertex -> coefficient mapping.

    Zero coefficients are dropped; negatives are rejected.
    """
    vec = [0] * g.n_vertices
    for v, c in dict(coefficients).items():
        if c < 0:
            raise InvalidParameterError(f"coefficient of {v!r} is negative")
        vec[g.index(v)] += c
    return _from_dense(g.vertices, tuple(vec))


def zero_element(g: Graph) -> MonoidElement:
    return MonoidElement(g.vertices, ())


def vertex_element(g: Graph, vertex: str) -> MonoidElement:
    return make_element(g, {vertex: 1})


def unit_element(g: Graph) -> MonoidElement:
    """The order unit: one copy of every vertex (zero on the empty graph)."""
    return make_element(g, {v: 1 for v in g.vertices})


# -- text syntax -------------------------------------------------------------

_TERM = re.compile(r"^(?P<coeff>\d+)?\s*\*?\s*(?P<name>\S.*?)$")


def parse_element(g: Graph, text: str) -> MonoidElement:
    """Parse the element syntax: "2u + v + 3w", or "0" for zero.

    A term is an optional positive decimal coefficient, an optional "*",
    and a vertex name; names must not start with a digit.
    """
    stripped = text.strip()
    if stripped == "0":
        return zero_element(g)
    if not stripped:
        raise InvalidParameterError("empty element text")
    vec = [0] * g.n_vertices
    for raw in stripped.split("+"):
        term = raw.strip()
        m = _TERM.match(term)
        if m is None or not m.group("name"):
            raise InvalidParameterError(f"unreadable term {raw.strip()!r}")
        name = m.group("name").strip()
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        vec[g.index(name)] += coeff
    return _from_dense(g.vertices, tuple(vec))


def format_element(el: MonoidElement) -> str:
    if el.is_zero:
        return "0"
    parts = []
    for v, c in el.items:
        parts.append(v if c == 1 else f"{c}{v}")
    return " + ".join(parts)


# -- rewriting ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _rewrite_deltas(g: Graph) -> tuple[tuple[int, ...] | None, ...]:
    """Per vertex index: the dense coefficient change of one rewrite step
    there, or None at sinks (which admit no step)."""
    n = g.n_vertices
    deltas: list[tuple[int, ...] | None] = []
    for j, v in enumerate(g.vertices):
        ranges = g._out_range_indices[j]
        if not ranges:
            deltas.append(None)
            continue
        d = [0] * n
        d[j] -= 1
        for r in ranges:
            d[r] += 1
        deltas.append(tuple(d))
    return tuple(deltas)


def _dense_successors(g: Graph):
    deltas = _rewrite_deltas(g)
    n = g.n_vertices

    def successors(vec: tuple[int, ...]):
        out = []
        seen = set()
        for j in range(n):
            if vec[j] and deltas[j] is not None:
                nxt = tuple(map(add, vec, deltas[j]))
                if nxt not in seen:
                    seen.add(nxt)
                    out.append((j, nxt))
        return out

    return successors


def one_step_rewrites(g: Graph, el: MonoidElement) -> list[MonoidElement]:
    """All single-step rewrites of a nonzero element.

    One result per rewritable vertex, in vertex order, deduplicated by
    canonical form (two vertices can produce the same result).  Sinks
    admit no step; the zero element raises ZeroElementError.
    """
    if el.is_zero:
        raise ZeroElementError("the zero element admits no rewrite")
    succ = _dense_successors(g)
    return [_from_dense(g.vertices, vec) for _, vec in succ(el.dense())]


def reachable(g: Graph, el: MonoidElement, budget: SearchBudget = DEFAULT_BUDGET):
    """Budgeted forward closure of an element, itself included.

    Returns (frozenset of elements, complete flag); complete is False when
    a budget bound cut the closure short.
    """
    succ = _dense_successors(g)
    elems, complete = closure(el.dense(), succ, budget, sum)
    return frozenset(_from_dense(g.vertices, vec) for vec in elems), complete


def _check_same_graph(g: Graph, *els: MonoidElement) -> None:
    for el in els:
        if el.vertices != g.vertices:
            raise InvalidParameterError("element does not belong to this graph")


def decide_equal(g: Graph, a: MonoidElement, b: MonoidElement,
                 budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Decide equality of two elements in the graph monoid.

    Zero is equal only to itself.  A K0 class mismatch refutes outright;
    otherwise both descendant cones are searched for a common element.
    Equal verdicts carry a replayable two-path certificate; unequal
    verdicts carry a witness; unknown verdicts report the budget spent.
    """
    _check_same_graph(g, a, b)
    if a.is_zero or b.is_zero:
        if a.is_zero and b.is_zero:
            return Verdict(VerdictKind.EQUAL,
                           certificate=Certificate(meet=a, left_steps=(), right_steps=()))
        return Verdict(
            VerdictKind.UNEQUAL,
            witness=Witness("zero-vs-nonzero", {
                "left": format_element(a), "right": format_element(b),
            }),
        )
    ca = class_in_k0(g, a)
    cb = class_in_k0(g, b)
    if ca != cb:
        return Verdict(
            VerdictKind.UNEQUAL,
            witness=Witness("k0-class", {
                "left_class": list(ca), "right_class": list(cb),
            }),
        )
    succ = _dense_successors(g)
    outcome = meet_search(a.dense(), b.dense(), succ, budget, sum)
    return _verdict_from_outcome(g, outcome)


def _verdict_from_outcome(g: Graph, outcome: MeetOutcome) -> Verdict:
    if outcome.kind == "meet":
        cert = Certificate(
            meet=_from_dense(g.vertices, outcome.meet),
            left_steps=tuple(
                (g.vertices[j], _from_dense(g.vertices, vec))
                for j, vec in outcome.left_steps
            ),
            right_steps=tuple(
                (g.vertices[j], _from_dense(g.vertices, vec))
                for j, vec in outcome.right_steps
            ),
        )
        return Verdict(VerdictKind.EQUAL, certificate=cert, stats=outcome.stats)
    if outcome.kind == "disjoint":
        return Verdict(
            VerdictKind.UNEQUAL,
            witness=Witness("disjoint-closures", {
                "left_closure_size": outcome.stats.visited_left,
                "right_closure_size": outcome.stats.visited_right,
            }),
            stats=outcome.stats,
        )
    return Verdict(VerdictKind.UNKNOWN, stats=outcome.stats)


def replay_certificate(g: Graph, start: MonoidElement, steps) -> MonoidElement:
    """Replay one side of an equality certificate.

    Each step (vertex, element) must match the rewrite of the running
    element at that vertex exactly; returns the final element.
    """
    current = start
    deltas = _rewrite_deltas(g)
    for vertex, expected in steps:
        j = g.index(vertex)
        vec = current.dense()
        if not vec[j]:
            raise CertificateReplayError(
                f"step rewrites {vertex!r} but {format_element(current)} has none"
            )
        delta = deltas[j]
        if delta is None:
            raise CertificateReplayError(f"step rewrites the sink {vertex!r}")
        nxt = _from_dense(g.vertices, tuple(map(add, vec, delta)))
        if nxt != expected:
            raise CertificateReplayError(
                f"step at {vertex!r} gives {format_element(nxt)}, "
                f"certificate claims {format_element(expected)}"
            )
        current = nxt
    return current


# -- whole-monoid enumeration -------------------------------------------------


@dataclass(frozen=True)
class MonoidEnumeration:
    """Result of enumerating monoid classes.

    ``complete`` means the class list provably exhausts the monoid; when
    False the monoid did not stabilize within budget (it may be infinite)
    and ``representatives`` is only a lower bound.
    """

    representatives: tuple[MonoidElement, ...]
    complete: bool
    reason: str = ""


def enumerate_monoid(g: Graph, budget: SearchBudget = DEFAULT_BUDGET,
                     max_classes: int = 64) -> MonoidEnumeration:
    """Enumerate the classes of the graph monoid, smallest members first.

    Walks all free-monoid elements level by level (level = total
    coefficient), filing each under the first known class decide_equal
    confirms.  A level contributing no new class closes the enumeration:
    every later element is a vertex added to a smaller one, so by
    congruence it lands in a known class.  Budget exhaustion, an unknown
    comparison, or passing ``max_classes`` yields an incomplete result.
    """
    reps: list[MonoidElement] = [zero_element(g)]
    n = g.n_vertices
    if n == 0:
        return MonoidEnumeration((reps[0],), True)
    level = 0
    while True:
        level += 1
        if level > budget.max_steps:
            return MonoidEnumeration(tuple(reps), False, "level budget exhausted")
        fresh = 0
        candidates = []
        for combo in combinations_with_replacement(range(n), level):
            vec = [0] * n
            for j in combo:
                vec[j] += 1
            candidates.append(tuple(vec))
        for vec in sorted(candidates):
            el = _from_dense(g.vertices, vec)
            known = False
            for rep in reps:
                verdict = decide_equal(g, el, rep, budget)
                if verdict.is_equal:
                    known = True
                    break
                if verdict.is_unknown:
                    return MonoidEnumeration(tuple(reps), False,
                                             "comparison exhausted its budget")
            if not known:
                reps.append(el)
                fresh += 1
                if len(reps) > max_classes:
                    return MonoidEnumeration(tuple(reps), False,
                                             "class cap exceeded")
        if not fresh:
            return MonoidEnumeration(tuple(reps), True)
