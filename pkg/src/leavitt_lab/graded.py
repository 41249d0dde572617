"""The graded refinement of the graph monoid.

Generators are vertices carrying an integer shift, written u(i), and the
defining relation moves one shift up: a non-sink at shift i equals the
multiset of its edge ranges at shift i + 1.  Equality is again decided
by searching both rewrite cones for a common element.  Forgetting shifts
is a monoid map onto the ungraded monoid, which makes the ungraded K0
class a sound refutation filter here too.

The graded unit comparison asks whether every generator at shift zero is
a finite sum of unit translates; because the shift window and summand
count must be capped to stay finite, its negative verdicts are relative
to the searched window except when K0 already rules every candidate out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .classify import CheckStatus
from .graphs import Graph, InvalidParameterError
from .ktheory import class_in_k0, k0_of_graph, unit_multiple_candidates
from .monoid import MonoidElement, ZeroElementError, make_element
from .search import (
    Certificate,
    MeetOutcome,
    SearchBudget,
    Verdict,
    VerdictKind,
    Witness,
    meet_search,
)

__all__ = [
    "GradedElement",
    "GRADED_DEFAULT_BUDGET",
    "make_graded_element",
    "zero_graded_element",
    "graded_vertex",
    "unit_at_shift",
    "shift_action",
    "forget_grading",
    "parse_graded_element",
    "format_graded_element",
    "graded_one_step",
    "graded_decide_equal",
    "replay_graded_certificate",
    "GradedSerreVertexOutcome",
    "GradedSerreReport",
    "graded_serre_check",
    "graded_serre_report_to_json",
]

GRADED_DEFAULT_BUDGET = SearchBudget(max_steps=12, max_element_size=128,
                                     max_frontier=20_000)


@dataclass(frozen=True)
class GradedElement:
    """Finitely supported (shift, vertex) multiset with positive coefficients.

    ``items`` is canonical: (shift, vertex, coefficient) triples sorted by
    shift and then by the ambient graph's vertex order, no zeros stored.
    """

    vertices: tuple[str, ...]
    items: tuple[tuple[int, str, int], ...]

    @property
    def total(self) -> int:
        return sum(c for _, _, c in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    def coefficient(self, shift: int, vertex: str) -> int:
        for s, v, c in self.items:
            if s == shift and v == vertex:
                return c
        return 0

    def support(self) -> tuple[tuple[int, str], ...]:
        return tuple((s, v) for s, v, _ in self.items)

    def shift_span(self) -> tuple[int, int] | None:
        """Smallest and largest shift carrying support, None when zero."""
        if not self.items:
            return None
        shifts = [s for s, _, _ in self.items]
        return min(shifts), max(shifts)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if self.vertices != other.vertices:
            raise InvalidParameterError("cannot add elements over different graphs")
        counts: dict[tuple[int, str], int] = {}
        for s, v, c in self.items + other.items:
            counts[(s, v)] = counts.get((s, v), 0) + c
        return _from_counts(self.vertices, counts)

    def scaled(self, k: int) -> "GradedElement":
        if k < 0:
            raise InvalidParameterError("monoid elements have no negatives")
        return _from_counts(
            self.vertices, {(s, v): c * k for s, v, c in self.items}
        )

    def __str__(self) -> str:
        return format_graded_element(self)


def _from_counts(vertices: tuple[str, ...],
                 counts: dict[tuple[int, str], int]) -> GradedElement:
    order = {v: j for j, v in enumerate(vertices)}
    items = tuple(
        (s, v, c)
        for (s, v), c in sorted(counts.items(), key=lambda kv: (kv[0][0], order[kv[0][1]]))
        if c
    )
    return GradedElement(vertices, items)


def make_graded_element(g: Graph, coefficients) -> GradedElement:
    """Build an element from a (shift, vertex) -> coefficient mapping."""
    counts: dict[tuple[int, str], int] = {}
    for (shift, v), c in dict(coefficients).items():
        g.index(v)
        if c < 0:
            raise InvalidParameterError(f"coefficient of {v}({shift}) is negative")
        key = (int(shift), v)
        counts[key] = counts.get(key, 0) + c
    return _from_counts(g.vertices, counts)


def zero_graded_element(g: Graph) -> GradedElement:
    return GradedElement(g.vertices, ())


def graded_vertex(g: Graph, vertex: str, shift: int = 0) -> GradedElement:
    return make_graded_element(g, {(shift, vertex): 1})


def unit_at_shift(g: Graph, shift: int = 0) -> GradedElement:
    """One copy of every vertex, all at the given shift."""
    return make_graded_element(g, {(shift, v): 1 for v in g.vertices})


def shift_action(d: int, el: GradedElement) -> GradedElement:
    """Translate every shift by d; an automorphism of the graded monoid."""
    return GradedElement(
        el.vertices, tuple((s + d, v, c) for s, v, c in el.items)
    )


def forget_grading(g: Graph, el: GradedElement) -> MonoidElement:
    """Drop shifts, summing coefficients vertex by vertex."""
    totals: dict[str, int] = {}
    for _, v, c in el.items:
        totals[v] = totals.get(v, 0) + c
    return make_element(g, totals)


# -- text syntax ---------------------------------------------------------------

_GRADED_TERM = re.compile(
    r"^(?P<coeff>\d+)?\s*\*?\s*(?P<name>[^\s(*][^\s(]*)\s*"
    r"(?:\(\s*(?P<shift>[+-]?\d+)\s*\))?$"
)


def parse_graded_element(g: Graph, text: str) -> GradedElement:
    """Parse "u(1) + 2v(-1)"; a bare vertex name means shift zero, "0" is
    the zero element."""
    stripped = text.strip()
    if stripped == "0":
        return zero_graded_element(g)
    if not stripped:
        raise InvalidParameterError("empty element text")
    counts: dict[tuple[int, str], int] = {}
    for raw in stripped.split("+"):
        term = raw.strip()
        m = _GRADED_TERM.match(term)
        if m is None:
            raise InvalidParameterError(f"unreadable term {term!r}")
        name = m.group("name")
        g.index(name)
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        shift = int(m.group("shift")) if m.group("shift") else 0
        key = (shift, name)
        counts[key] = counts.get(key, 0) + coeff
    return _from_counts(g.vertices, counts)


def format_graded_element(el: GradedElement) -> str:
    if el.is_zero:
        return "0"
    parts = []
    for s, v, c in el.items:
        head = "" if c == 1 else str(c)
        parts.append(f"{head}{v}({s})")
    return " + ".join(parts)


# -- rewriting and equality ----------------------------------------------------

_State = tuple[tuple[tuple[int, int], int], ...]  # ((shift, vertex index), coeff)


def _to_state(g: Graph, el: GradedElement) -> _State:
    return tuple(((s, g.index(v)), c) for s, v, c in el.items)


def _from_state(g: Graph, state: _State) -> GradedElement:
    return GradedElement(
        g.vertices, tuple((s, g.vertices[j], c) for (s, j), c in state)
    )


def _graded_successors(g: Graph):
    ranges_by_vertex = g._out_range_indices

    def successors(state: _State):
        out = []
        seen = set()
        counts = dict(state)
        for (shift, j), c in state:
            ranges = ranges_by_vertex[j]
            if not ranges:
                continue
            nxt = dict(counts)
            if c == 1:
                del nxt[(shift, j)]
            else:
                nxt[(shift, j)] = c - 1
            for r in ranges:
                key = (shift + 1, r)
                nxt[key] = nxt.get(key, 0) + 1
            canon = tuple(sorted(nxt.items()))
            if canon not in seen:
                seen.add(canon)
                out.append(((shift, j), canon))
        return out

    return successors


def _state_size(state: _State) -> int:
    return sum(c for _, c in state)


def graded_one_step(g: Graph, el: GradedElement) -> list[GradedElement]:
    """All single-step rewrites: trade one occurrence of a non-sink at
    shift i for its edge ranges at shift i + 1."""
    if el.is_zero:
        raise ZeroElementError("the zero element admits no rewrite")
    succ = _graded_successors(g)
    return [_from_state(g, state) for _, state in succ(_to_state(g, el))]


def _check_same_graph(g: Graph, *els: GradedElement) -> None:
    for el in els:
        if el.vertices != g.vertices:
            raise InvalidParameterError("element does not belong to this graph")


def graded_decide_equal(g: Graph, a: GradedElement, b: GradedElement,
                        budget: SearchBudget = GRADED_DEFAULT_BUDGET) -> Verdict:
    """Decide equality in the graded monoid.

    The ungraded K0 class of the forgotten elements must agree, since
    forgetting shifts is a monoid map; a mismatch refutes without search.
    Certificates replay exactly like ungraded ones, with (shift, vertex)
    labels.
    """
    _check_same_graph(g, a, b)
    if a.is_zero or b.is_zero:
        if a.is_zero and b.is_zero:
            return Verdict(VerdictKind.EQUAL,
                           certificate=Certificate(meet=a, left_steps=(), right_steps=()))
        return Verdict(
            VerdictKind.UNEQUAL,
            witness=Witness("zero-vs-nonzero", {
                "left": format_graded_element(a),
                "right": format_graded_element(b),
            }),
        )
    ca = class_in_k0(g, forget_grading(g, a))
    cb = class_in_k0(g, forget_grading(g, b))
    if ca != cb:
        return Verdict(
            VerdictKind.UNEQUAL,
            witness=Witness("forgetful-k0-class", {
                "left_class": list(ca), "right_class": list(cb),
            }),
        )
    succ = _graded_successors(g)
    outcome = meet_search(_to_state(g, a), _to_state(g, b), succ, budget, _state_size)
    return _graded_verdict(g, outcome)


def _graded_verdict(g: Graph, outcome: MeetOutcome) -> Verdict:
    if outcome.kind == "meet":
        cert = Certificate(
            meet=_from_state(g, outcome.meet),
            left_steps=tuple(
                ((s, g.vertices[j]), _from_state(g, state))
                for (s, j), state in outcome.left_steps
            ),
            right_steps=tuple(
                ((s, g.vertices[j]), _from_state(g, state))
                for (s, j), state in outcome.right_steps
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


def replay_graded_certificate(g: Graph, start: GradedElement, steps) -> GradedElement:
    """Replay one side of a graded certificate; each step is a
    ((shift, vertex), expected element) pair."""
    from .monoid import CertificateReplayError

    succ = _graded_successors(g)
    current = _to_state(g, start)
    for (shift, vertex), expected in steps:
        j = g.index(vertex)
        produced = None
        for label, state in succ(current):
            if label == (shift, j):
                produced = state
                break
        if produced is None:
            raise CertificateReplayError(
                f"step rewrites {vertex}({shift}) but "
                f"{format_graded_element(_from_state(g, current))} cannot"
            )
        nxt = _from_state(g, produced)
        if nxt != expected:
            raise CertificateReplayError(
                f"step at {vertex}({shift}) gives {format_graded_element(nxt)}, "
                f"certificate claims {format_graded_element(expected)}"
            )
        current = produced
    return _from_state(g, current)


# -- graded unit comparison ------------------------------------------------------


@dataclass(frozen=True)
class GradedSerreVertexOutcome:
    """One vertex against sums of unit translates.  ``shifts`` is the
    witnessing multiset of translates when status is holds."""

    vertex: str
    status: CheckStatus
    shifts: tuple[int, ...] | None = None
    reason: str | None = None
    certificate: Certificate | None = None
    candidates_tried: int = 0


@dataclass(frozen=True)
class GradedSerreReport:
    status: CheckStatus
    outcomes: tuple[GradedSerreVertexOutcome, ...]
    window: tuple[int, int]
    max_summands: int

    @property
    def holds(self) -> bool:
        return self.status is CheckStatus.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is CheckStatus.FAILS


def _window_shifts(window: tuple[int, int]) -> list[int]:
    lo, hi = window
    if lo > hi:
        raise InvalidParameterError("shift window is empty")
    nonneg = list(range(max(lo, 0), hi + 1))
    neg = list(range(min(hi, -1), lo - 1, -1))
    return nonneg + neg


def graded_serre_check(g: Graph, budget: SearchBudget = GRADED_DEFAULT_BUDGET,
                       window: tuple[int, int] = (-8, 8), max_summands: int = 3,
                       max_candidates: int = 48) -> GradedSerreReport:
    """Is every shift-zero vertex a sum of unit translates?

    Candidate sums have between 1 and ``max_summands`` translates, with
    shifts drawn from ``window`` (small nonnegative shifts first, since
    rewriting only ever raises shifts).  The summand count must solve the
    ungraded K0 class equation, which also makes "no solution there" a
    window-independent refutation.  All other negative evidence is
    relative to the window, and inconclusive searches do not stop the
    scan of later candidates the way they do in the ungraded check.
    """
    shifts = _window_shifts(window)
    if max_summands < 1:
        raise InvalidParameterError("need at least one summand")
    k0 = k0_of_graph(g)
    candidates = [
        unit_multiple_candidates(k0, k0.vertex_class(v)) for v in g.vertices
    ]

    if any(not c.multipliers for c in candidates):
        outcomes = tuple(
            GradedSerreVertexOutcome(v, CheckStatus.FAILS, reason="no-k0-solution")
            if not c.multipliers
            else GradedSerreVertexOutcome(v, CheckStatus.UNKNOWN, reason="not-examined")
            for v, c in zip(g.vertices, candidates)
        )
        return GradedSerreReport(CheckStatus.FAILS, outcomes, window, max_summands)

    unit_translates = {s: unit_at_shift(g, s) for s in shifts}
    outcomes = []
    for v, cset in zip(g.vertices, candidates):
        start = graded_vertex(g, v, 0)
        ks = [k for k in cset.multipliers if 1 <= k <= max_summands]
        if not ks:
            outcomes.append(GradedSerreVertexOutcome(
                v, CheckStatus.UNKNOWN, reason="summand-cap"))
            continue
        found = None
        saw_unknown = False
        tried = 0
        capped = False
        for k in ks:
            for combo in combinations_with_replacement(shifts, k):
                if tried >= max_candidates:
                    capped = True
                    break
                tried += 1
                target = zero_graded_element(g)
                for s in combo:
                    target = target + unit_translates[s]
                verdict = graded_decide_equal(g, start, target, budget)
                if verdict.is_equal:
                    found = (combo, verdict.certificate)
                    break
                if verdict.is_unknown:
                    saw_unknown = True
            if found is not None or capped:
                break
        if found is not None:
            combo, cert = found
            outcomes.append(GradedSerreVertexOutcome(
                v, CheckStatus.HOLDS, shifts=tuple(combo),
                certificate=cert, candidates_tried=tried))
        elif saw_unknown or capped:
            reason = "candidate-cap" if capped else "search-budget-within-window"
            outcomes.append(GradedSerreVertexOutcome(
                v, CheckStatus.UNKNOWN, reason=reason, candidates_tried=tried))
        else:
            # every candidate in the window was positively refuted
            outcomes.append(GradedSerreVertexOutcome(
                v, CheckStatus.FAILS, reason="refuted-within-window",
                candidates_tried=tried))

    if any(out.status is CheckStatus.FAILS for out in outcomes):
        status = CheckStatus.FAILS
    elif any(out.status is CheckStatus.UNKNOWN for out in outcomes):
        status = CheckStatus.UNKNOWN
    else:
        status = CheckStatus.HOLDS
    return GradedSerreReport(status, tuple(outcomes), window, max_summands)


def graded_serre_report_to_json(report: GradedSerreReport) -> dict:
    vertices = []
    for out in report.outcomes:
        entry: dict = {"vertex": out.vertex, "status": out.status.value}
        if out.shifts is not None:
            entry["unit_shifts"] = list(out.shifts)
        if out.reason is not None:
            entry["reason"] = out.reason
        if out.candidates_tried:
            entry["candidates_tried"] = out.candidates_tried
        vertices.append(entry)
    return {
        "status": report.status.value,
        "window": list(report.window),
        "max_summands": report.max_summands,
        "vertices": vertices,
    }
