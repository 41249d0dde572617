"""Budgeted confluence search over an abstract rewrite relation.

Equality in a graph monoid reduces to finding a common rewrite descendant
of the two sides, so the engine here answers one question: do two start
elements reach a common element under a successor relation?  Both
descendant cones are grown breadth-first, smaller frontier first, until
they intersect, both close off, or a budget runs out.  Nothing in this
module knows about graphs; callers supply the successor function and run
their own invariant prefilters before searching.

Elements must be hashable and totally orderable so frontiers can be
expanded in a deterministic canonical order.  Labels attached to steps are
opaque and only surface in certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable

__all__ = [
    "SearchBudget",
    "DEFAULT_BUDGET",
    "VerdictKind",
    "Witness",
    "Certificate",
    "SearchStats",
    "Verdict",
    "closure",
    "meet_search",
    "MeetOutcome",
]


@dataclass(frozen=True)
class SearchBudget:
    """Resource limits for one search.

    max_steps bounds the rewrite depth per side, max_element_size prunes
    elements whose total coefficient grows past the bound, max_frontier
    bounds each side's visited set.
    """

    max_steps: int = 24
    max_element_size: int = 512
    max_frontier: int = 200_000

    def __post_init__(self) -> None:
        for name in ("max_steps", "max_element_size", "max_frontier"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


DEFAULT_BUDGET = SearchBudget()


class VerdictKind(str, Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    """Reason backing an unequal verdict.

    kind is one of "k0-class" (invariant values differ), "zero-vs-nonzero"
    (exactly one side is the monoid zero), or "disjoint-closures" (both
    descendant cones closed off completely without meeting, which refutes
    equality outright).
    """

    kind: str
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Certificate:
    """Replayable proof of equality: two rewrite paths to a common element.

    Each step is (label, element-after-step); the paths start at the
    respective query elements and end at ``meet``.
    """

    meet: Any
    left_steps: tuple
    right_steps: tuple


@dataclass(frozen=True)
class SearchStats:
    """What the search spent and how it stopped, for reproducibility."""

    levels_left: int = 0
    levels_right: int = 0
    visited_left: int = 0
    visited_right: int = 0
    pruned_by_size: int = 0
    frontier_cap_hit: bool = False
    closed_left: bool = False
    closed_right: bool = False


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer: equal with certificate, unequal with witness,
    or unknown with the budget the search spent."""

    kind: VerdictKind
    certificate: Certificate | None = None
    witness: Witness | None = None
    stats: SearchStats | None = None

    @property
    def is_equal(self) -> bool:
        return self.kind is VerdictKind.EQUAL

    @property
    def is_unequal(self) -> bool:
        return self.kind is VerdictKind.UNEQUAL

    @property
    def is_unknown(self) -> bool:
        return self.kind is VerdictKind.UNKNOWN


SuccessorFn = Callable[[Any], Iterable[tuple[Any, Any]]]


def closure(start: Any, successors: SuccessorFn, budget: SearchBudget,
            size_of: Callable[[Any], int]) -> tuple[frozenset, bool]:
    """Breadth-first closure of one element under the rewrite relation.

    Returns (elements, complete).  ``complete`` is False when any budget
    bound cut the walk short, in which case the set is a subset of the
    true closure.
    """
    visited = {start}
    frontier = [start]
    complete = True
    depth = 0
    while frontier and depth < budget.max_steps:
        new = []
        for elem in frontier:
            for _, nxt in successors(elem):
                if nxt in visited:
                    continue
                if size_of(nxt) > budget.max_element_size:
                    complete = False
                    continue
                if len(visited) >= budget.max_frontier:
                    return frozenset(visited), False
                visited.add(nxt)
                new.append(nxt)
        frontier = sorted(new)
        depth += 1
    if frontier:
        complete = False  # depth bound hit with work remaining
    return frozenset(visited), complete


class _Side:
    __slots__ = ("parents", "frontier", "depth", "pruned", "capped")

    def __init__(self, root: Any):
        self.parents: dict[Any, tuple[Any, Any] | None] = {root: None}
        self.frontier: list = [root]
        self.depth = 0
        self.pruned = 0
        self.capped = False

    def expandable(self, budget: SearchBudget) -> bool:
        return bool(self.frontier) and self.depth < budget.max_steps and not self.capped

    def closed(self) -> bool:
        # the whole descendant cone was enumerated with nothing cut off
        return not self.frontier and self.pruned == 0 and not self.capped


@dataclass(frozen=True)
class MeetOutcome:
    kind: str  # "meet" | "disjoint" | "exhausted"
    meet: Any = None
    left_steps: tuple = ()
    right_steps: tuple = ()
    stats: SearchStats | None = None


def _path(side: _Side, meet: Any) -> tuple:
    steps = []
    node = meet
    while True:
        parent = side.parents[node]
        if parent is None:
            break
        prev, label = parent
        steps.append((label, node))
        node = prev
    steps.reverse()
    return tuple(steps)


def meet_search(left: Any, right: Any, successors: SuccessorFn,
                budget: SearchBudget, size_of: Callable[[Any], int]) -> MeetOutcome:
    """Interleaved bidirectional breadth-first search for a common
    descendant of ``left`` and ``right``.

    The smaller frontier is expanded first (ties go left); within a level
    elements are expanded in canonical sorted order, so results and
    certificates are deterministic.  Outcomes: "meet" with two step paths,
    "disjoint" when both cones closed off completely without meeting
    (a genuine refutation of equality), "exhausted" otherwise.
    """
    sides = (_Side(left), _Side(right))
    if left == right:
        return MeetOutcome(kind="meet", meet=left, stats=_stats(sides))
    # roots may already sit in each other's cone only via expansion; the
    # root-equality case above is the sole zero-step meet
    while True:
        candidates = [s for s in sides if s.expandable(budget)]
        if not candidates:
            break
        side = min(candidates, key=lambda s: (len(s.frontier), s is sides[1]))
        other = sides[1] if side is sides[0] else sides[0]
        meets: list = []
        new: list = []
        for elem in side.frontier:
            for label, nxt in successors(elem):
                if nxt in side.parents:
                    continue
                if size_of(nxt) > budget.max_element_size:
                    side.pruned += 1
                    continue
                if len(side.parents) >= budget.max_frontier:
                    side.capped = True
                    break
                side.parents[nxt] = (elem, label)
                new.append(nxt)
                if nxt in other.parents:
                    meets.append(nxt)
            if side.capped:
                break
        side.depth += 1
        side.frontier = sorted(new)
        if meets:
            meet = min(meets)
            return MeetOutcome(
                kind="meet",
                meet=meet,
                left_steps=_path(sides[0], meet),
                right_steps=_path(sides[1], meet),
                stats=_stats(sides),
            )
    if sides[0].closed() and sides[1].closed():
        return MeetOutcome(kind="disjoint", stats=_stats(sides))
    return MeetOutcome(kind="exhausted", stats=_stats(sides))


def _stats(sides) -> SearchStats:
    return SearchStats(
        levels_left=sides[0].depth,
        levels_right=sides[1].depth,
        visited_left=len(sides[0].parents),
        visited_right=len(sides[1].parents),
        pruned_by_size=sides[0].pruned + sides[1].pruned,
        frontier_cap_hit=sides[0].capped or sides[1].capped,
        closed_left=sides[0].closed(),
        closed_right=sides[1].closed(),
    )
