"""Structure checks built on top of the equality decision procedure.

The central question is whether every vertex is a positive multiple of
the order unit (the sum of all vertices) inside the graph monoid.  K0
narrows each vertex down to a short list of candidate multipliers, the
confluence search settles individual candidates, and the combination
yields a three-valued verdict: holds, fails, or unknown.  On top of that
sit the purely-infinite-simplicity test, the invariant-basis-number
probe, the stable-freeness criterion, and a classifier that names the
algebra the graph presents when the evidence pins it down.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .graphs import (
    Graph,
    InvalidParameterError,
    nontrivial_hereditary_saturated,
    vertices_on_cycles,
)
from .ktheory import (
    K0Data,
    UnitGeneration,
    k0_of_graph,
    k0_to_json,
    unit_generates_k0,
    unit_multiple_candidates,
)
from .monoid import decide_equal, unit_element, vertex_element
from .search import DEFAULT_BUDGET, Certificate, SearchBudget

__all__ = [
    "CheckStatus",
    "SerreVertexOutcome",
    "SerreReport",
    "serre_check",
    "PisResult",
    "purely_infinite_simple_check",
    "IbnResult",
    "ibn_check",
    "stably_free_check",
    "AlgebraKind",
    "Classification",
    "TheoremViolationError",
    "classify",
    "serre_report_to_json",
    "pis_to_json",
    "ibn_to_json",
    "classification_to_json",
]


class CheckStatus(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SerreVertexOutcome:
    """How one vertex fared against the order unit.

    ``multiplier`` is the k with vertex = k * unit when status is holds.
    ``reason`` explains a fails or unknown status: "no-k0-solution" when
    the class equation has no integer solution at all, "monoid-refuted"
    when the only possible multiplier was disproved by search,
    "search-budget" or "candidates-exhausted" for the unknown cases, and
    "not-examined" when another vertex already settled the question.
    """

    vertex: str
    status: CheckStatus
    multiplier: int | None = None
    reason: str | None = None
    certificate: Certificate | None = None
    candidates_tried: int = 0


@dataclass(frozen=True)
class SerreReport:
    status: CheckStatus
    outcomes: tuple[SerreVertexOutcome, ...]

    @property
    def holds(self) -> bool:
        return self.status is CheckStatus.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is CheckStatus.FAILS

    @property
    def failing_vertex(self) -> str | None:
        for out in self.outcomes:
            if out.status is CheckStatus.FAILS:
                return out.vertex
        return None

    def multipliers(self) -> dict[str, int]:
        return {
            out.vertex: out.multiplier
            for out in self.outcomes
            if out.multiplier is not None
        }


def serre_check(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> SerreReport:
    """Is every vertex a positive multiple of the order unit?

    Runs in two phases.  First each vertex class is solved against the
    unit class in K0; a vertex with no integer solution refutes the whole
    property without any search.  Only when every vertex passes that
    screen does the confluence search start trying candidate multipliers,
    vertex by vertex, stopping a vertex early on the first inconclusive
    search since later candidates are rarely cheaper.
    """
    k0 = k0_of_graph(g)
    candidates = [
        unit_multiple_candidates(k0, k0.vertex_class(v)) for v in g.vertices
    ]

    if any(not c.multipliers for c in candidates):
        outcomes = tuple(
            SerreVertexOutcome(v, CheckStatus.FAILS, reason="no-k0-solution")
            if not c.multipliers
            else SerreVertexOutcome(v, CheckStatus.UNKNOWN, reason="not-examined")
            for v, c in zip(g.vertices, candidates)
        )
        return SerreReport(CheckStatus.FAILS, outcomes)

    unit = unit_element(g)
    outcomes = []
    for v, cset in zip(g.vertices, candidates):
        elem = vertex_element(g, v)
        outcome = None
        for tried, k in enumerate(cset.multipliers, start=1):
            verdict = decide_equal(g, elem, unit.scaled(k), budget)
            if verdict.is_equal:
                outcome = SerreVertexOutcome(
                    v, CheckStatus.HOLDS, multiplier=k,
                    certificate=verdict.certificate, candidates_tried=tried,
                )
                break
            if verdict.is_unknown:
                outcome = SerreVertexOutcome(
                    v, CheckStatus.UNKNOWN, reason="search-budget",
                    candidates_tried=tried,
                )
                break
        if outcome is None:
            if cset.exhaustive:
                # every multiplier allowed by K0 was positively refuted
                outcome = SerreVertexOutcome(
                    v, CheckStatus.FAILS, reason="monoid-refuted",
                    candidates_tried=len(cset.multipliers),
                )
            else:
                outcome = SerreVertexOutcome(
                    v, CheckStatus.UNKNOWN, reason="candidates-exhausted",
                    candidates_tried=len(cset.multipliers),
                )
        outcomes.append(outcome)

    if any(out.status is CheckStatus.FAILS for out in outcomes):
        status = CheckStatus.FAILS
    elif any(out.status is CheckStatus.UNKNOWN for out in outcomes):
        status = CheckStatus.UNKNOWN
    else:
        status = CheckStatus.HOLDS
    return SerreReport(status, tuple(outcomes))


class PisResult(NamedTuple):
    """Purely-infinite-simple test.  ``reasons`` lists every failed
    condition; ``witness_subset`` is a nontrivial hereditary saturated
    subset and ``witness_cycle`` a cycle without an exit, when those are
    the obstructions."""

    holds: bool
    reasons: tuple[str, ...]
    witness_subset: frozenset[str] | None
    witness_cycle: tuple[str, ...] | None


def _no_exit_cycle(g: Graph) -> tuple[str, ...] | None:
    """A cycle admits no exit exactly when all its vertices have
    out-degree one, so hunt for a cycle in that functional subgraph."""
    nxt = {}
    for v in g.vertices:
        if g.out_degree(v) == 1:
            nxt[v] = g.edge_range(g.out_edge_ids(v)[0])
    state: dict[str, int] = {}
    for start in g.vertices:
        if start not in nxt or start in state:
            continue
        path = []
        w = start
        while w in nxt and w not in state:
            state[w] = 1
            path.append(w)
            w = nxt[w]
        if w in nxt and state.get(w) == 1:
            return tuple(path[path.index(w):])
        for p in path:
            state[p] = 2
    return None


def purely_infinite_simple_check(g: Graph) -> PisResult:
    """Three conditions: no nontrivial hereditary saturated vertex set,
    every cycle has an exit, and at least one cycle exists (together
    these also force every vertex to connect to a cycle)."""
    if g.n_vertices == 0:
        return PisResult(False, ("empty-graph",), None, None)
    reasons = []
    subset = nontrivial_hereditary_saturated(g)
    if subset is not None:
        reasons.append("nontrivial-hereditary-saturated-subset")
    cycle = _no_exit_cycle(g)
    if cycle is not None:
        reasons.append("cycle-without-exit")
    if not vertices_on_cycles(g):
        reasons.append("no-cycle")
    return PisResult(not reasons, tuple(reasons), subset, cycle)


class IbnResult(NamedTuple):
    """Invariant basis number probe.

    ``status`` holds means the algebra provably has IBN (the unit class
    has infinite order in K0, so no two distinct finite ranks can agree).
    ``status`` fails carries a witness pair (n, m) with n * unit equal to
    m * unit in the monoid.  ``unit_order`` is the K0 order of the unit.
    """

    status: CheckStatus
    witness: tuple[int, int] | None
    unit_order: int | None


def ibn_check(g: Graph, budget: SearchBudget = DEFAULT_BUDGET,
              max_rank: int = 16) -> IbnResult:
    """Search for two distinct multiples of the unit that coincide.

    K0 forces any colliding ranks to differ by a multiple of the unit
    order t, so only the pairs (n, n + t) for small n are tried.  An
    infinite order settles IBN positively with no search at all.
    """
    k0 = k0_of_graph(g)
    t = k0.unit_order()
    if t is None:
        return IbnResult(CheckStatus.HOLDS, None, None)
    unit = unit_element(g)
    for n in range(1, max_rank + 1):
        verdict = decide_equal(g, unit.scaled(n), unit.scaled(n + t), budget)
        if verdict.is_equal:
            return IbnResult(CheckStatus.FAILS, (n, n + t), t)
    return IbnResult(CheckStatus.UNKNOWN, None, t)


def stably_free_check(g: Graph) -> UnitGeneration:
    """Stable freeness test: every class in K0 is an integer multiple of
    the unit class exactly when the unit generates K0 as a group.  Always
    decidable; the multipliers witness the positive answer."""
    return unit_generates_k0(g)


class AlgebraKind(str, Enum):
    GROUND_FIELD = "ground-field"
    LAURENT = "laurent-polynomials"
    LEAVITT = "leavitt-algebra"
    NOT_SERRE = "serre-fails"
    UNDECIDED = "undecided"


class TheoremViolationError(RuntimeError):
    """The search reached a verdict that contradicts an invariant the
    structure theory guarantees.  Either finding is a bug; the evidence
    payload records both sides so the contradiction can be replayed."""

    def __init__(self, message: str, evidence: dict):
        super().__init__(message)
        self.evidence = evidence


@dataclass(frozen=True)
class Classification:
    """Outcome of the pipeline.  ``loops`` is the n with the algebra
    isomorphic to the n-loop rose algebra L_n (0 and 1 meaning the ground
    field and the Laurent polynomials).  ``conjectural`` marks labels
    inferred from invariants rather than read off a one-vertex graph."""

    kind: AlgebraKind
    label: str | None
    loops: int | None
    conjectural: bool
    serre: SerreReport
    pis: PisResult
    k0: K0Data


def classify(g: Graph, budget: SearchBudget = DEFAULT_BUDGET,
             serre_report: SerreReport | None = None) -> Classification:
    """Name the algebra presented by the graph, as far as the evidence goes.

    Vertices that are not multiples of the unit end the story (kind
    serre-fails); inconclusive searches give kind undecided.  A one-vertex
    graph with the property is literally a rose and gets its exact label.
    A larger graph must then be purely infinite simple with finite cyclic
    K0 generated by the unit; any violation of that raises
    TheoremViolationError, and otherwise the torsion order d names the
    algebra L_{d+1}, conjecturally.

    Pass ``serre_report`` to reuse an already computed unit comparison.
    """
    if g.n_vertices == 0:
        raise InvalidParameterError("cannot classify the empty graph")
    serre = serre_report if serre_report is not None else serre_check(g, budget)
    pis = purely_infinite_simple_check(g)
    k0 = k0_of_graph(g)

    if serre.status is CheckStatus.FAILS:
        return Classification(AlgebraKind.NOT_SERRE, None, None, False, serre, pis, k0)
    if serre.status is CheckStatus.UNKNOWN:
        return Classification(AlgebraKind.UNDECIDED, None, None, False, serre, pis, k0)

    if g.n_vertices == 1:
        loops = g.out_degree(g.vertices[0])
        if loops == 0:
            return Classification(AlgebraKind.GROUND_FIELD, "k", 0, False, serre, pis, k0)
        if loops == 1:
            return Classification(AlgebraKind.LAURENT, "k[x, x^-1]", 1, False, serre, pis, k0)
        return Classification(
            AlgebraKind.LEAVITT, f"L_{loops}", loops, False, serre, pis, k0
        )

    generation = unit_generates_k0(g)
    consistent = (
        pis.holds
        and k0.free_rank == 0
        and len(k0.torsion_divisors) <= 1
        and generation.generates
    )
    if not consistent:
        raise TheoremViolationError(
            "every vertex is a multiple of the unit, yet the invariants "
            "do not match a purely infinite simple algebra with cyclic K0",
            evidence={
                "pis": pis_to_json(pis),
                "k0": k0_to_json(k0),
                "unit_generates": generation.generates,
                "serre": serre_report_to_json(serre),
            },
        )
    d = k0.torsion_divisors[0] if k0.torsion_divisors else 1
    return Classification(
        AlgebraKind.LEAVITT, f"L_{d + 1}", d + 1, True, serre, pis, k0
    )


# -- JSON views ---------------------------------------------------------------


def serre_report_to_json(report: SerreReport) -> dict:
    vertices = []
    for out in report.outcomes:
        entry: dict = {"vertex": out.vertex, "status": out.status.value}
        if out.multiplier is not None:
            entry["multiplier"] = out.multiplier
        if out.reason is not None:
            entry["reason"] = out.reason
        if out.certificate is not None:
            entry["steps"] = [
                len(out.certificate.left_steps),
                len(out.certificate.right_steps),
            ]
        if out.candidates_tried:
            entry["candidates_tried"] = out.candidates_tried
        vertices.append(entry)
    return {"status": report.status.value, "vertices": vertices}


def pis_to_json(result: PisResult) -> dict:
    return {
        "holds": result.holds,
        "reasons": list(result.reasons),
        "witness_subset": sorted(result.witness_subset)
        if result.witness_subset is not None
        else None,
        "witness_cycle": list(result.witness_cycle)
        if result.witness_cycle is not None
        else None,
    }


def ibn_to_json(result: IbnResult) -> dict:
    return {
        "status": result.status.value,
        "witness": list(result.witness) if result.witness else None,
        "unit_order": result.unit_order,
    }


def classification_to_json(c: Classification) -> dict:
    return {
        "kind": c.kind.value,
        "label": c.label,
        "loops": c.loops,
        "conjectural": c.conjectural,
        "serre": serre_report_to_json(c.serre),
        "pis": pis_to_json(c.pis),
        "k0": k0_to_json(c.k0),
    }
