"""Exact symbolic computation in graph monoids.

A finite directed graph presents a commutative monoid: one generator per
vertex, and each non-sink equals the multiset of its edge ranges.  This
package decides equalities in that monoid by bidirectional rewrite
search, computes the K0 group of the presentation by exact Smith normal
form, refines both to the graded (shift-carrying) monoid, and combines
everything into a classification pipeline for the algebras these graphs
present.  Everything is integer arithmetic; every Equal verdict carries
a replayable certificate and every Unequal verdict carries a witness.
"""

from .classify import (
    AlgebraKind,
    CheckStatus,
    Classification,
    IbnResult,
    PisResult,
    SerreReport,
    SerreVertexOutcome,
    TheoremViolationError,
    classification_to_json,
    classify,
    ibn_check,
    ibn_to_json,
    pis_to_json,
    purely_infinite_simple_check,
    serre_check,
    serre_report_to_json,
    stably_free_check,
)
from .fixtures import FIXTURE_DESCRIPTIONS, fixture_graph, fixture_names
from .graded import (
    GRADED_DEFAULT_BUDGET,
    GradedElement,
    GradedSerreReport,
    GradedSerreVertexOutcome,
    forget_grading,
    format_graded_element,
    graded_decide_equal,
    graded_one_step,
    graded_serre_check,
    graded_serre_report_to_json,
    graded_vertex,
    make_graded_element,
    parse_graded_element,
    replay_graded_certificate,
    shift_action,
    unit_at_shift,
    zero_graded_element,
)
from .graphs import (
    DanglingEdgeError,
    DuplicateVertexError,
    Graph,
    GraphError,
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
from .ktheory import (
    CandidateSet,
    IntMatrix,
    K0Data,
    SmithDecomposition,
    UnitGeneration,
    class_in_k0,
    class_of_vector,
    det,
    identity_matrix,
    k0_of_graph,
    k0_to_json,
    mat_mul,
    mat_vec,
    relation_matrix,
    smith_normal_form,
    unit_generates_k0,
    unit_multiple_candidates,
)
from .monoid import (
    CertificateReplayError,
    MonoidElement,
    MonoidEnumeration,
    ZeroElementError,
    decide_equal,
    enumerate_monoid,
    format_element,
    make_element,
    one_step_rewrites,
    parse_element,
    reachable,
    replay_certificate,
    unit_element,
    vertex_element,
    zero_element,
)
from .search import (
    DEFAULT_BUDGET,
    Certificate,
    SearchBudget,
    SearchStats,
    Verdict,
    VerdictKind,
    Witness,
)

__version__ = "0.1.0"
