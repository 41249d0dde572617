"""Exact K0 invariants of a graph via integer Smith normal form.

The group completion of a graph monoid is the cokernel of the relation
matrix whose columns say "this regular vertex equals the multiset of its
edge ranges".  Putting that matrix into Smith normal form with unimodular
transforms turns the cokernel into an explicit direct sum of cyclic
groups and gives coordinates for every vertex class and for the order
unit.  All arithmetic is over arbitrary-precision Python integers; no
floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import NamedTuple

from .graphs import Graph, InvalidParameterError

__all__ = [
    "IntMatrix",
    "identity_matrix",
    "mat_mul",
    "mat_vec",
    "det",
    "SmithDecomposition",
    "smith_normal_form",
    "relation_matrix",
    "K0Data",
    "k0_of_graph",
    "class_in_k0",
    "class_of_vector",
    "CandidateSet",
    "unit_multiple_candidates",
    "UnitGeneration",
    "unit_generates_k0",
    "k0_to_json",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; rows are tuples.  Zero-row and zero-column
    shapes are legal, so ``ncols`` is stored explicitly."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int = -1

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise InvalidParameterError("ragged matrix rows")
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)


def identity_matrix(n: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.ncols != b.nrows:
        raise InvalidParameterError("matrix shapes do not compose")
    bt = list(zip(*b.entries)) if b.entries else [()] * b.ncols
    rows = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a.entries
    )
    return IntMatrix(rows, b.ncols)


def mat_vec(a: IntMatrix, vec) -> tuple[int, ...]:
    if len(vec) != a.ncols:
        raise InvalidParameterError("vector length does not match matrix")
    return tuple(sum(x * y for x, y in zip(row, vec)) for row in a.entries)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = m.nrows
    if n != m.ncols:
        raise InvalidParameterError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SmithDecomposition(NamedTuple):
    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s.entries[i][i] for i in range(min(self.s.nrows, self.s.ncols)))


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms: U * M * V = S exactly.

    S is diagonal with nonnegative entries forming a divisibility chain
    d1 | d2 | ..., and U, V are unimodular.  Signs are normalized so the
    first nonzero entry of every row of U is positive, which pins down
    the cokernel coordinates produced downstream.
    """
    nr, nc = m.nrows, m.ncols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_sub(dst: int, src: int, q: int) -> None:
        arow, srow = a[dst], a[src]
        for k in range(nc):
            arow[k] -= q * srow[k]
        urow, usrc = u[dst], u[src]
        for k in range(nr):
            urow[k] -= q * usrc[k]

    def col_sub(dst: int, src: int, q: int) -> None:
        for i in range(nr):
            a[i][dst] -= q * a[i][src]
        for i in range(nc):
            v[i][dst] -= q * v[i][src]

    def min_nonzero(t: int):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nr, nc):
        pos = min_nonzero(t)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            a[i0], a[t] = a[t], a[i0]
            u[i0], u[t] = u[t], u[i0]
        if j0 != t:
            for row in a:
                row[j0], row[t] = row[t], row[j0]
            for row in v:
                row[j0], row[t] = row[t], row[j0]
        pivot = a[t][t]
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t]:
                q = a[i][t] // pivot
                if q:
                    row_sub(i, t, q)
                if a[i][t]:
                    dirty = True  # remainder strictly smaller than the pivot
        for j in range(t + 1, nc):
            if a[t][j]:
                q = a[t][j] // pivot
                if q:
                    col_sub(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide everything that remains, or the divisor chain breaks
        violator = None
        for i in range(t + 1, nr):
            if any(a[i][j] % pivot for j in range(t + 1, nc)):
                violator = i
                break
        if violator is not None:
            row_sub(t, violator, -1)  # pulls the bad row up; pivot survives, loop shrinks it
            continue
        t += 1

    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    # canonical signs: first nonzero of each U row positive (compensated in V,
    # which leaves S untouched because S is diagonal)
    for i in range(nr):
        lead = next((x for x in u[i] if x), 0)
        if lead < 0:
            u[i] = [-x for x in u[i]]
            if i < nc:
                for row in v:
                    row[i] = -row[i]
            if i < min(nr, nc):
                a[i] = [-x for x in a[i]]
                for r2 in range(nr):
                    a[r2][i] = -a[r2][i]

    return SmithDecomposition(
        s=IntMatrix(tuple(tuple(row) for row in a), nc),
        u=IntMatrix(tuple(tuple(row) for row in u), nr),
        v=IntMatrix(tuple(tuple(row) for row in v), nc),
    )


def relation_matrix(g: Graph) -> IntMatrix:
    """Rows indexed by all vertices, one column per regular vertex:
    indicator of the vertex minus the multiset of its edge ranges.

    For a graph without sinks this is I - A^T for the adjacency matrix A.
    """
    n = g.n_vertices
    regular = [g.index(v) for v in g.regular_vertices()]
    cols = []
    for j in regular:
        col = [0] * n
        col[j] += 1
        for r in g._out_range_indices[j]:
            col[r] -= 1
        cols.append(col)
    rows = tuple(tuple(col[i] for col in cols) for i in range(n))
    return IntMatrix(rows, len(regular))


@dataclass(frozen=True)
class K0Data:
    """The cokernel presentation of K0 with explicit coordinates.

    Coordinates list torsion components first (one per divisor, reduced
    modulo it) and then the free components.  ``vertex_classes`` follows
    the canonical vertex order; ``unit_class`` is the class of the sum of
    all vertices.
    """

    vertices: tuple[str, ...]
    free_rank: int
    torsion_divisors: tuple[int, ...]
    vertex_classes: tuple[tuple[str, tuple[int, ...]], ...]
    unit_class: tuple[int, ...]
    _transform: tuple[tuple[int, ...], ...]
    _torsion_positions: tuple[tuple[int, int], ...]
    _free_positions: tuple[int, ...]

    def vertex_class(self, vertex: str) -> tuple[int, ...]:
        for v, cls in self.vertex_classes:
            if v == vertex:
                return cls
        raise InvalidParameterError(f"no vertex {vertex!r} in this K0 presentation")

    def class_of_coefficients(self, vec) -> tuple[int, ...]:
        if len(vec) != len(self.vertices):
            raise InvalidParameterError("coefficient vector length mismatch")
        image = [sum(x * y for x, y in zip(row, vec)) for row in self._transform]
        tor = tuple(image[i] % d for i, d in self._torsion_positions)
        free = tuple(image[i] for i in self._free_positions)
        return tor + free

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_divisors

    def group_order(self) -> int | None:
        """Order of the group, None when infinite."""
        if self.free_rank:
            return None
        order = 1
        for d in self.torsion_divisors:
            order *= d
        return order

    def unit_order(self) -> int | None:
        """Additive order of the unit class, None when infinite."""
        nt = len(self.torsion_divisors)
        if any(self.unit_class[nt:]):
            return None
        order = 1
        for c, d in zip(self.unit_class[:nt], self.torsion_divisors):
            order = lcm(order, d // gcd(c, d))
        return order


@lru_cache(maxsize=None)
def k0_of_graph(g: Graph) -> K0Data:
    """Compute the K0 presentation of a graph, cached per graph."""
    m = relation_matrix(g)
    dec = smith_normal_form(m)
    diag = dec.diagonal
    torsion_positions = tuple((i, d) for i, d in enumerate(diag) if d >= 2)
    free_positions = tuple(
        i for i in range(m.nrows) if i >= len(diag) or diag[i] == 0
    )

    def project(vec: tuple[int, ...]) -> tuple[int, ...]:
        image = [sum(x * y for x, y in zip(row, vec)) for row in dec.u.entries]
        tor = tuple(image[i] % d for i, d in torsion_positions)
        free = tuple(image[i] for i in free_positions)
        return tor + free

    n = m.nrows
    classes = tuple(
        (v, project(tuple(1 if i == j else 0 for i in range(n))))
        for j, v in enumerate(g.vertices)
    )
    return K0Data(
        vertices=g.vertices,
        free_rank=len(free_positions),
        torsion_divisors=tuple(d for _, d in torsion_positions),
        vertex_classes=classes,
        unit_class=project((1,) * n),
        _transform=dec.u.entries,
        _torsion_positions=torsion_positions,
        _free_positions=free_positions,
    )


def class_in_k0(g: Graph, element) -> tuple[int, ...]:
    """K0 class coordinates of a monoid element (anything with .dense())."""
    return k0_of_graph(g).class_of_coefficients(element.dense())


def class_of_vector(g: Graph, vec) -> tuple[int, ...]:
    return k0_of_graph(g).class_of_coefficients(tuple(vec))


# -- solving  class(x) = k * unit_class  over the cokernel -------------------


def _solve_congruence(a: int, b: int, d: int) -> tuple[int, int] | None:
    """Solutions of a*k = b (mod d) as (residue, modulus), or None."""
    g = gcd(a, d)
    if b % g:
        return None
    dd = d // g
    if dd == 1:
        return 0, 1
    inv = pow((a // g) % dd, -1, dd)
    return ((b // g) * inv) % dd, dd


def _merge_congruences(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    if m2 // g == 1:
        return r1 % l, l
    t = ((r2 - r1) // g * pow((m1 // g) % (m2 // g), -1, m2 // g)) % (m2 // g)
    return (r1 + m1 * t) % l, l


class CandidateSet(NamedTuple):
    """Integer multipliers satisfying the K0 class equation.

    ``exhaustive`` is True when the listed candidates are provably all of
    them (a unique pinned solution, or no solution at all); in the torsion
    case the solution set is an arithmetic progression and only its first
    ``cap`` members are listed.
    """

    multipliers: tuple[int, ...]
    exhaustive: bool


def unit_multiple_candidates(k0: K0Data, target, *, minimum: int = 1,
                             cap: int = 64) -> CandidateSet:
    """All k >= minimum with target = k * unit_class in K0, capped.

    The free coordinates pin k to at most one rational value; the torsion
    coordinates are linear congruences merged by CRT.  The combined
    modulus equals the additive order of the unit class, so the returned
    progression steps through one candidate per residue as the design
    requires.
    """
    nt = len(k0.torsion_divisors)
    tor_t, free_t = target[:nt], target[nt:]
    tor_u, free_u = k0.unit_class[:nt], k0.unit_class[nt:]

    pinned: int | None = None
    for pt, pu in zip(free_t, free_u):
        if pu == 0:
            if pt != 0:
                return CandidateSet((), True)
        else:
            if pt % pu:
                return CandidateSet((), True)
            k = pt // pu
            if pinned is None:
                pinned = k
            elif pinned != k:
                return CandidateSet((), True)

    congruence = (0, 1)
    for pt, pu, d in zip(tor_t, tor_u, k0.torsion_divisors):
        sol = _solve_congruence(pu, pt, d)
        if sol is None:
            return CandidateSet((), True)
        congruence = _merge_congruences(*congruence, *sol)
        if congruence is None:
            return CandidateSet((), True)

    r, mod = congruence
    if pinned is not None:
        ok = pinned >= minimum and (pinned - r) % mod == 0
        return CandidateSet((pinned,) if ok else (), True)
    first = r if r >= minimum else r + ((minimum - r + mod - 1) // mod) * mod
    return CandidateSet(tuple(first + j * mod for j in range(cap)), False)


class UnitGeneration(NamedTuple):
    generates: bool
    multipliers: dict[str, int] | None


def unit_generates_k0(g: Graph) -> UnitGeneration:
    """Does the unit class generate K0 as a group?

    True exactly when K0 is cyclic with the unit a generator: trivial
    group, one torsion divisor with the unit coordinate coprime to it, or
    free rank one with unit coordinate +-1.  When true, each vertex gets
    an integer multiplier witnessing its class as a multiple of the unit.
    """
    k0 = k0_of_graph(g)
    nt = len(k0.torsion_divisors)
    nf = k0.free_rank

    if nt == 0 and nf == 0:
        return UnitGeneration(True, {v: 0 for v in g.vertices})
    if nt == 1 and nf == 0:
        d = k0.torsion_divisors[0]
        c = k0.unit_class[0]
        if gcd(c, d) != 1:
            return UnitGeneration(False, None)
        inv = pow(c % d, -1, d)
        return UnitGeneration(True, {
            v: (cls[0] * inv) % d for v, cls in k0.vertex_classes
        })
    if nt == 0 and nf == 1:
        c = k0.unit_class[0]
        if c not in (1, -1):
            return UnitGeneration(False, None)
        return UnitGeneration(True, {
            v: cls[0] * c for v, cls in k0.vertex_classes
        })
    return UnitGeneration(False, None)


def k0_to_json(k0: K0Data) -> dict:
    return {
        "free_rank": k0.free_rank,
        "torsion": list(k0.torsion_divisors),
        "unit": list(k0.unit_class),
        "vertices": {v: list(cls) for v, cls in k0.vertex_classes},
    }
