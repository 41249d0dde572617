"""Tour of the K0 invariants behind the engine's refutations.

K0 of a graph monoid is the cokernel of an integer relation matrix,
computed exactly by Smith normal form.  The invariants printed here are
the ones the equality search and the classification pipeline consult:
the group, the class of the unit, and the class of each vertex.

Usage:
    python3 k0_invariants.py
"""

from leavitt_lab import (
    fixture_graph,
    fixture_names,
    k0_of_graph,
    relation_matrix,
    smith_normal_form,
    unit_multiple_candidates,
)


def group_text(k0):
    parts = [f"Z/{d}" for d in k0.torsion_divisors] + ["Z"] * k0.free_rank
    return " x ".join(parts) if parts else "trivial"


def main():
    print(f"named fixture families: {', '.join(fixture_names())}")
    names = ["e2", "e2-minus", "ex34-1", "ex34-2", "ex36",
             "rose1", "rose2", "rose5", "matrix-3-5", "matrix-2-5"]

    print(f"{'fixture':<12} {'K0':<10} {'unit':<8} vertex classes")
    for name in names:
        g = fixture_graph(name)
        k0 = k0_of_graph(g)
        classes = ", ".join(f"{v}={list(c)}" for v, c in k0.vertex_classes)
        print(f"{name:<12} {group_text(k0):<10} {str(list(k0.unit_class)):<8} {classes}")
    print()

    g = fixture_graph("ex34-1")
    m = relation_matrix(g)
    s, _, _ = smith_normal_form(m)
    print("ex34-1 relation matrix rows (one per vertex):")
    for v, row in zip(g.vertices, m.entries):
        print(f"  {v}: {list(row)}")
    print(f"smith diagonal: {[s.entries[i][i] for i in range(min(s.nrows, s.ncols))]}")
    print()

    print("which multiples of the unit can a vertex be?")
    for name in ("rose5", "matrix-3-5", "ex34-1"):
        g = fixture_graph(name)
        k0 = k0_of_graph(g)
        for v in g.vertices:
            cands = unit_multiple_candidates(k0, k0.vertex_class(v))
            head = list(cands.multipliers[:4])
            tail = "" if cands.exhaustive else ", ..."
            print(f"  {name}: [{v}] = k [unit] needs k in {head}{tail}")


if __name__ == "__main__":
    main()
