"""The graded monoid: shifts, translations, and unit decompositions.

Graded generators carry an integer shift, and each rewrite moves the
rewritten vertex's edge ranges one shift up.  The extra bookkeeping
separates elements the ungraded monoid identifies, and the graded unit
comparison asks for sums of unit translates instead of plain multiples.

Usage:
    python3 graded_walkthrough.py
"""

from leavitt_lab import (
    decide_equal,
    fixture_graph,
    forget_grading,
    graded_decide_equal,
    graded_one_step,
    graded_serre_check,
    parse_graded_element,
    shift_action,
    unit_at_shift,
)


def show(g, left_text, right_text):
    a = parse_graded_element(g, left_text)
    b = parse_graded_element(g, right_text)
    verdict = graded_decide_equal(g, a, b)
    print(f"  {left_text}  vs  {right_text}  ->  {verdict.kind.value}")
    if verdict.is_equal:
        cert = verdict.certificate
        print(f"    common form: {cert.meet} "
              f"({len(cert.left_steps)} left, {len(cert.right_steps)} right steps)")
    elif verdict.is_unequal:
        print(f"    witness: {verdict.witness.kind}")


def main():
    g = fixture_graph("ex36")
    print("ex36: loop at u, edge u -> v, edge v -> u")
    u0 = parse_graded_element(g, "u")
    print(f"  one step from u(0): {[str(x) for x in graded_one_step(g, u0)]}")
    print(f"  unit at shift 1: {unit_at_shift(g, 1)}")
    show(g, "u", "u(1) + v(1)")
    show(g, "v", "u(2) + v(2)")
    print()

    print("the grading separates what forgetting identifies:")
    show(g, "u", "u(0) + v(0)")
    a = parse_graded_element(g, "u")
    b = parse_graded_element(g, "u(0) + v(0)")
    ungraded = decide_equal(g, forget_grading(g, a), forget_grading(g, b))
    print(f"  ungraded images u vs u + v: {ungraded.kind.value}")
    print()

    rose = fixture_graph("rose1")
    print("one loop only: the relation is exactly u(i) = u(i+1)")
    show(rose, "u", "u(1)")
    moved = shift_action(5, parse_graded_element(rose, "u"))
    print(f"  shift_action(5, u(0)) = {moved}")
    print()

    print("graded unit comparison on ex36, window [-4, 4]:")
    report = graded_serre_check(g, window=(-4, 4))
    print(f"  status: {report.status.value}")
    for out in report.outcomes:
        translates = " + ".join(f"1({s})" for s in out.shifts)
        print(f"  {out.vertex}(0) = {translates}   "
              f"(certificate: {len(out.certificate.left_steps)} steps, "
              f"{out.candidates_tried} candidates tried)")


if __name__ == "__main__":
    main()
