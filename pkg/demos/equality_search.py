"""Walkthrough of the equality engine on graph monoids.

Every decision is exact: a positive answer comes with a replayable
rewrite certificate, a negative one with a finite witness (a K0 class
mismatch or two disjoint completed rewrite cones), and anything else is
reported as unknown together with the search statistics.

Usage:
    python3 equality_search.py
"""

from leavitt_lab import (
    DEFAULT_BUDGET,
    decide_equal,
    fixture_graph,
    format_element,
    parse_element,
    replay_certificate,
)


def show(g, left_text, right_text, budget=DEFAULT_BUDGET):
    a = parse_element(g, left_text)
    b = parse_element(g, right_text)
    verdict = decide_equal(g, a, b, budget)
    print(f"  {left_text}  vs  {right_text}  ->  {verdict.kind.value}")
    if verdict.is_equal:
        cert = verdict.certificate
        print(f"    common form: {cert.meet}")
        print(f"    steps: {len(cert.left_steps)} left, {len(cert.right_steps)} right")
        # anyone can re-check the certificate without trusting the search
        assert replay_certificate(g, a, cert.left_steps) == cert.meet
        assert replay_certificate(g, b, cert.right_steps) == cert.meet
    elif verdict.is_unequal:
        print(f"    witness: {verdict.witness.kind} {verdict.witness.detail}")
    else:
        stats = verdict.stats
        print(f"    explored {stats.visited_left + stats.visited_right} states")


def main():
    g = fixture_graph("e2-minus")
    print("graph e2-minus: two loops at u, a 2-cycle u<->v, v<->w, loops at v, w")
    print("every vertex collapses onto the unit u + v + w:")
    show(g, "u", "u + v + w")
    show(g, "w", "u + v + w")
    print()

    print("vertex against its own double (the free module of rank 2):")
    show(g, "u", "2u")
    print()

    rose = fixture_graph("rose4")
    print("rose4 (one vertex, four loops): K0 = Z/3 separates u from 2u")
    show(rose, "u", "2u")
    show(rose, "u", "4u")
    print()

    print("formatted canonical forms:")
    el = parse_element(g, "w + 2u + v + u")
    print(f"  'w + 2u + v + u' parses to {format_element(el)}")


if __name__ == "__main__":
    main()
