#!/usr/bin/env python3
"""Walk the small unitrivalent multigraphs and report which ones orient.

Enumerates every connected multigraph with at most --tmax trivalent
vertices (leaves filled in to make every vertex degree 1 or 3), tries to
direct each so that every pendant edge points into its leaf and no
trivalent vertex is a source, and tallies the results against the
loop-rank criterion: a graph orients exactly when it has a cycle.  With --dot the first orientable
example of each trivalent size is rendered as Graphviz input.

Usage: python3 scripts/orientation_demo.py [--tmax T] [--dot]
"""

import argparse
import sys
from collections import Counter

from jfilt.errors import NotOrientable
from jfilt.orientation import (
    count_valid_orientations,
    enumerate_unitrivalent,
    orient,
    oriented_dot,
)


def cycle_rank(g) -> int:
    return len(g.edges) - len(g.vertices) + 1  # connected by construction


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tmax", type=int, default=4)
    parser.add_argument("--dot", action="store_true", help="print example DOT renderings")
    args = parser.parse_args()

    graphs = enumerate_unitrivalent(args.tmax)
    tally = Counter()
    shown = set()
    mismatches = 0
    for g in graphs:
        t = sum(1 for _, arity in g.vertices if arity == 3)
        try:
            orientation = orient(g)
            orientable = True
        except NotOrientable:
            orientation = None
            orientable = False
        if orientable != (cycle_rank(g) >= 1):
            mismatches += 1
        if orientable and count_valid_orientations(g) == 0:
            mismatches += 1
        tally[(t, orientable)] += 1
        if args.dot and orientable and t not in shown:
            shown.add(t)
            print("# %d trivalent vertices, %d edges" % (t, len(g.edges)))
            print(oriented_dot(g, orientation))
            print()

    print("%10s %12s %14s" % ("trivalent", "orientable", "not orientable"))
    for t in sorted({t for t, _ in tally}):
        print("%10d %12d %14d" % (t, tally[(t, True)], tally[(t, False)]))
    total = sum(tally.values())
    orientable_total = sum(v for (_, ok), v in tally.items() if ok)
    print()
    print("%d graphs, %d orientable" % (total, orientable_total))
    if mismatches:
        print("%d graphs disagree with the cycle-rank criterion" % mismatches)
        return 1
    print("every graph matches the cycle-rank criterion (orientable iff it has a cycle)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
