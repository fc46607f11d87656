#!/usr/bin/env python3
"""Census of a quotient's adjacency graph: node/edge counts, edge degrees.

On Gr(k,n) the graph is the Johnson graph J(n,k) with every edge of
degree 1; on other quotients several distinct edge degrees occur.
Optionally emits a DOT rendering on stdout.

Examples:
    python scripts/adjacency_census.py gr 2 5
    python scripts/adjacency_census.py G2 flag --dot > g2.dot
"""

import argparse
from collections import Counter

from qschub.checks import build_instance
from qschub.grassmann import format_partition, partition_of_coset
from qschub.weyl import format_word


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="+", help='e.g. "gr 2 5" or "G2 flag"')
    ap.add_argument("--dot", action="store_true", help="emit DOT instead of the census")
    args = ap.parse_args()

    label, P = build_instance(tuple(args.instance), max_elements=10**6)
    g = P.graph()
    grassmannian = P.grassmannian_shape() is not None

    def name(i):
        u = g.nodes[i]
        if grassmannian:
            return format_partition(partition_of_coset(P, u))
        return format_word(u.min_rep.word())

    if args.dot:
        print(f'graph "{label}" {{')
        for i in range(g.node_count):
            print(f'  n{i} [label="{name(i)}"];')
        for (i, j), (_root, deg) in sorted(g.edges.items()):
            print(f'  n{i} -- n{j} [label="{",".join(map(str, deg))}"];')
        print("}")
        return

    print(f"instance: {label}")
    print(f"nodes:    {g.node_count}")
    print(f"edges:    {g.edge_count}")

    valences = Counter(len(g.adj[i]) for i in range(g.node_count))
    print("valences: " + ", ".join(f"{v} (x{c})" for v, c in sorted(valences.items())))

    degree_census = Counter(deg for (_r, deg) in g.edges.values())
    print("edge degrees:")
    for deg, count in sorted(degree_census.items()):
        print(f"  {deg}: {count} edges")

    by_length = Counter(u.length for u in g.nodes)
    print("classes by length: " + ", ".join(
        f"{l}:{c}" for l, c in sorted(by_length.items())
    ))


if __name__ == "__main__":
    main()
