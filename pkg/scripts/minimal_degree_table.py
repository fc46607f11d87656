#!/usr/bin/env python3
"""Sweep an instance and tabulate minimal q-degrees: chains vs products.

For every pair of Schubert classes, print the Pareto frontier of chain
degrees next to the minimal degrees occurring in the quantum product,
and count agreements.  Flag instances use the divisor-recursion product;
Grassmannian instances use the rim-hook oracle.

Examples:
    python scripts/minimal_degree_table.py A2 flag
    python scripts/minimal_degree_table.py gr 2 4 --only-disagreements
"""

import argparse
import sys

from qschub.checks import build_instance
from qschub.grassmann import (
    format_partition,
    partition_of_coset,
    qproduct_grassmann_cosets,
)
from qschub.quantum import min_occurring_degrees, qproduct_GB
from qschub.weyl import format_word


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="+", help='e.g. "A2 flag" or "gr 2 4"')
    ap.add_argument("--only-disagreements", action="store_true")
    ap.add_argument("--max-group-order", type=int, default=240)
    args = ap.parse_args()

    label, P = build_instance(tuple(args.instance), max_elements=10**6)
    grassmannian = P.grassmannian_shape() is not None
    if not grassmannian and P.delta_P:
        sys.exit("only full flags and Grassmannians have a full-product engine")

    def prod(u, v):
        if grassmannian:
            return qproduct_grassmann_cosets(P, u, v)
        return qproduct_GB(P, u, v, max_group_order=args.max_group_order)

    def show(u):
        if grassmannian:
            return format_partition(partition_of_coset(P, u))
        return format_word(u.min_rep.word())

    cosets = P.cosets()
    agreements = 0
    total = 0
    print(f"# instance: {label} ({len(cosets)} classes)")
    for u in cosets:
        for v in cosets:
            total += 1
            frontier = set(P.min_chain_degrees(u, v))
            minima = set(min_occurring_degrees(prod(u, v)))
            same = frontier == minima
            agreements += same
            if args.only_disagreements and same:
                continue
            mark = "==" if same else "!!"
            fr = sorted(frontier)
            print(
                f"{show(u):>14} , {show(v):<14}"
                f" chains={fr} product-min={sorted(minima)} {mark}"
            )
    print(f"# {agreements}/{total} pairs agree")
    if agreements != total:
        sys.exit(1)


if __name__ == "__main__":
    main()
