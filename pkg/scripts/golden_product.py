#!/usr/bin/env python3
"""Walk through the Gr(4,9) anchor product three independent ways.

Computes sigma_{5443} * sigma_{5441}: once with the rim-hook oracle,
once reading off the minimal q-power from the overlap diagonal count,
and once from the chain search on the Bruhat graph — then prints a
witness chain realizing the minimal degree.
"""

import argparse

from qschub.grassmann import (
    coset_of_partition,
    format_partition,
    grassmannian_parabolic,
    min_degree_diagonal,
    partition_of_coset,
    parse_partition,
    qproduct_grassmann,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--lam", default="5,4,4,3")
    ap.add_argument("--mu", default="5,4,4,1")
    args = ap.parse_args()

    k, n = args.k, args.n
    lam = parse_partition(args.lam)
    mu = parse_partition(args.mu)

    print(f"instance: Gr({k},{n})")
    print(f"sigma[{format_partition(lam)}] * sigma[{format_partition(mu)}]:")
    product = qproduct_grassmann(k, n, lam, mu)
    for (d, nu), coeff in sorted(product.items()):
        head = f"{coeff} * " if coeff != 1 else ""
        print(f"  {head}q^{d} * sigma[{format_partition(nu)}]")

    dmin = min(d for d, _ in product)
    print(f"\nminimal q-power in the product: {dmin}")
    print(f"overlap diagonal count:          {min_degree_diagonal(k, n, lam, mu)}")

    P = grassmannian_parabolic(k, n)
    u = coset_of_partition(P, lam)
    v = coset_of_partition(P, mu)
    frontier, witnesses = P.min_chain_witnesses(u, v)
    print(f"chain-search frontier:           {frontier[0][0]}")

    w = witnesses[0]
    print("\nwitness chain (nodes as partitions, edges with degree):")
    for i, node in enumerate(w.nodes):
        print(f"  sigma[{format_partition(partition_of_coset(P, node))}]")
        if i < len(w.edge_degrees):
            print(f"    --- degree {w.edge_degrees[i][0]} ---")


if __name__ == "__main__":
    main()
