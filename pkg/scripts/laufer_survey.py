"""k = -Z^2 of the fundamental cycle over small negative definite graphs."""

import argparse
import itertools
from collections import Counter

import networkx as nx

from ellfib.fibre import IntersectionMatrix, laufer_fundamental_cycle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--diagonals", default="-2,-3")
    args = ap.parse_args()
    diagonals = [int(x) for x in args.diagonals.split(",")]
    counts = Counter()
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if not 0 < n <= args.max_vertices or not nx.is_connected(g):
            continue
        for diag in itertools.product(diagonals, repeat=n):
            rows = [[diag[i] if i == j else int(g.has_edge(i, j)) for j in range(n)] for i in range(n)]
            m = IntersectionMatrix(tuple(map(tuple, rows)))
            if m.is_negative_definite():
                counts[(n, laufer_fundamental_cycle(m)[1])] += 1
    print("vertices  k  graphs")
    for (n, k), c in sorted(counts.items()):
        print(f"{n:8d} {k:2d}  {c}")


if __name__ == "__main__":
    main()
