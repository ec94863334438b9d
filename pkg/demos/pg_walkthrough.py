"""Walk through the Pg(n) search for one n.

For each surplus d the search enumerates triangulations with the feasible
degree specs, looks for normalizing edge sets and validates the duals.

    python3 demos/pg_walkthrough.py --n 7
"""

import argparse
from collections import Counter

from pentagulation.pg_search import compute_pg, feasible_degree_specs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--max-surplus", type=int, default=3)
    args = ap.parse_args()

    for d in range(args.max_surplus + 1):
        specs = feasible_degree_specs(args.n, d)
        print(f"surplus {d}: {len(specs)} degree specs")

    res = compute_pg(args.n, args.max_surplus, on_entry=lambda e: print(" ", e))
    print(res)
    for rec in res.classes:
        sizes = dict(sorted(Counter(rec.graph.face_sizes).items()))
        print(f"  removed={rec.removed_edges} V={rec.graph.vertex_count} face sizes={sizes}")


if __name__ == "__main__":
    main()
