"""Write SVG drawings of minimal pentagulations and of G_13.

    python3 demos/draw_minimal.py --out /tmp/drawings
"""

import argparse
from pathlib import Path

from pentagulation.formats import SvgOptions, render_svg, tutte_layout
from pentagulation.pg_search import compute_pg, construct_gn


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("drawings"))
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for n in args.n:
        res = compute_pg(n, 3)
        for i, rec in enumerate(res.classes):
            xy = tutte_layout(rec.graph, rec.outer_face)
            path = args.out / f"pg{n}_{i}.svg"
            path.write_text(render_svg(rec.graph, xy, SvgOptions(labels=False)))
            print(f"{res} -> {path}")

    g = construct_gn(13)
    path = args.out / "g13.svg"
    path.write_text(render_svg(g, tutte_layout(g), SvgOptions(labels=False)))
    print(f"G_13 V={g.vertex_count} -> {path}")


if __name__ == "__main__":
    main()
