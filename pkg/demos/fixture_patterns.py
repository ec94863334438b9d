"""Find the three-edge subgraphs of the two 16-vertex fixture triangulations.

Both have degree sequence (6,6,6,6) plus twelve 5s.  Only the second one
contains the removable pattern, four times; every occurrence gives a
pentagulation of a triangle.

    python3 demos/fixture_patterns.py
"""

from pentagulation.formats import parse_ascii_adjacency
from pentagulation.patterns import PentagulationRecord, derive_all, find_pattern_occurrences, pattern_catalog

FIXTURES = {
    "first": "bcdef,afghc,abhijd,acjke,adklmf,aemgb,bfmnoh,bgoic,chopj,cipkd,"
    "djple,ekpnm,elngf,gmlpo,gnpih,ionlkj;",
    "second": "bcdef,afghc,abhid,acijke,adklmf,aemgb,bfmnh,bgnoic,chojd,diopk,"
    "djple,ekpnm,elngf,gmlpoh,hnpji,jonlk.",
}


def label(edges) -> str:
    return " ".join("".join(chr(ord("a") + v) for v in e) for e in edges)


def main() -> None:
    pats = {p.id: p for p in pattern_catalog(3, 3)}
    for name, text in FIXTURES.items():
        h = parse_ascii_adjacency(text)
        print(f"{name}: V={h.vertex_count} degrees={sorted(h.degrees, reverse=True)[:4]}")
        for pid in ("T3.2iii", "T3.4iii"):
            occ = find_pattern_occurrences(h, pats[pid])
            print(f"  {pid}: {len(occ)} occurrences")
            for es in occ:
                print(f"    {label(es)}")
        sets, results = derive_all(h, 3)
        for es, res in zip(sets, results):
            outcome = f"pentagulation with p={res.p}" if isinstance(res, PentagulationRecord) else res.reason
            print(f"  remove {label(es)} -> {outcome}")


if __name__ == "__main__":
    main()
