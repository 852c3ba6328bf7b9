"""Regenerate the bundled cubic-graph catalogs in src/cidc/data.

Two classes are grown, with isomorphism classes merged by nauty canonical
labelling of the edge-subdivided graph:

* connected cubic multigraphs with loops, from theta and the dumbbell, by
  edge insertion (subdivide two edges, or one edge twice, and join the new
  vertices) and by hanging a looped vertex off a subdivided edge;
* 2-edge-connected loopless cubic multigraphs, from theta by edge insertion
  alone (insertion keeps 2-edge-connectivity).

Below ``--max-full`` the second class is checked to equal the bridgeless
loopless part of the first.  Counts are checked against OEIS before writing:

* A000421, connected loopless cubic multigraphs: 1, 2, 6, 20, 91, 509, 3608, 31856
* A002851, connected simple cubic graphs: 1, 2, 5, 19, 85, 509, 4060
* A014372, connected cubic graphs of girth >= 5: n = 10, 12, 14 -> 1, 2, 9

Needs ``pynauty`` and ``networkx`` (tool-only dependencies).

    python3 tools/make_catalog.py [--max-n 16] [--max-full 14]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import networkx as nx
import pynauty

from cidc.graph import CubicMultipole, bridges
from cidc.io import write_graph6, write_multipole_stream

MULTI = {2: 1, 4: 2, 6: 6, 8: 20, 10: 91, 12: 509, 14: 3608, 16: 31856}
SIMPLE = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85, 14: 509, 16: 4060}
GIRTH5 = {10: 1, 12: 2, 14: 9}

DATA = Path(__file__).resolve().parent.parent / "src" / "cidc" / "data"

Edges = tuple[tuple[int, int], ...]


def canonical(n: int, edges: Edges) -> Edges:
    m = len(edges)
    adj: dict[int, list[int]] = {v: [] for v in range(n + m)}
    for i, (a, b) in enumerate(edges):
        adj[n + i] = sorted({a, b})
    g = pynauty.Graph(
        n + m,
        adjacency_dict=adj,
        vertex_coloring=[set(range(n)), set(range(n, n + m))],
    )
    lab = pynauty.canon_label(g)
    pos = {v: i for i, v in enumerate(lab[:n])}
    return tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges))


def children(n: int, edges: Edges, loops: bool):
    m = len(edges)
    x, y = n, n + 1
    if loops:
        for i in range(m):
            a, b = edges[i]
            rest = [e for t, e in enumerate(edges) if t != i]
            yield tuple(rest + [(a, x), (x, b), (x, y), (y, y)])
    for i in range(m):
        for j in range(i, m):
            rest = [e for t, e in enumerate(edges) if t != i and t != j]
            a, b = edges[i]
            if i == j:
                new = [(a, x), (x, y), (x, y), (y, b)]
            else:
                c, d = edges[j]
                new = [(a, x), (x, b), (c, y), (y, d), (x, y)]
            yield tuple(rest + new)


def grow(max_n: int, loops: bool) -> dict[int, list[Edges]]:
    levels = {2: [((0, 1), (0, 1), (0, 1))]}
    if loops:
        levels[2].append(((0, 0), (0, 1), (1, 1)))
    levels[2] = sorted(canonical(2, e) for e in levels[2])
    n = 2
    while n < max_n:
        t = time.time()
        found: set[Edges] = set()
        for g in levels[n]:
            for h in children(n, g, loops):
                found.add(canonical(n + 2, h))
        n += 2
        levels[n] = sorted(found)
        kind = "with loops" if loops else "2-edge-connected"
        print(f"n={n}: {len(levels[n])} {kind} ({time.time() - t:.1f}s)", file=sys.stderr)
    return levels


def loopless(edges: Edges) -> bool:
    return all(a != b for a, b in edges)


def is_simple(edges: Edges) -> bool:
    return len(set(edges)) == len(edges)


def nxg(n: int, e: Edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(e)
    return g


def check(name: str, got: dict[int, int], want: dict[int, int]) -> None:
    for n, w in want.items():
        if n in got and got[n] != w:
            raise SystemExit(f"{name}: {got[n]} graphs at n={n}, OEIS says {w}")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=16, help="largest order of the bridgeless class")
    ap.add_argument("--max-full", type=int, default=14, help="largest order of the full class")
    args = ap.parse_args(argv)

    full = grow(args.max_full, loops=True)
    multi = {n: [e for e in gs if loopless(e)] for n, gs in full.items()}
    check("loopless multigraphs", {n: len(g) for n, g in multi.items()}, MULTI)
    simple = {n: [e for e in gs if is_simple(e)] for n, gs in multi.items() if n >= 4}
    check("simple graphs", {n: len(g) for n, g in simple.items()}, SIMPLE)
    girth5 = {n: [e for e in gs if nx.girth(nxg(n, e)) >= 5] for n, gs in simple.items()}
    check("girth >= 5", {n: len(g) for n, g in girth5.items()}, GIRTH5)

    twoec = grow(args.max_n, loops=False)
    for n, gs in multi.items():
        bridgeless = {e for e in gs if not bridges(CubicMultipole.build(n, e))}
        if bridgeless != set(twoec[n]):
            raise SystemExit(f"insertion class differs from the bridgeless multigraphs at n={n}")

    DATA.mkdir(parents=True, exist_ok=True)
    multis = [CubicMultipole.build(n, e) for n in sorted(multi) if n <= 10 for e in multi[n]]
    (DATA / "multigraphs_n2-10.txt").write_text(write_multipole_stream(multis))

    def dump(name: str, graphs) -> None:
        lines = [write_graph6(CubicMultipole.build(n, e)) for n, e in graphs]
        (DATA / name).write_text("".join(line + "\n" for line in lines))
        print(f"{name}: {len(lines)} graphs", file=sys.stderr)

    dump("simple_n4-14.g6", [(n, e) for n in sorted(simple) for e in simple[n]])
    dump(
        "girth5_biconnected_n10-14.g6",
        [(n, e) for n in sorted(girth5) for e in girth5[n] if nx.is_biconnected(nxg(n, e))],
    )
    dump(
        "planar_bridgeless_n4-16.g6",
        [
            (n, e)
            for n in sorted(twoec) if n >= 4
            for e in twoec[n]
            if is_simple(e) and nx.check_planarity(nxg(n, e))[0]
        ],
    )
    print("catalogs written to", DATA, file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
