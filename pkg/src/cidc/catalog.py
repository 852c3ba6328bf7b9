"""Bundled cubic-graph catalogs (regenerate with ``tools/make_catalog.py``).

* ``multigraphs``: connected loopless cubic multigraphs, 2 <= n <= 10
* ``simple``: connected simple cubic graphs, 4 <= n <= 14
* ``girth5``: 2-connected cubic graphs without 3- or 4-cycles, 10 <= n <= 14
* ``planar``: bridgeless simple planar cubic graphs, 4 <= n <= 16
"""

from __future__ import annotations

from importlib import resources

from .graph import CubicMultipole
from .io import parse_graph6, read_graph6_stream, read_multipole_stream

FILES = {
    "multigraphs": "multigraphs_n2-10.txt",
    "simple": "simple_n4-14.g6",
    "girth5": "girth5_biconnected_n10-14.g6",
    "planar": "planar_bridgeless_n4-16.g6",
}


def catalog_text(name: str) -> str:
    if name not in FILES:
        raise KeyError(f"unknown catalog {name!r}; choose from {', '.join(FILES)}")
    return resources.files("cidc").joinpath("data", FILES[name]).read_text()


def load_catalog(name: str, max_n: int | None = None) -> list[CubicMultipole]:
    text = catalog_text(name)
    if FILES[name].endswith(".g6"):
        graphs = [parse_graph6(line) for line in read_graph6_stream(text.splitlines())]
    else:
        graphs = list(read_multipole_stream(text.splitlines(keepends=True)))
    if max_n is not None:
        graphs = [g for g in graphs if g.n <= max_n]
    return graphs
