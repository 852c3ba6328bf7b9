"""Named cubic graphs and small multipoles.

Planar families are built with an explicit rotation (cyclic neighbour order
at every vertex) so that their default dart order is a planar embedding.
"""

from __future__ import annotations

import random
from typing import Sequence

from .graph import CubicMultipole, GraphError, expand_vertex


def from_rotation_lists(n: int, order: Sequence[Sequence[int]]) -> CubicMultipole:
    """Simple cubic graph from the cyclic neighbour order at each vertex."""
    edges: list[tuple[int, int]] = []
    dart_of: dict[tuple[int, int], int] = {}
    for u in range(n):
        for w in order[u]:
            if u < w:
                dart_of[(u, w)] = 2 * len(edges)
                dart_of[(w, u)] = 2 * len(edges) + 1
                edges.append((u, w))
    if len(dart_of) != 3 * n:
        raise GraphError("rotation lists do not describe a simple cubic graph")
    rotation = [[dart_of[(u, w)] for w in order[u]] for u in range(n)]
    return CubicMultipole.build(n, edges, rotation=rotation)


def simple_graph(n: int, edges: Sequence[tuple[int, int]]) -> CubicMultipole:
    return CubicMultipole.build(n, [tuple(e) for e in edges])


def theta() -> CubicMultipole:
    """Two vertices joined by three parallel edges, planar rotation."""
    return CubicMultipole.build(2, [(0, 1), (0, 1), (0, 1)], rotation=[[0, 2, 4], [1, 5, 3]])


def k4() -> CubicMultipole:
    return from_rotation_lists(4, [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])


def cube() -> CubicMultipole:
    """The 3-cube: outer square 0-3, inner square 4-7, spokes i -- i+4."""
    order = []
    for i in range(4):
        order.append([(i + 1) % 4, (i + 3) % 4, i + 4])
    for i in range(4):
        order.append([4 + (i + 3) % 4, 4 + (i + 1) % 4, i])
    return from_rotation_lists(8, order)


def k33() -> CubicMultipole:
    return simple_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def petersen() -> CubicMultipole:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return simple_graph(10, edges)


def prism(k: int) -> CubicMultipole:
    """C_k x K_2 with inner cycle 0..k-1 and outer cycle k..2k-1, planar rotation."""
    if k < 3:
        raise GraphError("prism needs k >= 3")
    order = []
    for i in range(k):
        order.append([(i + 1) % k, (i - 1) % k, k + i])
    for i in range(k):
        order.append([k + (i - 1) % k, k + (i + 1) % k, i])
    return from_rotation_lists(2 * k, order)


def flower_gadget(k: int) -> CubicMultipole:
    """Standalone planar k-flower: centre face 0..k-1, petals, outer face k..2k-1.

    The outer cycle's edges are the outer face boundary whose strand is held
    fixed when counting outer-fixed covers.
    """
    if k < 3:
        raise GraphError("a flower needs k >= 3")
    return prism(k)


def flower_outer_cycle(k: int) -> list[int]:
    return list(range(k, 2 * k))


def flower_snark(k: int) -> CubicMultipole:
    """Isaacs' flower snark J_k on 4k vertices (odd k >= 3).

    Vertex ``4i`` is the centre of claw ``i`` with leaves ``4i+1`` (inner
    k-cycle), ``4i+2`` and ``4i+3`` (the twisted 2k-cycle).
    """
    if k < 3 or k % 2 == 0:
        raise GraphError("flower snarks need odd k >= 3")
    edges = []
    for i in range(k):
        c, a, b, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(c, a), (c, b), (c, d)]
        edges.append((a, 4 * ((i + 1) % k) + 1))
    for i in range(k - 1):
        edges.append((4 * i + 2, 4 * (i + 1) + 2))
        edges.append((4 * i + 3, 4 * (i + 1) + 3))
    edges.append((4 * (k - 1) + 2, 3))
    edges.append((4 * (k - 1) + 3, 2))
    return simple_graph(4 * k, edges)


def klee(n: int) -> CubicMultipole:
    """Klee graph: theta with vertex 0 expanded to a triangle (n - 2) / 2 times."""
    if n < 2 or n % 2:
        raise GraphError("klee(n) needs even n >= 2")
    g = theta()
    while g.n < n:
        g = expand_vertex(g, 0)
    return g


def three_star() -> CubicMultipole:
    return CubicMultipole.build(1, [(0, -1), (0, -2), (0, -3)])


def triangle_pole() -> CubicMultipole:
    return CubicMultipole.build(3, [(0, 1), (1, 2), (2, 0), (0, -1), (1, -2), (2, -3)])


def isolated_edge_pole() -> CubicMultipole:
    return CubicMultipole.build(0, [(-1, -2)])


def cycle_pole(k: int) -> CubicMultipole:
    """A k-cycle whose vertex ``i`` carries the dangling edge of slot ``i + 1``."""
    if k < 2:
        raise GraphError("cycle_pole needs k >= 2")
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, -(i + 1)) for i in range(k)]
    return CubicMultipole.build(k, edges)


def isolated_pairs_pole(pairs: Sequence[tuple[int, int]]) -> CubicMultipole:
    """Multipole made only of isolated edges joining the given slot pairs."""
    return CubicMultipole.build(0, [(-a, -b) for a, b in pairs])


def vertex_and_edge_pole(k: int, edge: tuple[int, int]) -> CubicMultipole:
    """5-pole replacement: an isolated edge on two slots, a cubic vertex on the rest."""
    rest = [s for s in range(1, k + 1) if s not in edge]
    if len(rest) != 3:
        raise GraphError("vertex_and_edge_pole needs exactly three remaining slots")
    return CubicMultipole.build(1, [(-edge[0], -edge[1])] + [(0, -s) for s in rest])


def random_multipole(n: int, k: int, rng: random.Random, max_tries: int = 1000) -> CubicMultipole:
    """Uniform random pairing of 3n vertex stubs and k semiedge ends, loops rejected."""
    if (3 * n + k) % 2:
        raise GraphError("3n + k must be even")
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(3)] + [-(i + 1) for i in range(k)]
        rng.shuffle(stubs)
        edges = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        if any(a == b and a >= 0 for a, b in edges):
            continue
        return CubicMultipole.build(n, edges)
    raise GraphError("could not sample a loopless multipole")


FAMILIES = {
    "theta": lambda p: theta(),
    "k4": lambda p: k4(),
    "cube": lambda p: cube(),
    "k33": lambda p: k33(),
    "petersen": lambda p: petersen(),
    "klee": lambda p: klee(p),
    "prism": lambda p: prism(p),
    "flower-gadget": lambda p: flower_gadget(p),
    "flower-snark": lambda p: flower_snark(p),
    "three-star": lambda p: three_star(),
    "triangle-pole": lambda p: triangle_pole(),
    "isolated-edge-pole": lambda p: isolated_edge_pole(),
    "cycle-pole": lambda p: cycle_pole(p),
}
