"""Dart-based cubic multipoles.

A multipole is stored as an array of darts (half-edges).  Edge ``e`` owns the
darts ``2e`` and ``2e + 1``, so the twin of dart ``d`` is ``d ^ 1``.  A dart is
either attached to a vertex or is a semiedge.  The semiedges carry a fixed
linear order (slots ``1..k``).

When building a multipole from an edge list, a vertex end is written as a
non-negative integer and a semiedge end as ``-i`` for slot ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

NONE = -1


class GraphError(ValueError):
    """Raised for structurally invalid multipoles or operation misuse."""


class NotCubicError(GraphError):
    pass


@dataclass(frozen=True)
class CubicMultipole:
    ends: tuple[int, ...]
    semiedges: tuple[int, ...]
    rot: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.ends) % 2:
            raise GraphError("odd number of darts")
        n = len(self.rot)
        seen: list[list[int]] = [[] for _ in range(n)]
        for d, v in enumerate(self.ends):
            if v == NONE:
                continue
            if not 0 <= v < n:
                raise GraphError(f"dart {d} at unknown vertex {v}")
            seen[v].append(d)
        for v, darts in enumerate(seen):
            if len(darts) != 3:
                raise NotCubicError(f"vertex {v} has degree {len(darts)}")
            if sorted(self.rot[v]) != darts:
                raise GraphError(f"rotation at vertex {v} does not match its darts")
        for e in range(len(self.ends) // 2):
            a, b = self.ends[2 * e], self.ends[2 * e + 1]
            if a == b != NONE:
                raise GraphError(f"edge {e} is a loop at vertex {a}")
        free = [d for d, v in enumerate(self.ends) if v == NONE]
        if sorted(self.semiedges) != free:
            raise GraphError("semiedge order must list every vertex-less dart once")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        rotation: Sequence[Sequence[int]] | None = None,
    ) -> CubicMultipole:
        """Build from ``(a, b)`` edge ends; ``-i`` marks semiedge slot ``i``.

        ``rotation`` optionally gives, per vertex, its darts in cyclic order.
        """
        ends: list[int] = []
        slots: dict[int, int] = {}
        for a, b in edges:
            for x in (a, b):
                if x < 0:
                    if -x in slots:
                        raise GraphError(f"semiedge slot {-x} used twice")
                    slots[-x] = len(ends)
                    ends.append(NONE)
                else:
                    if x >= n:
                        raise GraphError(f"vertex {x} out of range")
                    ends.append(x)
        k = len(slots)
        if sorted(slots) != list(range(1, k + 1)):
            raise GraphError("semiedge slots must be exactly 1..k")
        semiedges = tuple(slots[i] for i in range(1, k + 1))
        if rotation is None:
            darts: list[list[int]] = [[] for _ in range(n)]
            for d, v in enumerate(ends):
                if v != NONE:
                    darts[v].append(d)
            rot = tuple(tuple(ds) for ds in darts)
        else:
            rot = tuple(tuple(r) for r in rotation)
        if len(rot) != n or any(len(r) != 3 for r in rot):
            degs = [len(r) for r in rot]
            raise NotCubicError(f"vertex degrees {degs} are not all 3")
        return cls(tuple(ends), semiedges, rot)  # type: ignore[arg-type]

    def with_rotation(self, rotation: Sequence[Sequence[int]]) -> CubicMultipole:
        return CubicMultipole(self.ends, self.semiedges, tuple(tuple(r) for r in rotation))  # type: ignore[misc]

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rot)

    @property
    def k(self) -> int:
        return len(self.semiedges)

    @property
    def num_edges(self) -> int:
        return len(self.ends) // 2

    @property
    def num_darts(self) -> int:
        return len(self.ends)

    @property
    def is_graph(self) -> bool:
        return not self.semiedges

    def slot_of(self, dart: int) -> int:
        return self.semiedges.index(dart) + 1

    def edge_ends(self, e: int) -> tuple[int, int]:
        """Edge ends in ``build`` convention (slots as negative numbers)."""
        out = []
        for d in (2 * e, 2 * e + 1):
            v = self.ends[d]
            out.append(v if v != NONE else -self.slot_of(d))
        return out[0], out[1]

    def edge_list(self) -> list[tuple[int, int]]:
        return [self.edge_ends(e) for e in range(self.num_edges)]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.ends[2 * e], self.ends[2 * e + 1]

    def is_link(self, e: int) -> bool:
        return NONE not in self.endpoints(e)

    def links(self) -> list[int]:
        return [e for e in range(self.num_edges) if self.is_link(e)]

    def dangling(self) -> list[int]:
        return [e for e in range(self.num_edges) if self.endpoints(e).count(NONE) == 1]

    def isolated(self) -> list[int]:
        return [e for e in range(self.num_edges) if self.endpoints(e) == (NONE, NONE)]

    def incident_edges(self, v: int) -> list[int]:
        return [d >> 1 for d in self.rot[v]]

    def neighbors(self, v: int) -> list[int]:
        return [self.ends[d ^ 1] for d in self.rot[v]]

    def is_simple(self) -> bool:
        if not self.is_graph:
            return False
        pairs = [tuple(sorted(self.endpoints(e))) for e in range(self.num_edges)]
        return len(set(pairs)) == len(pairs)

    def signature(self) -> tuple:
        """Labelled structure ignoring edge order, dart orientation and rotation."""
        return (self.n, tuple(sorted(tuple(sorted(p)) for p in self.edge_list())))

    def __repr__(self) -> str:
        return f"CubicMultipole(n={self.n}, k={self.k}, edges={self.edge_list()})"


@dataclass(frozen=True)
class EdgeCut:
    edges: frozenset[int]
    side: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.edges)


# -- connectivity -----------------------------------------------------------


def components(g: CubicMultipole, removed: Iterable[int] = ()) -> list[list[int]]:
    """Vertex sets of the connected components after deleting edges ``removed``."""
    gone = set(removed)
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for e in g.links():
        if e in gone:
            continue
        a, b = g.endpoints(e)
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: CubicMultipole, removed: Iterable[int] = ()) -> bool:
    return len(components(g, removed)) <= 1


def bridges(g: CubicMultipole) -> list[int]:
    base = len(components(g))
    return [e for e in g.links() if len(components(g, (e,))) > base]


def cut_edges(g: CubicMultipole, side: Iterable[int]) -> list[int]:
    s = set(side)
    return [e for e in g.links() if (g.ends[2 * e] in s) != (g.ends[2 * e + 1] in s)]


def find_small_cuts(g: CubicMultipole) -> EdgeCut | None:
    """Return a bridge, else a 2-edge-cut, else a non-trivial 3-edge-cut.

    Edge subsets are tried in lexicographic order.  The reported shore is the
    one containing the lowest-numbered vertex.  ``None`` means the graph is
    3-edge-connected and all of its 3-edge-cuts are vertex stars.
    """
    if not g.is_graph:
        raise GraphError("cut search needs a graph without semiedges")
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    links = g.links()
    for size in (1, 2, 3):
        for sub in combinations(links, size):
            comps = components(g, sub)
            if len(comps) < 2:
                continue
            shore = frozenset(comps[0])
            if size == 3 and (len(shore) == 1 or len(shore) == g.n - 1):
                continue
            if size == 3 and len(comps) > 2:
                continue
            return EdgeCut(frozenset(sub), shore)
    return None


def is_cyclically_4_edge_connected(g: CubicMultipole) -> bool:
    return find_small_cuts(g) is None


# -- rewriting --------------------------------------------------------------


def _compact(n: int, edges: list[tuple[int, int]], keep: Sequence[int]) -> CubicMultipole:
    index = {v: i for i, v in enumerate(sorted(keep))}
    relabel = [(index[a] if a >= 0 else a, index[b] if b >= 0 else b) for a, b in edges]
    return CubicMultipole.build(len(index), relabel)


def contract_cut_side(g: CubicMultipole, cut: EdgeCut, side: Iterable[int]) -> CubicMultipole:
    """Contract the shore ``side`` of a 2- or 3-edge-cut.

    For a 3-cut the shore becomes one cubic vertex (it keeps the lowest id of
    the shore); for a 2-cut the shore becomes a degree-2 vertex that is
    suppressed, i.e. the two cut edges merge into one edge.
    """
    s = frozenset(side)
    if cut.size not in (2, 3):
        raise GraphError(f"cannot contract a cut of size {cut.size}")
    if not s or len(s) >= g.n or set(cut_edges(g, s)) != set(cut.edges):
        raise GraphError("side is not a shore of this cut")
    rep = min(s)
    edges: list[tuple[int, int]] = []
    pending: list[int] = []
    for e, (a, b) in enumerate(g.edge_list()):
        ina, inb = a in s, b in s
        if ina and inb:
            continue
        if not (ina or inb):
            edges.append((a, b))
            continue
        outer = b if ina else a
        if cut.size == 3:
            edges.append((rep, b) if ina else (a, rep))
        else:
            pending.append(outer)
            if len(pending) == 2:
                if pending[0] == pending[1]:
                    raise GraphError("suppression would create a loop (the graph has a bridge)")
                edges.append((pending[0], pending[1]))
    keep = [v for v in range(g.n) if v not in s]
    if cut.size == 3:
        keep.append(rep)
    return _compact(g.n, edges, keep)


def extract(
    g: CubicMultipole, side: Iterable[int], order: Sequence[int] | None = None
) -> tuple[CubicMultipole, CubicMultipole]:
    """Split a graph along the edges leaving ``side``.

    Returns ``(inner, outer)`` multipoles of equal size whose slot ``i`` is the
    cut edge ``order[i-1]`` (default: increasing edge id), so that
    ``glue(inner, outer)`` rebuilds ``g`` up to vertex numbering.
    """
    if not g.is_graph:
        raise GraphError("extract needs a graph")
    s = set(side)
    cut = cut_edges(g, s)
    if order is None:
        order = cut
    elif sorted(order) != sorted(cut):
        raise GraphError("order must list exactly the cut edges")
    slot = {e: i + 1 for i, e in enumerate(order)}
    inner: list[tuple[int, int]] = []
    outer: list[tuple[int, int]] = []
    for e, (a, b) in enumerate(g.edge_list()):
        if e in slot:
            i = slot[e]
            u, w = (a, b) if a in s else (b, a)
            inner.append((u, -i))
            outer.append((w, -i))
        elif a in s:
            inner.append((a, b))
        else:
            outer.append((a, b))
    return (
        _compact(g.n, inner, sorted(s)),
        _compact(g.n, outer, [v for v in range(g.n) if v not in s]),
    )


def junction(g1: CubicMultipole, g2: CubicMultipole) -> tuple[CubicMultipole, int]:
    """Glue two k-poles slot by slot; also report removed vertex-less loops."""
    if g1.k != g2.k:
        raise GraphError(f"cannot glue a {g1.k}-pole with a {g2.k}-pole")
    off = g1.num_darts
    ends = list(g1.ends) + [v + g1.n if v != NONE else NONE for v in g2.ends]
    partner = {}
    for a, b in zip(g1.semiedges, g2.semiedges):
        partner[a] = b + off
        partner[b + off] = a
    newdart: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for d in range(len(ends)):
        if ends[d] == NONE or d in newdart:
            continue
        t = d ^ 1
        while ends[t] == NONE:
            t = partner[t] ^ 1
        if ends[d] == ends[t]:
            raise GraphError("gluing creates a loop at a vertex")
        newdart[d] = 2 * len(edges)
        newdart[t] = 2 * len(edges) + 1
        edges.append((ends[d], ends[t]))
    # every junction removes one edge, closed chains of isolated edges vanish
    visited = set()
    loops = 0
    for d in range(len(ends)):
        if ends[d] != NONE or d in visited:
            continue
        chain_start = d
        t = d
        closed = True
        while True:
            visited.add(t)
            visited.add(t ^ 1)
            nxt = partner.get(t ^ 1)
            if ends[t ^ 1] != NONE or nxt is None:
                closed = False
                break
            t = nxt
            if t == chain_start:
                break
        if closed:
            loops += 1
    rot = [tuple(newdart[d] for d in r) for r in g1.rot]
    rot += [tuple(newdart[d + off] for d in r) for r in g2.rot]
    return CubicMultipole.build(g1.n + g2.n, edges, rotation=rot), loops


def glue(g1: CubicMultipole, g2: CubicMultipole) -> CubicMultipole:
    """Join semiedge ``i`` of ``g1`` with semiedge ``i`` of ``g2`` for every ``i``."""
    return junction(g1, g2)[0]


def edge_pole(g: CubicMultipole, e: int) -> CubicMultipole:
    """2-pole from deleting link ``e``: slot 1 at its first end, slot 2 at its second."""
    if not g.is_graph or not g.is_link(e):
        raise GraphError("edge_pole needs a link of a graph")
    a, b = g.endpoints(e)
    edges = [g.endpoints(f) for f in range(g.num_edges) if f != e]
    return CubicMultipole.build(g.n, edges + [(a, -1), (b, -2)])


def vertex_pole(g: CubicMultipole, v: int, order: Sequence[int] = (0, 1, 2)) -> CubicMultipole:
    """3-pole from deleting vertex ``v``; slot ``i + 1`` sits on edge ``rot[v][order[i]]``."""
    if not g.is_graph:
        raise GraphError("vertex_pole needs a graph")
    if sorted(order) != [0, 1, 2]:
        raise GraphError("order must permute 0, 1, 2")
    darts = [g.rot[v][i] for i in order]
    slot = {d >> 1: i + 1 for i, d in enumerate(darts)}
    if len(slot) != 3:
        raise GraphError("vertex_pole needs three distinct edges at the vertex")
    edges = []
    for e in range(g.num_edges):
        a, b = g.endpoints(e)
        if e in slot:
            if a == v and b == v:
                raise GraphError("loop at the deleted vertex")
            edges.append((b if a == v else a, -slot[e]))
        else:
            edges.append((a, b))
    return _compact(g.n, edges, [u for u in range(g.n) if u != v])


def expand_vertex(g: CubicMultipole, v: int) -> CubicMultipole:
    """Replace vertex ``v`` by a triangle; the new vertices get ids ``n`` and ``n+1``."""
    if not 0 <= v < g.n:
        raise GraphError(f"no vertex {v}")
    a, b = g.n, g.n + 1
    _, d1, d2 = g.rot[v]
    ends = list(g.ends)
    ends[d1] = a
    ends[d2] = b
    edges = []
    for e in range(g.num_edges):
        pair = []
        for d in (2 * e, 2 * e + 1):
            pair.append(ends[d] if ends[d] != NONE else -g.slot_of(d))
        edges.append(tuple(pair))
    edges += [(v, a), (a, b), (b, v)]
    return CubicMultipole.build(g.n + 2, edges)


def is_cycle(g: CubicMultipole, cycle: Sequence[int]) -> bool:
    """Whether ``cycle`` lists distinct vertices with consecutive ones adjacent."""
    if len(set(cycle)) != len(cycle) or len(cycle) < 2:
        return False
    for i, u in enumerate(cycle):
        if cycle[(i + 1) % len(cycle)] not in g.neighbors(u):
            return False
    return True


def is_induced_cycle(g: CubicMultipole, cycle: Sequence[int]) -> bool:
    if not is_cycle(g, cycle) or len(cycle) < 3:
        return False
    inside = set(cycle)
    internal = [e for e in g.links() if set(g.endpoints(e)) <= inside]
    return len(internal) == len(cycle)


def cycle_edges(g: CubicMultipole, cycle: Sequence[int]) -> list[int]:
    """Edge ids along a cycle given by its vertices (graph must be simple there)."""
    out = []
    for i, u in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        cands = [e for e in g.incident_edges(u) if set(g.endpoints(e)) == {u, w}]
        if len(cands) != 1:
            raise GraphError(f"no unique edge between {u} and {w}")
        out.append(cands[0])
    return out


def short_cycles(g: CubicMultipole, length: int) -> Iterator[tuple[int, ...]]:
    """Induced cycles of the given length, each once, in lexicographic order.

    A cycle is reported starting at its smallest vertex, in the direction
    whose second vertex is smaller.
    """
    found = []

    def extend(path: list[int]) -> None:
        if len(path) == length:
            if path[0] in g.neighbors(path[-1]) and path[1] < path[-1]:
                if is_induced_cycle(g, path):
                    found.append(tuple(path))
            return
        for w in sorted(set(g.neighbors(path[-1]))):
            if w > path[0] and w not in path:
                extend(path + [w])

    for s in range(g.n):
        extend([s])
    yield from sorted(found)
