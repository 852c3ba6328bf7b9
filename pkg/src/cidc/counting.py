"""Exact counting of circuit double covers.

Three independent engines count ν(G):

* ``count_assignments`` scans crossing assignments (the strand picture);
* ``count_backtrack`` enumerates circuits and picks multisets covering every
  edge twice;
* ``count_dp`` sweeps vertices while tracking boundary states of the
  processed part.

``count_outer_fixed`` counts covers that contain a prescribed circuit, used
for flowers.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .boundary import Boundary, canonicalize
from .graph import NONE, CubicMultipole, GraphError, bridges, cycle_edges
from .strands import AssignmentScanner, ResourceLimitError, check_budget

DEFAULT_MAX_STATES = 2_000_000
DEFAULT_MAX_CIRCUITS = 2_000_000
BRUTE_LINKS = 15


@dataclass(frozen=True)
class CountResult:
    value: int | Fraction
    engine: str
    elapsed: float

    def __int__(self) -> int:
        return int(self.value)


def _timed(engine: str, start: float, value: int | Fraction) -> CountResult:
    return CountResult(value, engine, time.perf_counter() - start)


def _require_graph(g: CubicMultipole, engine: str) -> None:
    if not g.is_graph:
        raise GraphError(f"the {engine} engine counts graphs without semiedges")


# -- crossing assignments -----------------------------------------------------


def count_assignments(
    g: CubicMultipole,
    normalized: bool = False,
    workers: int = 1,
    limit: int | None = None,
    rotation: Sequence[Sequence[int]] | None = None,
) -> CountResult:
    """Count valid crossing assignments under the rotation of ``g``.

    Raw counts treat the doubled path on an isolated edge as one
    configuration; ``normalized=True`` divides by ``2**f`` for ``f`` isolated
    edges, as multiplicity vectors do.
    """
    start = time.perf_counter()
    if g.is_graph and bridges(g):
        return _timed("brute", start, Fraction(0) if normalized else 0)
    scanner = AssignmentScanner(g, rotation)
    check_budget(scanner, limit)
    value = scanner.count(workers)
    if normalized:
        return _timed("brute", start, Fraction(value, 2 ** len(g.isolated())))
    return _timed("brute", start, value)


# -- circuit backtracking -----------------------------------------------------


def circuits(g: CubicMultipole, limit: int | None = None) -> list[int]:
    """Every circuit of a graph as an edge bitmask (2-cycles on parallel edges included)."""
    _require_graph(g, "backtrack")
    cap = DEFAULT_MAX_CIRCUITS if limit is None else limit
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in g.links():
        a, b = g.endpoints(e)
        inc[a].append((e, b))
        inc[b].append((e, a))
    found: set[int] = set()
    for s in range(g.n):
        on_path = {s}

        def extend(u: int, mask: int, first: int) -> None:
            for e, w in inc[u]:
                if mask >> e & 1:
                    continue
                if w == s:
                    if e != first:
                        found.add(mask | 1 << e)
                        if len(found) > cap:
                            raise ResourceLimitError(f"more than {cap} circuits")
                elif w > s and w not in on_path:
                    on_path.add(w)
                    extend(w, mask | 1 << e, first)
                    on_path.discard(w)

        for e, w in inc[s]:
            if w > s:
                on_path.add(w)
                extend(w, 1 << e, e)
                on_path.discard(w)
    return sorted(found)


def count_backtrack(g: CubicMultipole, limit: int | None = None) -> CountResult:
    """Count multisets of circuits covering every edge exactly twice."""
    start = time.perf_counter()
    _require_graph(g, "backtrack")
    circs = circuits(g, limit)
    m = g.num_edges
    through: list[list[int]] = [[] for _ in range(m)]
    for c in circs:
        for e in range(m):
            if c >> e & 1:
                through[e].append(c)
    need = [2] * m

    def fits(c: int, times: int) -> bool:
        e = 0
        while c:
            if c & 1 and need[e] < times:
                return False
            c >>= 1
            e += 1
        return True

    def apply(c: int, delta: int) -> None:
        e = 0
        while c:
            if c & 1:
                need[e] += delta
            c >>= 1
            e += 1

    def rec() -> int:
        best, best_cands = -1, None
        for e in range(m):
            if need[e]:
                cands = [c for c in through[e] if fits(c, 1)]
                if best_cands is None or len(cands) < len(best_cands):
                    best, best_cands = e, cands
                    if not cands:
                        return 0
        if best_cands is None:
            return 1
        total = 0
        # every circuit still needed at ``best`` is chosen here at once
        for combo in combinations_with_replacement(best_cands, need[best]):
            ok = True
            applied = []
            for c in combo:
                if not fits(c, 1):
                    ok = False
                    break
                apply(c, -1)
                applied.append(c)
            if ok:
                total += rec()
            for c in applied:
                apply(c, 1)
        return total

    return _timed("backtrack", start, rec())


# -- boundary dynamic programming --------------------------------------------


def max_states() -> int:
    raw = os.environ.get("CIDC_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def elimination_order(g: CubicMultipole) -> list[int]:
    """Greedy vertex order keeping the frontier small (ties by vertex id)."""
    done = [False] * g.n
    frontier = 0
    order = []
    nbrs = [[g.ends[d ^ 1] for d in g.rot[v]] for v in range(g.n)]
    for _ in range(g.n):
        best, best_size = -1, None
        for v in range(g.n):
            if done[v]:
                continue
            joined = sum(1 for w in nbrs[v] if w != NONE and done[w])
            size = frontier - joined + (3 - joined)
            if best_size is None or size < best_size:
                best, best_size = v, size
        done[best] = True
        frontier = best_size
        order.append(best)
    return order


_PIECES = ((0, 2), (0, 1), (1, 2))  # pieces through dart i: A = {d0,d1}, B = {d1,d2}, C = {d2,d0}


def _dp_step(
    states: dict[Boundary, int],
    frontier: list[int],
    darts: tuple[int, int, int],
    joined_pos: list[int | None],
    new_frontier: list[int],
) -> dict[Boundary, int]:
    k = len(frontier)
    pos_kept = {e: i for i, e in enumerate(frontier)}
    # describe each slot of the new frontier: either an old slot or a dart of v
    layout: list[tuple[bool, int]] = []
    new_edges = {darts[i] >> 1: i for i in range(3) if joined_pos[i] is None}
    for e in new_frontier:
        if e in new_edges:
            layout.append((False, new_edges[e]))
        else:
            layout.append((True, pos_kept[e]))
    joins = [i for i in range(3) if joined_pos[i] is not None]
    pieces = [(k + a, k + b) for a, b in _PIECES]
    piece_share = [(k, k + 1), (k + 1, k + 2), (k, k + 2)]
    out: dict[Boundary, int] = {}
    cap = max_states()
    for b, cnt in states.items():
        base_share = [(x - 1, y - 1) for x, y in b.sharing()] + piece_share
        for mask in range(1 << len(joins)):
            parent = list(range(k + 3))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            share = list(base_share)
            for j, i in enumerate(joins):
                x, y = b.pairs[joined_pos[i]]
                x, y = x - 1, y - 1
                p, q = pieces[i]
                if mask >> j & 1:
                    p, q = q, p
                parent[find(x)] = find(p)
                parent[find(y)] = find(q)
                share.append((p, y))
                share.append((q, x))
            if any(find(a) == find(c) for a, c in share):
                continue
            raw = []
            for old, idx in layout:
                if old:
                    x, y = b.pairs[idx]
                    raw.append((find(x - 1), find(y - 1)))
                else:
                    p, q = pieces[idx]
                    raw.append((find(p), find(q)))
            open_roots = {r for pr in raw for r in pr}
            cooc = {frozenset(pr) for pr in raw}
            extras = set()
            for a, c in share:
                ra, rc = find(a), find(c)
                if ra in open_roots and rc in open_roots and frozenset((ra, rc)) not in cooc:
                    extras.add((ra, rc))
            nb = canonicalize(raw, extras, check=False)
            out[nb] = out.get(nb, 0) + cnt
            if len(out) > cap:
                raise ResourceLimitError(f"more than {cap} boundary states")
    return out


def count_dp(g: CubicMultipole, order: Sequence[int] | None = None) -> CountResult:
    """Count covers by a vertex sweep over canonical frontier boundaries."""
    start = time.perf_counter()
    _require_graph(g, "dp")
    if order is None:
        order = elimination_order(g)
    elif sorted(order) != list(range(g.n)):
        raise GraphError("order must list every vertex once")
    done = [False] * g.n
    frontier: list[int] = []
    states: dict[Boundary, int] = {Boundary((), ()): 1}
    for v in order:
        darts = g.rot[v]
        pos = {e: i for i, e in enumerate(frontier)}
        joined_pos: list[int | None] = []
        for d in darts:
            w = g.ends[d ^ 1]
            joined_pos.append(pos[d >> 1] if done[w] else None)
        gone = {darts[i] >> 1 for i in range(3) if joined_pos[i] is not None}
        added = [darts[i] >> 1 for i in range(3) if joined_pos[i] is None]
        new_frontier = sorted([e for e in frontier if e not in gone] + added)
        states = _dp_step(states, frontier, darts, joined_pos, new_frontier)
        done[v] = True
        frontier = new_frontier
        if not states:
            break
    return _timed("dp", start, sum(states.values()) if states else 0)


# -- outer-fixed counting -------------------------------------------------------


def circuit_darts(g: CubicMultipole, cycle: Sequence[int]) -> list[int]:
    """Departure darts of the circuit through the vertices ``cycle`` in order."""
    edges = cycle_edges(g, cycle)
    return [2 * e if g.ends[2 * e] == cycle[i] else 2 * e + 1 for i, e in enumerate(edges)]


def fixed_choices_for_circuit(
    g: CubicMultipole, darts: Sequence[int], rotation: Sequence[Sequence[int]] | None = None
) -> dict[int, int]:
    """Crossing choices forcing the circuit with departure darts ``darts`` to be a strand."""
    rot = g.rot if rotation is None else rotation
    succ = {r[i]: r[(i + 1) % 3] for r in rot for i in range(3)}
    m = len(darts)
    if m < 2:
        raise GraphError("a circuit needs at least two edges")
    verts = [g.ends[d] for d in darts]
    if NONE in verts or len(set(verts)) != m or len({d >> 1 for d in darts}) != m:
        raise GraphError("outer boundary is not a circuit")
    out_port = {}
    in_port = {}
    for i in range(m):
        a, b = darts[i - 1], darts[i]
        arr = a ^ 1
        if g.ends[arr] != g.ends[b]:
            raise GraphError("outer darts do not form a closed walk")
        if succ[arr] == b:
            in_port[arr], out_port[b] = 2 * arr, 2 * b + 1
        else:
            in_port[arr], out_port[b] = 2 * arr + 1, 2 * b
    choices = {}
    for d in darts:
        choices[d >> 1] = (in_port[d ^ 1] & 1) ^ (out_port[d] & 1) ^ 1
    return choices


def count_outer_fixed(
    g: CubicMultipole,
    outer: Sequence[int] | object,
    limit: int | None = None,
) -> CountResult:
    """Covers of ``g`` containing the circuit ``outer`` as an element.

    ``outer`` is a face (anything with a ``darts`` attribute) or the vertex
    sequence of a circuit.
    """
    start = time.perf_counter()
    _require_graph(g, "outer-fixed")
    darts = getattr(outer, "darts", None)
    if darts is None:
        darts = circuit_darts(g, list(outer))  # type: ignore[arg-type]
    fixed = fixed_choices_for_circuit(g, list(darts))
    scanner = AssignmentScanner(g, fixed=fixed)
    check_budget(scanner, limit)
    return _timed("outer-fixed", start, scanner.count())


# -- dispatch -------------------------------------------------------------------

ENGINES = ("brute", "backtrack", "dp", "auto")


def count(g: CubicMultipole, engine: str = "auto", workers: int = 1) -> CountResult:
    """ν(g) by the named engine; ``auto`` scans small inputs and sweeps the rest."""
    if engine == "auto":
        engine = "brute" if not g.is_graph or len(g.links()) <= BRUTE_LINKS else "dp"
    if engine == "brute":
        return count_assignments(g, workers=workers)
    if engine == "backtrack":
        return count_backtrack(g)
    if engine == "dp":
        if g.is_graph and bridges(g):
            return CountResult(0, "dp", 0.0)
        return count_dp(g)
    raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
