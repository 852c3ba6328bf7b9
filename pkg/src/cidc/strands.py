"""Crossing assignments and the strands they induce.

Every dart at a vertex owns two strand ports: port ``2d`` belongs to the
vertex transition ``{d, succ(d)}`` and port ``2d + 1`` to ``{pred(d), d}``,
where ``succ``/``pred`` follow the rotation at the vertex.  Across a link the
ports of the two darts are paired either *parallel* (choice 0, which follows
the faces of the rotation system) or *crossed* (choice 1).

A circuit double cover corresponds to exactly one assignment whose strands
repeat no vertex.  This module provides a plain-Python tracer (used to
materialize covers) and a numba kernel that scans assignments in Gray-code
order.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numba
import numpy as np

from .graph import NONE, CubicMultipole, GraphError


class ResourceLimitError(RuntimeError):
    """An enumeration or state table exceeded its configured cap."""


DEFAULT_MAX_ASSIGNMENTS = 1 << 32


@dataclass(frozen=True)
class CrossingAssignment:
    """Crossed (1) or parallel (0) flag for every link edge."""

    choice: Mapping[int, int]

    @classmethod
    def from_mask(cls, free_edges: Sequence[int], mask: int, fixed: Mapping[int, int] | None = None):
        choice = dict(fixed or {})
        for i, e in enumerate(free_edges):
            choice[e] = (mask >> i) & 1
        return cls(choice)


@dataclass(frozen=True)
class Walk:
    """A strand as its sequence of departure darts.

    Each dart ``d`` stands for traversing its edge from ``d`` to ``d ^ 1``.  An
    open walk starts at a semiedge dart and ends when the twin of its last
    dart is a semiedge.
    """

    darts: tuple[int, ...]
    closed: bool

    def edges(self) -> list[int]:
        return [d >> 1 for d in self.darts]

    def vertices(self, g: CubicMultipole) -> list[int]:
        vs = [g.ends[d] for d in self.darts]
        return vs if self.closed else vs[1:]

    def end_semiedges(self) -> tuple[int, int]:
        return self.darts[0], self.darts[-1] ^ 1


@dataclass(frozen=True)
class CircuitCover:
    elements: tuple[Walk, ...]

    def circuits(self) -> list[Walk]:
        return [w for w in self.elements if w.closed]

    def paths(self) -> list[Walk]:
        return [w for w in self.elements if not w.closed]

    def edge_sets(self) -> Counter:
        """Multiset of element edge sets; identifies the cover independently of tracing."""
        return Counter(frozenset(w.edges()) for w in self.elements)


def _rotation(g: CubicMultipole, rotation: Sequence[Sequence[int]] | None):
    rot = g.rot if rotation is None else rotation
    succ = {}
    pred = {}
    for r in rot:
        for i, d in enumerate(r):
            succ[d] = r[(i + 1) % 3]
            pred[d] = r[(i - 1) % 3]
    return succ, pred


def port_tables(g: CubicMultipole, rotation: Sequence[Sequence[int]] | None = None) -> np.ndarray:
    """Transition partner of every port (-1 for ports of semiedge darts)."""
    succ, pred = _rotation(g, rotation)
    trans = np.full(2 * g.num_darts, -1, dtype=np.int64)
    for d in succ:
        trans[2 * d] = 2 * succ[d] + 1
        trans[2 * d + 1] = 2 * pred[d]
    return trans


def _cross(p: int, choice: int) -> int:
    q = p >> 1
    return 2 * (q ^ 1) + ((p & 1) ^ 1 ^ choice)


def trace_strands(
    g: CubicMultipole,
    assignment: CrossingAssignment | Mapping[int, int],
    rotation: Sequence[Sequence[int]] | None = None,
) -> list[Walk]:
    """All strands of an assignment, valid or not."""
    choice = assignment.choice if isinstance(assignment, CrossingAssignment) else assignment
    trans = port_tables(g, rotation)
    ends = g.ends
    seen = set()
    walks: list[Walk] = []

    def run(p0: int, darts: list[int], closed: bool) -> None:
        p = p0
        while True:
            seen.add(p)
            q = int(trans[p])
            seen.add(q)
            d = q >> 1
            darts.append(d)
            if ends[d ^ 1] == NONE:
                return
            p = _cross(q, choice[d >> 1])
            if closed and p == p0:
                return

    for e in range(g.num_edges):
        a, b = g.endpoints(e)
        if a == NONE and b == NONE:
            walks.append(Walk((2 * e,), False))
            walks.append(Walk((2 * e,), False))
    for s in g.semiedges:
        d = s ^ 1
        if ends[d] == NONE:
            continue
        for p in (2 * d, 2 * d + 1):
            if p not in seen:
                darts = [s]
                run(p, darts, False)
                walks.append(Walk(tuple(darts), False))
    for d in range(g.num_darts):
        if ends[d] == NONE:
            continue
        for p in (2 * d, 2 * d + 1):
            if p not in seen:
                darts: list[int] = []
                run(p, darts, True)
                walks.append(Walk(tuple(darts), True))
    return walks


def walk_problems(g: CubicMultipole, walk: Walk) -> list[str]:
    """Structural defects of one walk: broken joints, repeated vertices or edges."""
    ends = g.ends
    out = []
    ds = walk.darts
    if not ds:
        return ["empty walk"]
    if walk.closed:
        joints = [(ds[i], ds[(i + 1) % len(ds)]) for i in range(len(ds))]
    else:
        if ends[ds[0]] != NONE:
            out.append("path does not start at a semiedge")
        if ends[ds[-1] ^ 1] != NONE:
            out.append("path does not end at a semiedge")
        joints = [(ds[i], ds[i + 1]) for i in range(len(ds) - 1)]
    for a, b in joints:
        if ends[a ^ 1] == NONE or ends[a ^ 1] != ends[b] or a ^ 1 == b:
            out.append(f"darts {a} and {b} do not meet at a vertex")
    vs = walk.vertices(g)
    if len(set(vs)) != len(vs):
        out.append("repeated vertex")
    es = walk.edges()
    if len(set(es)) != len(es):
        out.append("repeated edge")
    return out


def is_valid_cover(g: CubicMultipole, cover: CircuitCover) -> bool:
    """Every element a circuit or semiedge-to-semiedge path, every edge covered twice."""
    if any(walk_problems(g, w) for w in cover.elements):
        return False
    cnt = Counter(e for w in cover.elements for e in w.edges())
    return all(cnt[e] == 2 for e in range(g.num_edges)) and len(cnt) == g.num_edges


def cover_of(
    g: CubicMultipole,
    assignment: CrossingAssignment | Mapping[int, int],
    rotation: Sequence[Sequence[int]] | None = None,
) -> CircuitCover | None:
    """The cover described by an assignment, or ``None`` if a strand is not a circuit/path."""
    walks = trace_strands(g, assignment, rotation)
    for w in walks:
        vs = w.vertices(g)
        if len(set(vs)) != len(vs):
            return None
    return CircuitCover(tuple(walks))


# -- numba kernel -----------------------------------------------------------


@numba.njit(nogil=True, cache=True)
def _check(ends, trans, ch, open_starts, closed_starts, pvis, vvis, astamp, sid):
    for i in range(open_starts.shape[0]):
        p = open_starts[i]
        if pvis[p] == astamp:
            continue
        sid += 1
        while True:
            pvis[p] = astamp
            v = ends[p >> 1]
            if vvis[v] == sid:
                return False, sid
            vvis[v] = sid
            q = trans[p]
            pvis[q] = astamp
            t = (q >> 1) ^ 1
            if ends[t] < 0:
                break
            p = 2 * t + ((q & 1) ^ 1 ^ ch[t >> 1])
    for i in range(closed_starts.shape[0]):
        p0 = closed_starts[i]
        if pvis[p0] == astamp:
            continue
        sid += 1
        p = p0
        while True:
            pvis[p] = astamp
            v = ends[p >> 1]
            if vvis[v] == sid:
                return False, sid
            vvis[v] = sid
            q = trans[p]
            pvis[q] = astamp
            t = (q >> 1) ^ 1
            p = 2 * t + ((q & 1) ^ 1 ^ ch[t >> 1])
            if p == p0:
                break
    return True, sid


@numba.njit(nogil=True, cache=True)
def _scan_block(ends, trans, n, free_edges, ch0, low_bits, top, open_starts, closed_starts, out):
    """Scan the 2**low_bits assignments whose high free bits equal ``top``.

    Low bits are visited in reflected Gray-code order; each assignment is
    traced in full.  Valid full masks are written to ``out`` while it has room.
    """
    ch = ch0.copy()
    nfree = free_edges.shape[0]
    for i in range(low_bits, nfree):
        ch[free_edges[i]] = (top >> (i - low_bits)) & 1
    for i in range(low_bits):
        ch[free_edges[i]] = 0
    pvis = np.zeros(trans.shape[0], dtype=np.int64)
    vvis = np.zeros(max(n, 1), dtype=np.int64)
    sid = 0
    gray = 0
    count = 0
    for it in range(1 << low_bits):
        if it > 0:
            b = 0
            while not (it >> b) & 1:
                b += 1
            ch[free_edges[b]] ^= 1
            gray ^= 1 << b
        ok, sid = _check(ends, trans, ch, open_starts, closed_starts, pvis, vvis, it + 1, sid)
        if ok:
            if count < out.shape[0]:
                out[count] = (top << low_bits) | gray
            count += 1
    return count


class AssignmentScanner:
    """Prepared tables for scanning the crossing assignments of one multipole."""

    def __init__(
        self,
        g: CubicMultipole,
        rotation: Sequence[Sequence[int]] | None = None,
        fixed: Mapping[int, int] | None = None,
    ) -> None:
        self.g = g
        self.fixed = dict(fixed or {})
        links = g.links()
        bad = set(self.fixed) - set(links)
        if bad:
            raise GraphError(f"fixed choices on non-link edges {sorted(bad)}")
        self.free_edges = [e for e in links if e not in self.fixed]
        self._ends = np.array(g.ends, dtype=np.int64)
        self._trans = port_tables(g, rotation)
        ch = np.zeros(max(g.num_edges, 1), dtype=np.int64)
        for e, c in self.fixed.items():
            ch[e] = c
        self._ch = ch
        self._free = np.array(self.free_edges, dtype=np.int64)
        opens = []
        for s in g.semiedges:
            d = s ^ 1
            if g.ends[d] != NONE:
                opens += [2 * d, 2 * d + 1]
        self._open = np.array(opens, dtype=np.int64)
        closed = [p for d in range(g.num_darts) if g.ends[d] != NONE for p in (2 * d, 2 * d + 1)]
        self._closed = np.array(closed, dtype=np.int64)

    @property
    def size(self) -> int:
        return 1 << len(self.free_edges)

    def _blocks(self, workers: int) -> tuple[int, int]:
        nfree = len(self.free_edges)
        top_bits = 0
        while workers > 1 and (1 << top_bits) < 4 * workers and top_bits < nfree:
            top_bits += 1
        return nfree - top_bits, 1 << top_bits

    def _run(self, low: int, top: int, out: np.ndarray) -> int:
        return int(
            _scan_block(
                self._ends, self._trans, self.g.n, self._free, self._ch,
                low, top, self._open, self._closed, out,
            )
        )

    def count(self, workers: int = 1) -> int:
        low, nblocks = self._blocks(workers)
        empty = np.zeros(0, dtype=np.int64)
        if nblocks == 1:
            return self._run(low, 0, empty)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda t: self._run(low, t, empty), range(nblocks)))
        return sum(parts)

    def valid_masks(self) -> list[int]:
        low = len(self.free_edges)
        total = self._run(low, 0, np.zeros(0, dtype=np.int64))
        out = np.zeros(total, dtype=np.int64)
        self._run(low, 0, out)
        return sorted(int(x) for x in out)

    def assignments(self) -> list[CrossingAssignment]:
        return [CrossingAssignment.from_mask(self.free_edges, m, self.fixed) for m in self.valid_masks()]


def max_assignments() -> int:
    raw = os.environ.get("CIDC_MAX_ASSIGNMENTS")
    return int(raw) if raw else DEFAULT_MAX_ASSIGNMENTS


def check_budget(scanner: AssignmentScanner, limit: int | None) -> None:
    cap = max_assignments() if limit is None else limit
    if scanner.size > cap:
        raise ResourceLimitError(
            f"{scanner.size} crossing assignments exceed the limit of {cap}"
        )


def enumerate_covers(
    g: CubicMultipole,
    rotation: Sequence[Sequence[int]] | None = None,
    fixed: Mapping[int, int] | None = None,
    limit: int | None = None,
) -> list[CircuitCover]:
    """All circuit double covers of a multipole, one per valid assignment."""
    scanner = AssignmentScanner(g, rotation, fixed)
    check_budget(scanner, limit)
    covers = []
    for a in scanner.assignments():
        c = cover_of(g, a, rotation)
        assert c is not None
        covers.append(c)
    return covers
