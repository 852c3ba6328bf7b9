"""Boundaries of circuit double covers on multipoles and the bilinear join.

A boundary records, for each semiedge in order, the labels of the two paths
ending there, plus the pairs of paths that share an edge without meeting at a
common semiedge.  Boundaries are stored in their lexicographically minimal
relabeling.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Hashable, Iterable, Mapping, Sequence

from .graph import CubicMultipole, GraphError, junction
from .strands import CircuitCover, cover_of, is_valid_cover, AssignmentScanner, check_budget

MAX_K = 5

Pair = tuple[int, int]


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Boundary:
    pairs: tuple[Pair, ...]
    extras: tuple[Pair, ...] = ()

    @property
    def k(self) -> int:
        return len(self.pairs)

    def sharing(self) -> set[Pair]:
        """All pairs of paths known to share an edge."""
        return set(self.pairs) | set(self.extras)

    def __str__(self) -> str:
        left = ",".join(f"({a},{b})" for a, b in self.pairs)
        right = ",".join(f"({a},{b})" for a, b in self.extras)
        return f"<{left}|{right}>"


def _check_raw(pairs: Sequence[tuple[Hashable, Hashable]], extras: Iterable[tuple[Hashable, Hashable]]):
    counts: dict[Hashable, int] = defaultdict(int)
    for a, b in pairs:
        if a == b:
            raise BoundaryError(f"semiedge pair ({a},{b}) repeats a path")
        counts[a] += 1
        counts[b] += 1
    if any(c != 2 for c in counts.values()):
        raise BoundaryError("every path must end at exactly two semiedges")
    if len(counts) != len(pairs):
        raise BoundaryError("number of paths must equal number of semiedges")
    cooc = {frozenset(p) for p in pairs}
    for a, b in extras:
        if a == b or a not in counts or b not in counts:
            raise BoundaryError(f"bad extra pair ({a},{b})")
        if frozenset((a, b)) in cooc:
            raise BoundaryError(f"extra pair ({a},{b}) already meets at a semiedge")


def _encode(pairs, extras, lab) -> tuple[tuple[Pair, ...], tuple[Pair, ...]]:
    p = tuple(tuple(sorted((lab[a], lab[b]))) for a, b in pairs)
    x = tuple(sorted({tuple(sorted((lab[a], lab[b]))) for a, b in extras}))
    return p, x  # type: ignore[return-value]


def canonicalize(
    pairs: Sequence[tuple[Hashable, Hashable]],
    extras: Iterable[tuple[Hashable, Hashable]] = (),
    check: bool = True,
) -> Boundary:
    """Lexicographically minimal relabeling of a raw boundary.

    Only first-appearance labelings can minimize the semiedge part, so the
    search branches just on pairs that introduce two new paths at once.
    """
    extras = list(extras)
    if check:
        _check_raw(pairs, extras)
    best = None
    lab: dict[Hashable, int] = {}

    def rec(i: int, nxt: int) -> None:
        nonlocal best
        while i < len(pairs):
            a, b = pairs[i]
            na, nb = a not in lab, b not in lab
            if na and nb:
                for x, y in ((a, b), (b, a)):
                    lab[x], lab[y] = nxt, nxt + 1
                    rec(i + 1, nxt + 2)
                    del lab[x], lab[y]
                return
            if na:
                lab[a] = nxt
                nxt += 1
                rec(i + 1, nxt)
                del lab[a]
                return
            if nb:
                lab[b] = nxt
                nxt += 1
                rec(i + 1, nxt)
                del lab[b]
                return
            i += 1
        enc = _encode(pairs, extras, lab)
        if best is None or enc < best:
            best = enc

    rec(0, 1)
    assert best is not None
    return Boundary(*best)


def canonicalize_brute(pairs, extras=()) -> Boundary:
    """Reference canonical form: minimum over every relabeling of the paths."""
    extras = list(extras)
    _check_raw(pairs, extras)
    labels = sorted({x for p in pairs for x in p}, key=repr)
    best = None
    for perm in permutations(range(1, len(labels) + 1)):
        enc = _encode(pairs, extras, dict(zip(labels, perm)))
        if best is None or enc < best:
            best = enc
    if best is None:
        return Boundary((), ())
    return Boundary(*best)


def parse_boundary(text: str) -> Boundary:
    m = re.fullmatch(r"\s*<(.*)\|(.*)>\s*", text)
    if not m:
        raise BoundaryError(f"not a boundary: {text!r}")
    pat = re.compile(r"\((\d+),(\d+)\)")
    parts = []
    for chunk in m.groups():
        chunk = chunk.replace(" ", "")
        found = pat.findall(chunk)
        if pat.sub("", chunk).replace(",", ""):
            raise BoundaryError(f"not a boundary: {text!r}")
        parts.append([(int(a), int(b)) for a, b in found])
    return canonicalize(parts[0], parts[1])


# -- enumeration ------------------------------------------------------------


def _pair_sequences(k: int) -> Iterable[list[Pair]]:
    """Pair sequences in first-appearance labeling (each label used twice)."""
    out: list[Pair] = []
    used = [0] * (k + 2)

    def rec(i: int, nxt: int):
        if i == k:
            if nxt == k + 1:
                yield list(out)
            return
        cands = [x for x in range(1, nxt) if used[x] < 2]
        options = []
        for a, b in combinations(cands, 2):
            options.append((a, b))
        for a in cands:
            options.append((a, nxt))
        options.append((nxt, nxt + 1))
        for a, b in options:
            if b > k:
                continue
            used[a] += 1
            used[b] += 1
            out.append((a, b))
            yield from rec(i + 1, max(nxt, b + 1))
            out.pop()
            used[a] -= 1
            used[b] -= 1

    yield from rec(0, 1)


@lru_cache(maxsize=None)
def enumerate_boundaries(k: int) -> tuple[Boundary, ...]:
    """Every canonical boundary of size ``k`` (0 <= k <= 5), sorted."""
    if not 0 <= k <= MAX_K:
        raise BoundaryError(f"boundaries are enumerated only for 0 <= k <= {MAX_K}")
    found = set()
    for pairs in _pair_sequences(k):
        cooc = {tuple(sorted(p)) for p in pairs}
        free = [p for p in combinations(range(1, k + 1), 2) if p not in cooc]
        for r in range(len(free) + 1):
            for sub in combinations(free, r):
                found.add(canonicalize(pairs, sub, check=False))
    return tuple(sorted(found))


# -- boundaries of covers ---------------------------------------------------


def boundary_of(g: CubicMultipole, cover: CircuitCover) -> Boundary:
    """Boundary traced by a cover on the semiedges of ``g``."""
    if not is_valid_cover(g, cover):
        raise BoundaryError("cover is not a circuit double cover of this multipole")
    paths = cover.paths()
    at: dict[int, list[int]] = defaultdict(list)
    for i, w in enumerate(paths):
        s, t = w.end_semiedges()
        at[s].append(i)
        at[t].append(i)
    label: dict[int, int] = {}
    for s in g.semiedges:
        for i in at[s]:
            label.setdefault(i, len(label) + 1)
    pairs = []
    for s in g.semiedges:
        if len(at[s]) != 2:
            raise BoundaryError("a semiedge must carry exactly two path ends")
        a, b = at[s]
        pairs.append((label[a], label[b]))
    cooc = {frozenset(p) for p in pairs}
    edge_sets = [set(w.edges()) for w in paths]
    extras = []
    for i, j in combinations(range(len(paths)), 2):
        if edge_sets[i] & edge_sets[j] and frozenset((label[i], label[j])) not in cooc:
            extras.append((label[i], label[j]))
    return canonicalize(pairs, extras)


class MultiplicityVector(dict):
    """Boundary -> exact rational weight (missing boundaries weigh zero)."""

    def dense(self, basis: Sequence[Boundary]) -> list[Fraction]:
        return [self.get(b, Fraction(0)) for b in basis]


def multiplicity_vector(g: CubicMultipole, limit: int | None = None) -> MultiplicityVector:
    """Covers of ``g`` bucketed by boundary, each scaled by 2**-f (f isolated edges)."""
    if g.k > MAX_K:
        raise BoundaryError(f"multiplicity vectors are supported for k <= {MAX_K}")
    scanner = AssignmentScanner(g)
    check_budget(scanner, limit)
    scale = Fraction(1, 2 ** len(g.isolated()))
    h = MultiplicityVector()
    for a in scanner.assignments():
        cover = cover_of(g, a)
        assert cover is not None
        b = boundary_of(g, cover)
        h[b] = h.get(b, Fraction(0)) + scale
    return h


# -- joining ------------------------------------------------------------------


@lru_cache(maxsize=None)
def join_count(b1: Boundary, b2: Boundary) -> int:
    """Number of the 2**k per-semiedge matchings that close into valid circuits."""
    if b1.k != b2.k:
        raise BoundaryError(f"size mismatch {b1.k} vs {b2.k}")
    k = b1.k
    share = [(a - 1, b - 1) for a, b in b1.sharing()]
    share += [(a - 1 + k, b - 1 + k) for a, b in b2.sharing()]
    valid = 0
    for mask in range(1 << k):
        parent = list(range(2 * k))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(k):
            x, y = b1.pairs[i]
            p, q = b2.pairs[i]
            if (mask >> i) & 1:
                p, q = q, p
            parent[find(x - 1)] = find(p - 1 + k)
            parent[find(y - 1)] = find(q - 1 + k)
        if all(find(a) != find(b) for a, b in share):
            valid += 1
    return valid


@dataclass(frozen=True)
class JoinMatrix:
    k: int
    basis: tuple[Boundary, ...]
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[Boundary, Boundary]) -> int:
        i = self.basis.index(key[0])
        j = self.basis.index(key[1])
        return self.entries[i][j]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def join_matrix(k: int) -> JoinMatrix:
    basis = enumerate_boundaries(k)
    rows = tuple(tuple(join_count(a, b) for b in basis) for a in basis)
    return JoinMatrix(k, basis, rows)


def bilinear_form(h1: Mapping[Boundary, Fraction], h2: Mapping[Boundary, Fraction]) -> Fraction:
    """Sum over boundary pairs of h1 * join_count * h2 (only supports are visited)."""
    total = Fraction(0)
    for b1, x in h1.items():
        if not x:
            continue
        for b2, y in h2.items():
            if y:
                total += x * y * join_count(b1, b2)
    return total


def join_vector(h: Mapping[Boundary, Fraction], basis: Sequence[Boundary]) -> list[Fraction]:
    """Coefficients of the linear form m -> J(m, h) over ``basis``."""
    return [
        sum((y * join_count(b, b2) for b2, y in h.items() if y), Fraction(0))
        for b in basis
    ]


def bilinear_sides(g1: CubicMultipole, g2: CubicMultipole) -> tuple[int, Fraction]:
    """Direct cover count of the gluing and the bilinear prediction."""
    from .counting import count

    if g1.k != g2.k:
        raise GraphError(f"cannot glue a {g1.k}-pole with a {g2.k}-pole")
    glued, loops = junction(g1, g2)
    if loops:
        raise BoundaryError("gluing closes vertex-less loops; the identity is not claimed there")
    lhs = count(glued).value
    rhs = bilinear_form(multiplicity_vector(g1), multiplicity_vector(g2))
    return lhs, rhs


def verify_bilinear(g1: CubicMultipole, g2: CubicMultipole) -> bool:
    lhs, rhs = bilinear_sides(g1, g2)
    return rhs.denominator == 1 and lhs == rhs
