"""Rotation systems, faces, Euler characteristic and flower detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import NONE, CubicMultipole, GraphError


class EmbeddingError(GraphError):
    pass


class UnsupportedEmbeddingError(EmbeddingError):
    """The requested check is only implemented for planar rotations."""


@dataclass(frozen=True)
class RotationSystem:
    rotation: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, g: CubicMultipole) -> RotationSystem:
        return cls(tuple(tuple(r) for r in g.rot))

    def check(self, g: CubicMultipole) -> None:
        if len(self.rotation) != g.n:
            raise EmbeddingError(f"rotation lists {len(self.rotation)} vertices, graph has {g.n}")
        for v, r in enumerate(self.rotation):
            if sorted(r) != sorted(d for d in range(g.num_darts) if g.ends[d] == v):
                raise EmbeddingError(f"rotation at vertex {v} does not list its darts")

    def successor(self) -> dict[int, int]:
        return {r[i]: r[(i + 1) % len(r)] for r in self.rotation for i in range(len(r))}


@dataclass(frozen=True)
class Face:
    """A face as its cyclic sequence of darts; each dart ``d`` runs along edge ``d >> 1``."""

    darts: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.darts)

    def edges(self) -> list[int]:
        return [d >> 1 for d in self.darts]

    def vertices(self, g: CubicMultipole) -> list[int]:
        return [g.ends[d] for d in self.darts]

    def is_cycle(self, g: CubicMultipole) -> bool:
        vs = self.vertices(g)
        es = self.edges()
        return len(set(vs)) == len(vs) and len(set(es)) == len(es)


def _resolve(g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None) -> RotationSystem:
    if rot is None:
        rs = RotationSystem.of(g)
    elif isinstance(rot, RotationSystem):
        rs = rot
    else:
        rs = RotationSystem(tuple(tuple(r) for r in rot))
    rs.check(g)
    return rs


def trace_faces(g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None = None) -> list[Face]:
    """Faces of the embedding, following ``d -> succ(twin(d))``; ordered by smallest dart."""
    if not g.is_graph:
        raise EmbeddingError("faces are traced on graphs without semiedges")
    succ = _resolve(g, rot).successor()
    seen = [False] * g.num_darts
    faces = []
    for d0 in range(g.num_darts):
        if seen[d0] or g.ends[d0] == NONE:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(Face(tuple(walk)))
    return faces


def euler_characteristic(g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None = None) -> int:
    return g.n - g.num_edges + len(trace_faces(g, rot))


def is_planar_rotation(g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None = None) -> bool:
    """Planar for connected graphs means Euler characteristic 2."""
    return euler_characteristic(g, rot) == 2


def face_of_dart(faces: Sequence[Face]) -> dict[int, int]:
    return {d: i for i, f in enumerate(faces) for d in f.darts}


def find_face(faces: Sequence[Face], g: CubicMultipole, vertices: Sequence[int]) -> Face:
    """The face whose boundary visits exactly the given vertex set."""
    want = set(vertices)
    for f in faces:
        if set(f.vertices(g)) == want and f.size == len(want):
            return f
    raise EmbeddingError(f"no face with vertex set {sorted(want)}")


@dataclass(frozen=True)
class FlowerReport:
    conditions: tuple[bool, bool, bool, bool, bool]

    @property
    def is_flower(self) -> bool:
        return all(self.conditions)

    def __bool__(self) -> bool:
        return self.is_flower


def flower_conditions(
    g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None, f: Face
) -> FlowerReport:
    """Evaluate the five flower conditions for centre ``f`` of a planar embedding.

    Neighbour faces are taken in the cyclic order of the centre's boundary;
    for a triangle every pair of neighbours counts as consecutive.
    """
    faces = trace_faces(g, rot)
    if g.n - g.num_edges + len(faces) != 2:
        raise UnsupportedEmbeddingError("flower detection is implemented for planar rotations only")
    where = face_of_dart(faces)
    if not f.darts or f.darts[0] not in where or faces[where[f.darts[0]]] != f:
        raise EmbeddingError("f is not a face of this embedding")
    me = where[f.darts[0]]
    nbr_idx = [where[d ^ 1] for d in f.darts]
    k = f.size
    edge_sets = [set(x.edges()) for x in faces]

    def shared(a: int, b: int) -> int:
        return len(edge_sets[a] & edge_sets[b])

    c1 = f.is_cycle(g) and all(faces[i].is_cycle(g) for i in nbr_idx)
    c2 = k >= 3
    c3 = me not in nbr_idx and len(set(nbr_idx)) == k and all(shared(me, i) == 1 for i in nbr_idx)
    distinct = len(set(nbr_idx)) == k and me not in nbr_idx
    c4 = distinct and all(shared(nbr_idx[i], nbr_idx[(i + 1) % k]) == 1 for i in range(k))
    c5 = distinct
    if distinct:
        for i in range(k):
            for j in range(i + 1, k):
                if (j - i) % k in (1, k - 1):
                    continue
                if shared(nbr_idx[i], nbr_idx[j]):
                    c5 = False
    return FlowerReport((c1, c2, c3, c4, c5))


def check_flower(g: CubicMultipole, rot: RotationSystem | Sequence[Sequence[int]] | None, f: Face) -> bool:
    return flower_conditions(g, rot, f).is_flower


# -- flower counts ------------------------------------------------------------------

FLOWER_K_RANGE = range(3, 9)


@dataclass(frozen=True)
class FlowerCount:
    k: int
    count: int
    bound: int
    formula: int

    @property
    def bound_ok(self) -> bool:
        return self.count >= self.bound

    @property
    def formula_ok(self) -> bool:
        return self.count == self.formula


def flower_formula(k: int) -> int:
    return (2 ** (k - 1) + (-1) ** k) // 3 + 1


def flower_count_check(k: int) -> FlowerCount:
    """Outer-fixed cover count of the standalone k-flower against its bound and closed form."""
    from .counting import count_outer_fixed
    from .generators import flower_gadget, flower_outer_cycle

    if k not in FLOWER_K_RANGE:
        raise ValueError(f"k must lie in {FLOWER_K_RANGE.start}..{FLOWER_K_RANGE.stop - 1}")
    g = flower_gadget(k)
    outer = find_face(trace_faces(g), g, flower_outer_cycle(k))
    value = int(count_outer_fixed(g, outer).value)
    return FlowerCount(k, value, 2 ** (k - 3) + 1, flower_formula(k))
