from __future__ import annotations

import random

import pytest
from hypothesis import settings

from cidc.graph import CubicMultipole, cut_edges, is_connected

settings.register_profile("cidc", max_examples=60, deadline=None)
settings.load_profile("cidc")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


def random_fragment(g: CubicMultipole, rng: random.Random, sizes: tuple[int, ...]) -> list[int] | None:
    """A connected vertex set whose edge cut has one of the given sizes (or None)."""
    for _ in range(200):
        start = rng.randrange(g.n)
        side = {start}
        frontier = list(g.neighbors(start))
        target = rng.randint(1, max(1, g.n - 1))
        while len(side) < target and frontier:
            v = frontier.pop(rng.randrange(len(frontier)))
            if v in side:
                continue
            side.add(v)
            frontier += [w for w in g.neighbors(v) if w not in side]
        if len(side) == g.n:
            continue
        rest = [v for v in range(g.n) if v not in side]
        if len(cut_edges(g, side)) in sizes and is_connected(g) and rest:
            return sorted(side)
    return None
