from __future__ import annotations

import random
from collections import Counter

import pytest

from cidc import generators as G
from cidc.graph import CubicMultipole, GraphError
from cidc.strands import (
    AssignmentScanner,
    CrossingAssignment,
    ResourceLimitError,
    Walk,
    cover_of,
    enumerate_covers,
    is_valid_cover,
    trace_strands,
    walk_problems,
)


def random_rotation(g: CubicMultipole, rng: random.Random):
    rot = []
    for r in g.rot:
        r = list(r)
        if rng.random() < 0.5:
            r[1], r[2] = r[2], r[1]
        rot.append(tuple(r))
    return rot


@pytest.mark.parametrize("g,nu", [(G.theta(), 1), (G.k4(), 2), (G.k33(), 8), (G.petersen(), 52)])
def test_covers_are_valid_and_distinct(g, nu):
    covers = enumerate_covers(g)
    assert len(covers) == nu
    for c in covers:
        assert is_valid_cover(g, c)
        assert all(w.closed for w in c.elements)
    keys = {frozenset(c.edge_sets().items()) for c in covers}
    assert len(keys) == nu  # different assignments give different covers


def test_every_edge_twice_in_any_assignment():
    g = G.cube()
    rng = random.Random(5)
    for _ in range(50):
        a = {e: rng.randrange(2) for e in g.links()}
        cnt = Counter(e for w in trace_strands(g, a) for e in w.edges())
        assert all(cnt[e] == 2 for e in range(g.num_edges))


@pytest.mark.parametrize("g", [G.k4(), G.cube(), G.petersen(), G.klee(8)])
def test_count_is_rotation_independent(g):
    rng = random.Random(11)
    base = AssignmentScanner(g).count()
    for _ in range(4):
        assert AssignmentScanner(g, random_rotation(g, rng)).count() == base


def test_invalid_assignment_gives_none():
    g = G.k4()
    valid = set(AssignmentScanner(g).valid_masks())
    scanner = AssignmentScanner(g)
    bad = next(m for m in range(scanner.size) if m not in valid)
    assert cover_of(g, CrossingAssignment.from_mask(scanner.free_edges, bad)) is None


def test_multipole_paths_end_at_semiedges():
    g = G.cycle_pole(4)
    for c in enumerate_covers(g):
        assert is_valid_cover(g, c)
        for w in c.paths():
            a, b = w.end_semiedges()
            assert g.ends[a] == -1 and g.ends[b] == -1


def test_three_star_single_cover():
    covers = enumerate_covers(G.three_star())
    assert len(covers) == 1 and len(covers[0].paths()) == 3


def test_walk_problems():
    g = G.k4()
    assert walk_problems(g, Walk((), True)) == ["empty walk"]
    assert "repeated edge" in walk_problems(g, Walk((0, 1), True))


def test_fixed_on_non_link():
    with pytest.raises(GraphError):
        AssignmentScanner(G.three_star(), fixed={0: 1})


def test_budget_guard(monkeypatch):
    g = G.petersen()
    with pytest.raises(ResourceLimitError):
        enumerate_covers(g, limit=1000)
    monkeypatch.setenv("CIDC_MAX_ASSIGNMENTS", "10")
    with pytest.raises(ResourceLimitError):
        enumerate_covers(g)


def test_parallel_scan_agrees():
    g = G.cube()
    assert AssignmentScanner(g).count(workers=3) == AssignmentScanner(g).count() == 26
