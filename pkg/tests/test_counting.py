from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from cidc import generators as G
from cidc.catalog import load_catalog
from cidc.counting import (
    circuits,
    count,
    count_assignments,
    count_backtrack,
    count_dp,
    count_outer_fixed,
    elimination_order,
)
from cidc.graph import CubicMultipole, GraphError
from cidc.strands import ResourceLimitError

KNOWN = [
    ("theta", G.theta(), 1),
    ("K4", G.k4(), 2),
    ("K33", G.k33(), 8),
    ("cube", G.cube(), 26),
    ("Petersen", G.petersen(), 52),
    ("J3", G.flower_snark(3), 104),
]


def relabel(g: CubicMultipole, perm: list[int]) -> CubicMultipole:
    return CubicMultipole.build(g.n, [(perm[a], perm[b]) for a, b in g.edge_list()])


@pytest.mark.parametrize("name,g,nu", KNOWN, ids=[k[0] for k in KNOWN])
def test_engines_agree_on_known_graphs(name, g, nu):
    assert count_assignments(g).value == nu
    assert count_backtrack(g).value == nu
    assert count_dp(g).value == nu


def test_circuit_enumeration():
    assert len(circuits(G.theta())) == 3
    assert len(circuits(G.k4())) == 7  # four triangles, three 4-cycles
    assert len(circuits(G.petersen())) == 12 + 10 + 15 + 20  # lengths 5, 6, 8, 9


def test_bridge_gives_zero():
    # two digon-triangle blobs joined by the bridge 2-3
    g = CubicMultipole.build(
        6, [(0, 1), (0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (4, 5)]
    )
    for engine in ("brute", "backtrack", "dp", "auto"):
        assert count(g, engine).value == 0


def test_dp_order_independent():
    g = G.petersen()
    rng = random.Random(2)
    for _ in range(5):
        order = list(range(g.n))
        rng.shuffle(order)
        assert count_dp(g, order).value == 52


def test_dp_order_validation():
    with pytest.raises(GraphError):
        count_dp(G.k4(), [0, 1, 2])


def test_elimination_order_is_permutation():
    g = G.flower_snark(5)
    assert sorted(elimination_order(g)) == list(range(g.n))


def test_state_cap(monkeypatch):
    monkeypatch.setenv("CIDC_MAX_STATES", "3")
    with pytest.raises(ResourceLimitError):
        count_dp(G.petersen())


def test_engines_reject_multipoles():
    for f in (count_backtrack, count_dp):
        with pytest.raises(GraphError):
            f(G.three_star())
    with pytest.raises(ValueError):
        count(G.k4(), "magic")


def test_auto_engine_choice():
    assert count(G.k4()).engine == "brute"
    assert count(G.klee(16)).engine == "dp"
    assert count(G.three_star()).engine == "brute"


def test_normalized_isolated_edges():
    g = G.isolated_pairs_pole([(1, 2), (3, 4)])
    assert count_assignments(g).value == 1
    assert count_assignments(g, normalized=True).value == pytest.approx(1 / 4)


def test_outer_fixed_k4_triangle():
    # a K4 triangle lies in exactly one of the two covers
    assert count_outer_fixed(G.k4(), [0, 1, 2]).value == 1


def test_outer_fixed_rejects_non_circuit():
    with pytest.raises(GraphError):
        count_outer_fixed(G.petersen(), [0, 1, 2])


@given(st.randoms(use_true_random=False))
def test_relabel_invariance(r):
    g = G.cube()
    perm = list(range(g.n))
    r.shuffle(perm)
    h = relabel(g, perm)
    assert count_dp(h).value == count_assignments(h).value == 26


@given(st.integers(min_value=1, max_value=7))
def test_klee_is_tight(h):
    n = 2 * h
    assert count_dp(G.klee(n)).value == 2 ** (n // 2 - 1)


def test_multigraph_catalog_small():
    for g in load_catalog("multigraphs", max_n=6):
        assert count_dp(g).value == count_backtrack(g).value == count_assignments(g).value


def test_zero_exactly_for_bridges():
    from cidc.graph import bridges

    graphs = load_catalog("multigraphs") + load_catalog("simple", max_n=12)
    for g in graphs:
        # count_dp has no bridge shortcut, so this checks the sweep itself
        assert (count_dp(g).value == 0) == bool(bridges(g))
