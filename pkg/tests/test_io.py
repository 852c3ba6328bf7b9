from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cidc import generators as G
from cidc.graph import NotCubicError
from cidc.io import (
    ParseError,
    parse_graph6,
    parse_graph6_edges,
    parse_multipole,
    parse_rotation,
    read_graph6_stream,
    read_multipole_stream,
    write_graph6,
    write_multipole,
    write_multipole_stream,
    write_rotation,
)


def edge_set(g):
    return sorted(tuple(sorted(e)) for e in g.edge_list())


def test_k4_graph6():
    g = parse_graph6("C~")
    assert g.n == 4 and g.num_edges == 6 and g.is_simple()
    assert write_graph6(g) == "C~"


def test_petersen_roundtrip():
    g = G.petersen()
    h = parse_graph6(write_graph6(g))
    assert edge_set(h) == edge_set(g)


def test_header_prefix_and_comments():
    assert parse_graph6(">>graph6<<C~").n == 4
    assert list(read_graph6_stream(["# c", "", " C~ \n"])) == ["C~"]


def test_long_size_encoding():
    n, edges = parse_graph6_edges("~??~" + "?" * ((63 * 62 // 2 + 5) // 6))
    assert n == 63 and edges == []


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "C}"])
def test_malformed_graph6(bad):
    with pytest.raises((ParseError, NotCubicError)):
        parse_graph6(bad)


def test_non_cubic_graph6():
    with pytest.raises(NotCubicError):
        parse_graph6("Bw")  # path on 3 vertices


def test_multigraph_not_graph6():
    with pytest.raises(Exception):
        write_graph6(G.theta())


@pytest.mark.parametrize(
    "g", [G.theta(), G.three_star(), G.isolated_edge_pole(), G.cycle_pole(4), G.isolated_pairs_pole([(1, 3), (2, 4)])]
)
def test_multipole_roundtrip(g):
    h = parse_multipole(write_multipole(g))
    assert h.edge_list() == g.edge_list() and h.k == g.k


def test_multipole_comments():
    g = parse_multipole("# theta\n2 0 0\n0 1\n0 1  # middle\n0 1\n")
    assert g.n == 2 and g.num_edges == 3


@pytest.mark.parametrize(
    "text",
    ["", "2 0\n0 1\n", "2 0 0\n0 1 2\n", "2 0 0\n0 x\n", "1 3 1\n0 *1\n0 *2\n0 *3\n", "2 0 0\n0 1\n0 1\n", "1 1 0\n0 *0\n"],
)
def test_multipole_errors(text):
    with pytest.raises((ParseError, NotCubicError)):
        parse_multipole(text)


def test_multipole_stream():
    graphs = [G.theta(), G.k4(), G.three_star()]
    back = list(read_multipole_stream(write_multipole_stream(graphs).splitlines(keepends=True)))
    assert [g.edge_list() for g in back] == [g.edge_list() for g in graphs]


def test_rotation_roundtrip():
    rot = G.petersen().rot
    assert parse_rotation(write_rotation(rot)) == [tuple(r) for r in rot]


def test_rotation_errors():
    with pytest.raises(ParseError):
        parse_rotation("0: 1 2 x\n")
    with pytest.raises(ParseError):
        parse_rotation("0: 1 2 3\n0: 1 2 3\n")


@given(st.integers(min_value=2, max_value=12).map(lambda h: 2 * h))
def test_klee_multipole_roundtrip(n):
    g = G.klee(n)
    assert parse_multipole(write_multipole(g)).edge_list() == g.edge_list()
