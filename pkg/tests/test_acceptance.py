"""Acceptance criteria 1-12, one test each.

Every test prints a single ``[criterion N] PASS`` or ``FAIL`` line (shown even
when pytest captures output) and enforces its wall-clock limit.  Caches that
earlier tests may have filled are cleared first so timings are honest.
"""

from __future__ import annotations

import os
import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from cidc import generators as G
from cidc.boundary import (
    bilinear_form,
    enumerate_boundaries,
    join_count,
    join_matrix,
    multiplicity_vector,
    verify_bilinear,
)
from cidc.catalog import catalog_text, load_catalog
from cidc.cli import scan_records
from cidc.counting import count, count_assignments, count_backtrack, count_dp
from cidc.embedding import FLOWER_K_RANGE, flower_count_check, flower_formula
from cidc.graph import GraphError, bridges, edge_pole, expand_vertex, extract, glue, vertex_pole
from cidc.lp import run_cycle_lp
from cidc.reductions import certify_planar_bound, meets_planar_target, verify_certificate

from conftest import random_fragment

J5_NU = 45930  # all three engines; brute force took about seven minutes on one core


def clear_caches() -> None:
    for f in (enumerate_boundaries, join_count, join_matrix):
        f.cache_clear()


@pytest.fixture
def criterion(capsys):
    """Run a block under a time limit and print one PASS/FAIL line for it."""

    class Run:
        def __init__(self, num: int, title: str, limit: float) -> None:
            self.num, self.title, self.limit = num, title, limit
            self.detail = ""

        def __enter__(self) -> "Run":
            clear_caches()
            self.start = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb) -> bool:
            elapsed = time.perf_counter() - self.start
            ok = exc_type is None and elapsed < self.limit
            status = "PASS" if ok else "FAIL"
            why = "" if exc_type is None else f"; {exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            extra = f"; {self.detail}" if self.detail else ""
            with capsys.disabled():
                print(
                    f"\n[criterion {self.num}] {status}: {self.title} "
                    f"({elapsed:.1f}s, limit {self.limit:g}s{extra}{why})"
                )
            if exc_type is None and elapsed >= self.limit:
                pytest.fail(f"criterion {self.num} took {elapsed:.1f}s, limit {self.limit}s")
            return False

    return Run


def all_engines(g) -> tuple[int, int, int]:
    return int(count_assignments(g).value), int(count_backtrack(g).value), int(count_dp(g).value)


def test_criterion_01_base_counts(criterion):
    # compile (or load from the on-disk cache) the scan kernel outside the timed block
    count_assignments(G.three_star())
    with criterion(1, "nu(theta) = 1 and nu(K4) = 2 on all engines", 1) as c:
        assert all_engines(G.theta()) == (1, 1, 1)
        assert all_engines(G.k4()) == (2, 2, 2)
        c.detail = "theta 1, K4 2; one-time kernel compilation excluded"


def test_criterion_02_klee_tightness(criterion):
    with criterion(2, "nu(klee(n)) = 2^(n/2-1) for n = 4..16 with DP", 60) as c:
        got = {n: int(count_dp(G.klee(n)).value) for n in range(4, 17, 2)}
        assert got == {n: 2 ** (n // 2 - 1) for n in got}
        c.detail = f"klee(16) = {got[16]}"


def test_criterion_03_petersen(criterion):
    with criterion(3, "nu(Petersen) = 52, ratio 13/4", 1) as c:
        g = G.petersen()
        nu = int(count(g).value)
        ratio = Fraction(nu, 2 ** (g.n // 2 - 1))
        assert nu == 52 and ratio == Fraction(13, 4)
        c.detail = f"ratio {ratio}"


def test_criterion_04_boundary_census(criterion):
    with criterion(4, "|B^k| for k = 0..4 is (1, 0, 1, 1, 33)", 10) as c:
        sizes = tuple(len(enumerate_boundaries(k)) for k in range(5))
        assert sizes == (1, 0, 1, 1, 33)
        c.detail = f"sizes {sizes}"


def test_criterion_05_flower_counts(criterion):
    with criterion(5, "outer-fixed flower counts match the closed form, k = 3..8", 60) as c:
        counts = []
        for k in FLOWER_K_RANGE:
            res = flower_count_check(k)
            assert res.count == flower_formula(k) == (2 ** (k - 1) + (-1) ** k) // 3 + 1
            assert res.count >= 2 ** (k - 3) + 1
            counts.append(res.count)
        c.detail = f"counts {counts}"


@pytest.mark.parametrize(
    "cycle_len,mode,c4", [(4, "planar", Fraction(4)), (5, "planar", Fraction(5, 2)), (5, "all", Fraction(15, 4))]
)
def test_criterion_06_lp_certificates(criterion, cycle_len, mode, c4):
    with criterion(6, f"{cycle_len}-cycle {mode} LP optimum exactly 1 (c^4 = {c4})", 60) as c:
        res = run_cycle_lp(cycle_len, mode)
        assert res.c4 == c4
        assert res.optimum == 1 and res.certified == 1 and res.holds
        c.detail = f"{res.lp.num_variables} variables, {res.lp.num_constraints} constraints"


def test_criterion_07_oracle_equivalence(criterion):
    with criterion(7, "brute = backtrack = dp on the multigraph catalog and 200 random graphs", 600) as c:
        catalog = load_catalog("multigraphs", max_n=10)
        for g in catalog:
            a, b, d = all_engines(g)
            assert a == b == d, g
        rng = random.Random(7)
        zero = 0
        for _ in range(200):
            g = G.random_multipole(2 * rng.randint(1, 7), 0, rng)
            a, b, d = all_engines(g)
            assert a == b == d, g
            zero += a == 0
        c.detail = f"{len(catalog)} catalog graphs, 200 random ({zero} with nu = 0)"


def test_criterion_08_identity_suite(criterion):
    with criterion(8, "2-cut nu = 2 nu1 nu2, 3-cut nu = nu1 nu2, triangle doubles", 600) as c:
        rng = random.Random(8)
        pool = load_catalog("multigraphs", max_n=8) + load_catalog("simple", max_n=10)
        nu = {id(g): int(count(g).value) for g in pool}
        for _ in range(50):
            a, b = rng.choice(pool), rng.choice(pool)
            g = glue(edge_pole(a, rng.randrange(a.num_edges)), edge_pole(b, rng.randrange(b.num_edges)))
            assert int(count(g).value) == 2 * nu[id(a)] * nu[id(b)]
        for _ in range(50):
            a, b = rng.choice(pool), rng.choice(pool)
            order = tuple(rng.sample(range(3), 3))
            g = glue(vertex_pole(a, rng.randrange(a.n)), vertex_pole(b, rng.randrange(b.n), order))
            assert int(count(g).value) == nu[id(a)] * nu[id(b)]
        for _ in range(20):
            a = rng.choice(pool)
            assert int(count(expand_vertex(a, rng.randrange(a.n))).value) == 2 * nu[id(a)]
        c.detail = "50 + 50 + 20 instances"


def test_criterion_09_bilinearity(criterion):
    with criterion(9, "bilinear identity on 100 random loop-free 3- and 4-pole gluings", 600) as c:
        rng = random.Random(9)
        graphs = load_catalog("multigraphs", max_n=10) + load_catalog("simple", max_n=12)
        poles: dict[int, list] = {3: [], 4: []}
        while min(len(p) for p in poles.values()) < 60:
            g = rng.choice(graphs)
            side = random_fragment(g, rng, (3, 4))
            if side is not None:
                inner, outer = extract(g, side)
                poles[inner.k] += [inner, outer]
        done = {3: 0, 4: 0}
        while sum(done.values()) < 100:
            k = 3 if done[3] < 50 else 4
            a, b = rng.choice(poles[k]), rng.choice(poles[k])
            try:
                ok = verify_bilinear(a, b)
            except GraphError:
                continue  # this pairing would put a loop on a vertex
            assert ok
            done[k] += 1
        c.detail = f"{done[3]} 3-pole and {done[4]} 4-pole gluings"


def test_criterion_10_planar_bound(criterion):
    with criterion(10, "planar catalog: certificates verify and nu^4 >= (5/2)^(n-2)", 900) as c:
        graphs = load_catalog("planar", max_n=16)
        # parallel edges never affect planarity, so test the underlying simple graph
        multi = [
            g for g in load_catalog("multigraphs", max_n=10)
            if not g.is_simple() and not bridges(g)
            and nx.check_planarity(nx.Graph([g.endpoints(e) for e in g.links()]))[0]
        ]
        graphs = multi + graphs
        tight = 0
        for g in graphs:
            cert = certify_planar_bound(g)
            assert verify_certificate(cert), g
            nu = int(count(g).value)
            assert nu >= cert.bound
            assert nu ** 4 * 2 ** (g.n - 2) >= 5 ** (g.n - 2)
            assert meets_planar_target(g.n, nu)
            tight += nu == cert.bound
        c.detail = f"{len(graphs) - len(multi)} simple and {len(multi)} multigraphs, {tight} with nu equal to the certified bound"


def test_criterion_11_conjecture_scan(criterion):
    with criterion(11, "{C3,C4}-free biconnected n <= 14: min ratio 13/4 at Petersen", 1800) as c:
        records = list(scan_records(catalog_text("girth5").splitlines(), engine="dp"))
        assert all(not isinstance(r, tuple) for r in records)
        assert all(r.nu >= 2 ** (r.n // 2 - 1) for r in records)
        best = min(records, key=lambda r: (r.ratio, r.index))
        assert best.ratio == Fraction(13, 4) and best.n == 10 and best.nu == 52
        assert sum(r.ratio == best.ratio for r in records) == 1
        c.detail = f"{len(records)} graphs, min at index {best.index}"


def test_criterion_12_flower_snarks(criterion):
    with criterion(12, "J3 = 104 on all engines; J5 = 45930 by DP and by a 5-cut bilinear split", 600) as c:
        assert all_engines(G.flower_snark(3)) == (104, 104, 104)
        g = G.flower_snark(5)
        assert int(count_dp(g).value) == J5_NU
        inner, outer = extract(g, [1, 5, 9, 13, 17])
        assert inner.k == 5 and inner.n == 5
        split = bilinear_form(multiplicity_vector(inner), multiplicity_vector(outer))
        assert split == J5_NU
        if os.environ.get("CIDC_SLOW"):
            assert int(count_assignments(g).value) == J5_NU
        c.detail = "asymptotic growth statements are declared out of desk scale"
