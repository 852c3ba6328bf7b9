"""Reductions that bound ν from below, and certificates built from them.

A certificate is a tree.  Inner nodes rewrite a graph into children along a
small cut, a triangle, or a short cycle, and combine the children's bounds
with an exact factor (product for cuts and triangles, minimum for cycles).
Leaves are the theta graph (ν = 1) and K4 (ν = 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .generators import isolated_pairs_pole, vertex_and_edge_pole
from .graph import (
    CubicMultipole,
    EdgeCut,
    GraphError,
    components,
    contract_cut_side,
    cut_edges,
    extract,
    find_small_cuts,
    glue,
    is_connected,
    is_induced_cycle,
    short_cycles,
)
from .io import ParseError, parse_multipole, write_multipole

PLANAR_BASE = Fraction(5, 2)
LEAF_NU = {"theta": 1, "K4": 2}
FACTORS = {
    "cut2": Fraction(2),
    "cut3": Fraction(1),
    "triangle": Fraction(2),
    "cycle4": Fraction(4),
    "cycle5": Fraction(5, 2),
}
CYCLE5_ALL_FACTOR = Fraction(15, 4)
COMBINE = {"cut2": "product", "cut3": "product", "triangle": "product", "cycle4": "minimum", "cycle5": "minimum"}


class ReductionError(GraphError):
    pass


# -- single rewrites ------------------------------------------------------------


def _require_c4c(g: CubicMultipole) -> None:
    if not g.is_graph or not is_connected(g):
        raise ReductionError("cycle reductions need a connected graph")
    if find_small_cuts(g) is not None:
        raise ReductionError("cyclic-connectivity precondition unmet: reduce small cuts first")


def _pendant_order(g: CubicMultipole, cyc: Sequence[int]) -> list[int]:
    inside = set(cyc)
    out = []
    for v in cyc:
        stubs = [e for e in g.incident_edges(v) if not set(g.endpoints(e)) <= inside]
        if len(stubs) != 1:
            raise ReductionError(f"cycle vertex {v} does not have exactly one pendant edge")
        out.append(stubs[0])
    return out


def _replace_cycle(g: CubicMultipole, cyc: Sequence[int], poles: Sequence[CubicMultipole]) -> list[CubicMultipole]:
    _, outer = extract(g, cyc, _pendant_order(g, cyc))
    return [glue(p, outer) for p in poles]


def cycle4_poles() -> list[CubicMultipole]:
    return [isolated_pairs_pole([(1, 2), (3, 4)]), isolated_pairs_pole([(2, 3), (4, 1)])]


def cycle5_poles(mode: str = "planar") -> list[CubicMultipole]:
    """Vertex-plus-edge 5-poles: edges on consecutive slots, then (mode ``all``) on slots two apart."""
    if mode not in ("planar", "all"):
        raise ValueError(f"mode must be 'planar' or 'all', not {mode!r}")
    poles = [vertex_and_edge_pole(5, (i + 1, (i + 1) % 5 + 1)) for i in range(5)]
    if mode == "all":
        poles += [vertex_and_edge_pole(5, (i + 1, (i + 2) % 5 + 1)) for i in range(5)]
    return poles


def replace_4cycle(g: CubicMultipole, cyc: Sequence[int]) -> list[CubicMultipole]:
    """Delete either pair of opposite cycle edges and suppress degree-2 vertices."""
    _require_c4c(g)
    if len(cyc) != 4 or not is_induced_cycle(g, cyc):
        raise ReductionError(f"{list(cyc)} is not an induced 4-cycle")
    return _replace_cycle(g, cyc, cycle4_poles())


def replace_5cycle(g: CubicMultipole, cyc: Sequence[int], mode: str = "planar") -> list[CubicMultipole]:
    """Contract the 5-cycle to a vertex joined to three stubs plus an edge on the other two."""
    _require_c4c(g)
    if len(cyc) != 5 or not is_induced_cycle(g, cyc):
        raise ReductionError(f"{list(cyc)} is not an induced 5-cycle")
    if next(short_cycles(g, 4), None) is not None:
        raise ReductionError("the graph has a 4-cycle; reduce it first")
    return _replace_cycle(g, cyc, cycle5_poles(mode))


def contract_triangle(g: CubicMultipole, tri: Sequence[int]) -> CubicMultipole:
    if len(tri) != 3 or not is_induced_cycle(g, tri):
        raise ReductionError(f"{list(tri)} is not a triangle")
    edges = cut_edges(g, tri)
    if len(edges) != 3:
        raise ReductionError("a triangle needs three pendant edges")
    return contract_cut_side(g, EdgeCut(frozenset(edges), frozenset(tri)), tri)


def split_cut(g: CubicMultipole, cut: EdgeCut) -> list[CubicMultipole]:
    """Both sides of a 2- or 3-cut: the shore kept (other side contracted), then the reverse."""
    other = [v for v in range(g.n) if v not in cut.side]
    return [contract_cut_side(g, cut, other), contract_cut_side(g, cut, cut.side)]


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    witness: tuple[tuple[int, int], ...]
    factor: Fraction
    combine: str
    children: tuple["Certificate", ...]


@dataclass(frozen=True)
class Certificate:
    graph: CubicMultipole
    bound: Fraction
    step: ReductionStep | None = None
    leaf: str | None = None
    nu: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.step is None

    def steps(self) -> list[ReductionStep]:
        """Reduction steps in preorder (step 1 is the root's)."""
        out: list[ReductionStep] = []
        stack: list[Certificate] = [self]
        while stack:
            node = stack.pop()
            if node.step is not None:
                out.append(node.step)
                stack.extend(reversed(node.step.children))
        return out

    def leaves(self) -> list["Certificate"]:
        if self.step is None:
            return [self]
        return [leaf for c in self.step.children for leaf in c.leaves()]


def combine_bounds(factor: Fraction, combine: str, bounds: Sequence[Fraction]) -> Fraction:
    if combine == "product":
        out = factor
        for b in bounds:
            out *= b
        return out
    if combine == "minimum":
        return factor * min(bounds)
    raise ValueError(f"unknown combine rule {combine!r}")


def meets_planar_target(n: int, bound: Fraction | int) -> bool:
    """Whether ``bound >= (5/2)**((n - 2)/4)``, decided as ``bound**4 >= (5/2)**(n - 2)``."""
    b = Fraction(bound)
    return b >= 0 and b ** 4 >= PLANAR_BASE ** (n - 2)


def leaf_kind(g: CubicMultipole) -> str | None:
    if not g.is_graph:
        return None
    if g.n == 2 and g.num_edges == 3:
        return "theta"
    if g.n == 4 and g.is_simple() and g.num_edges == 6:
        return "K4"
    return None


def _edge_pairs(g: CubicMultipole, edges: Sequence[int], inside: set[int] | None = None) -> tuple[tuple[int, int], ...]:
    out = []
    for e in edges:
        a, b = g.endpoints(e)
        if inside is not None and b in inside and a not in inside:
            a, b = b, a
        out.append((a, b))
    return tuple(out)


def _cycle_pairs(cyc: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def _leaf(g: CubicMultipole, kind: str) -> Certificate:
    return Certificate(g, Fraction(LEAF_NU[kind]), leaf=kind, nu=LEAF_NU[kind])


def _node(g: CubicMultipole, kind: str, witness, factor: Fraction, children: list[Certificate]) -> Certificate:
    combine = COMBINE[kind]
    bound = combine_bounds(factor, combine, [c.bound for c in children])
    return Certificate(g, bound, ReductionStep(kind, witness, factor, combine, tuple(children)))


def certify_planar_bound(g: CubicMultipole, use_triangle: bool = False) -> Certificate:
    """Certificate that ν(g) >= (5/2)**(n/4 - 1/2) for a bridgeless planar cubic graph.

    Planarity is assumed, not checked.  Steps follow the priority 2-cut,
    non-trivial 3-cut, (optionally) triangle, 4-cycle, 5-cycle.
    """
    if not g.is_graph:
        raise ReductionError("certificates are built for graphs")
    if not is_connected(g):
        raise ReductionError("graph is disconnected")
    kind = leaf_kind(g)
    if kind is not None:
        return _leaf(g, kind)
    if use_triangle:
        tri = next(short_cycles(g, 3), None)
        if tri is not None and len(cut_edges(g, tri)) == 3:
            child = certify_planar_bound(contract_triangle(g, tri), use_triangle)
            return _node(g, "triangle", _cycle_pairs(tri), FACTORS["triangle"], [child])
    cut = find_small_cuts(g)
    if cut is not None:
        if cut.size == 1:
            raise ReductionError("graph has a bridge, so it has no circuit double cover")
        kind = "cut2" if cut.size == 2 else "cut3"
        witness = _edge_pairs(g, sorted(cut.edges), set(cut.side))
        children = [certify_planar_bound(h, use_triangle) for h in split_cut(g, cut)]
        return _node(g, kind, witness, FACTORS[kind], children)
    cyc = next(short_cycles(g, 4), None)
    if cyc is not None:
        children = [certify_planar_bound(h, use_triangle) for h in replace_4cycle(g, cyc)]
        return _node(g, "cycle4", _cycle_pairs(cyc), FACTORS["cycle4"], children)
    cyc = next(short_cycles(g, 5), None)
    if cyc is not None:
        children = [certify_planar_bound(h, use_triangle) for h in replace_5cycle(g, cyc, "planar")]
        return _node(g, "cycle5", _cycle_pairs(cyc), FACTORS["cycle5"], children)
    raise ReductionError(
        "non-planar witness or internal error: cyclically 4-edge-connected graph "
        f"on {g.n} vertices without a cycle of length at most five"
    )


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


class _Invalid(Exception):
    pass


def _pick_edges(g: CubicMultipole, pairs: Sequence[Sequence[int]]) -> list[int]:
    """Distinct edge ids realising the endpoint pairs (parallel edges are interchangeable)."""
    used: set[int] = set()
    out = []
    for pair in pairs:
        if len(pair) != 2:
            raise _Invalid("witness entries must be vertex pairs")
        u, v = pair
        cands = [
            e for e in g.links()
            if e not in used and sorted(g.endpoints(e)) == sorted((u, v))
        ]
        if not cands:
            raise _Invalid(f"witness edge ({u},{v}) is not in the graph")
        used.add(cands[0])
        out.append(cands[0])
    return out


def _expected_children(g: CubicMultipole, step: ReductionStep) -> list[CubicMultipole]:
    kind = step.kind
    w = step.witness
    if kind in ("cut2", "cut3"):
        size = 2 if kind == "cut2" else 3
        if len(w) != size:
            raise _Invalid(f"{kind} witness has {len(w)} edges")
        edges = _pick_edges(g, w)
        comps = components(g, edges)
        if len(comps) != 2:
            raise _Invalid("witness edges do not split the graph in two")
        shore = next(c for c in comps if w[0][0] in c)
        if set(cut_edges(g, shore)) != set(edges) or any(u not in shore for u, _ in w):
            raise _Invalid("witness is not an edge cut with a consistent shore")
        if kind == "cut3" and (len(shore) == 1 or len(shore) == g.n - 1):
            raise _Invalid("3-cut witness is trivial")
        return split_cut(g, EdgeCut(frozenset(edges), frozenset(shore)))
    cyc = [u for u, _ in w]
    if kind == "triangle":
        if len(cyc) != 3:
            raise _Invalid("triangle witness must have three edges")
        if any(w[i][1] != w[(i + 1) % len(w)][0] for i in range(len(w))):
            raise _Invalid("witness edges are not a closed cycle")
        return [contract_triangle(g, cyc)]
    if any(w[i][1] != w[(i + 1) % len(w)][0] for i in range(len(w))):
        raise _Invalid("witness edges are not a closed cycle")
    if kind == "cycle4":
        return replace_4cycle(g, cyc)
    if kind == "cycle5":
        return replace_5cycle(g, cyc, "planar")
    raise _Invalid(f"unknown step kind {kind!r}")


def _check(node: Certificate, counter: list[int]) -> Fraction:
    g = node.graph
    if node.step is None:
        kind = leaf_kind(g)
        if node.leaf not in LEAF_NU:
            raise _Invalid(f"unknown leaf {node.leaf!r}")
        if kind != node.leaf:
            raise _Invalid(f"leaf graph is not {node.leaf}")
        if node.nu != LEAF_NU[node.leaf]:
            raise _Invalid(f"leaf {node.leaf} claims nu = {node.nu}, expected {LEAF_NU[node.leaf]}")
        if node.bound != node.nu:
            raise _Invalid(f"leaf {node.leaf} bound {node.bound} differs from nu")
        return Fraction(node.nu)
    counter[0] += 1
    idx = counter[0]
    step = node.step
    try:
        if step.kind not in FACTORS:
            raise _Invalid(f"unknown step kind {step.kind!r}")
        if step.factor != FACTORS[step.kind]:
            raise _Invalid("factor mismatch")
        if step.combine != COMBINE[step.kind]:
            raise _Invalid("combine rule mismatch")
        try:
            expected = _expected_children(g, step)
        except GraphError as exc:
            raise _Invalid(f"precondition failed: {exc}") from None
        if len(expected) != len(step.children):
            raise _Invalid(f"expected {len(expected)} children, found {len(step.children)}")
        for i, (h, c) in enumerate(zip(expected, step.children)):
            if h.signature() != c.graph.signature():
                raise _Invalid(f"child {i + 1} does not match the rewrite")
    except _Invalid as exc:
        raise _Invalid(f"step {idx} {exc}") from None
    bounds = [_check(c, counter) for c in step.children]
    bound = combine_bounds(step.factor, step.combine, bounds)
    if bound != node.bound:
        raise _Invalid(f"step {idx} bound mismatch: recorded {node.bound}, recomputed {bound}")
    return bound


def verify_certificate(cert: Certificate, check_target: bool = True) -> Verdict:
    """Replay every rewrite and the bound arithmetic; never raises on bad input."""
    try:
        bound = _check(cert, [0])
    except _Invalid as exc:
        return Verdict(False, f"INVALID: {exc}")
    except (GraphError, ValueError) as exc:
        return Verdict(False, f"INVALID: {exc}")
    if check_target and not meets_planar_target(cert.graph.n, bound):
        return Verdict(False, f"INVALID: bound {bound} is below (5/2)^(({cert.graph.n}-2)/4)")
    return Verdict(True)


# -- JSON -------------------------------------------------------------------------


def _rat(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def _unrat(d: Any) -> Fraction:
    if not isinstance(d, dict) or not isinstance(d.get("num"), int) or not isinstance(d.get("den"), int):
        raise ParseError(f"bad rational {d!r}")
    if d["den"] == 0:
        raise ParseError("zero denominator")
    return Fraction(d["num"], d["den"])


def node_to_json(node: Certificate) -> dict[str, Any]:
    out: dict[str, Any] = {"graph": write_multipole(node.graph), "bound": _rat(node.bound)}
    if node.step is None:
        out["leaf"] = node.leaf
        out["nu"] = node.nu
    else:
        s = node.step
        out["steps"] = [{
            "kind": s.kind,
            "witness": [list(p) for p in s.witness],
            "factor": _rat(s.factor),
            "combine": s.combine,
            "children": [node_to_json(c) for c in s.children],
        }]
    return out


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    out = node_to_json(cert)
    out["assumption"] = "planar"
    out["target"] = {"base": _rat(PLANAR_BASE), "exponent": {"num": cert.graph.n - 2, "den": 4}}
    return out


def certificate_from_json(data: Any) -> Certificate:
    if not isinstance(data, dict) or "graph" not in data or "bound" not in data:
        raise ParseError("certificate node needs 'graph' and 'bound'")
    g = parse_multipole(data["graph"])
    bound = _unrat(data["bound"])
    if "leaf" in data:
        nu = data.get("nu")
        if not isinstance(nu, int):
            raise ParseError("leaf needs an integer 'nu'")
        return Certificate(g, bound, leaf=data["leaf"], nu=nu)
    steps = data.get("steps")
    if not isinstance(steps, list) or len(steps) != 1 or not isinstance(steps[0], dict):
        raise ParseError("inner node needs exactly one step")
    s = steps[0]
    try:
        witness = tuple(tuple(int(x) for x in p) for p in s["witness"])
        step = ReductionStep(
            str(s["kind"]),
            witness,
            _unrat(s["factor"]),
            str(s["combine"]),
            tuple(certificate_from_json(c) for c in s["children"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed step: {exc}") from None
    return Certificate(g, bound, step)


# -- standalone inequality checks ---------------------------------------------------


@dataclass(frozen=True)
class InequalityCheck:
    nu: int
    child_nus: tuple[int, ...]
    factor: Fraction
    holds: bool


def check_cycle_inequality(g: CubicMultipole, cyc: Sequence[int], mode: str = "planar") -> InequalityCheck:
    """Count ν(g) and its cycle replacements; test ν(g) >= factor * min child ν."""
    from .counting import count

    if len(cyc) == 4:
        children, factor = replace_4cycle(g, cyc), FACTORS["cycle4"]
    elif len(cyc) == 5:
        children = replace_5cycle(g, cyc, mode)
        factor = FACTORS["cycle5"] if mode == "planar" else CYCLE5_ALL_FACTOR
    else:
        raise ReductionError("only 4- and 5-cycles have reductions")
    nu = int(count(g).value)
    nus = tuple(int(count(h).value) for h in children)
    return InequalityCheck(nu, nus, factor, nu >= factor * min(nus))
