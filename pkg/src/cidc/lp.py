"""Exact linear programs certifying cycle reductions.

For a gadget ``s`` and replacements ``R`` the program is

    minimise   o . m
    subject to a_r . m >= 1   for every r in R,   m >= 0,

with ``o = M h(s)`` and ``a_r = c4 * M h(r)``, where ``M`` is the join matrix
and ``h`` the multiplicity vector.  An optimum of at least 1 shows that
gluing any multipole to ``s`` has at least ``c4`` times the covers of the
worst replacement.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .boundary import Boundary, enumerate_boundaries, join_vector, multiplicity_vector
from .generators import cycle_pole
from .graph import CubicMultipole, GraphError


class LPError(ValueError):
    pass


class InfeasibleDualError(LPError):
    """A dual certificate violates a constraint; ``coordinate`` locates it."""

    def __init__(self, message: str, coordinate: int | None = None) -> None:
        super().__init__(message)
        self.coordinate = coordinate


@dataclass(frozen=True)
class ReductionLP:
    basis: tuple[Boundary, ...]
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    c4: Fraction
    names: tuple[str, ...] = ()

    @property
    def num_variables(self) -> int:
        return len(self.objective)

    @property
    def num_constraints(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class DualCertificate:
    multipliers: tuple[Fraction, ...]
    claimed_value: Fraction


def build_reduction_lp(
    s: CubicMultipole,
    replacements: Sequence[CubicMultipole],
    c4: Fraction | int | str,
    names: Sequence[str] | None = None,
) -> ReductionLP:
    c4 = Fraction(c4)
    if not replacements:
        raise LPError("at least one replacement is required")
    for r in replacements:
        if r.k != s.k:
            raise LPError(f"replacement has {r.k} semiedges, gadget has {s.k}")
        if s.n - r.n != 4:
            raise LPError(f"replacement removes {s.n - r.n} vertices; exactly 4 are required")
    basis = enumerate_boundaries(s.k)
    objective = tuple(join_vector(multiplicity_vector(s), basis))
    rows = tuple(
        tuple(c4 * x for x in join_vector(multiplicity_vector(r), basis)) for r in replacements
    )
    if names is None:
        names = tuple(f"r{i}" for i in range(len(replacements)))
    return ReductionLP(basis, objective, rows, c4, tuple(names))


def verify_dual(lp: ReductionLP, cert: DualCertificate) -> Fraction:
    """Check ``sum_r y_r a_r <= o`` and ``y >= 0``; return the certified lower bound ``sum y``."""
    y = [Fraction(v) for v in cert.multipliers]
    if len(y) != lp.num_constraints:
        raise InfeasibleDualError(f"expected {lp.num_constraints} multipliers, got {len(y)}")
    for r, v in enumerate(y):
        if v < 0:
            raise InfeasibleDualError(f"multiplier {r} is negative ({v})")
    for i, o in enumerate(lp.objective):
        lhs = sum((y[r] * lp.rows[r][i] for r in range(len(y))), Fraction(0))
        if lhs > o:
            raise InfeasibleDualError(
                f"coordinate {i} ({lp.basis[i] if i < len(lp.basis) else i}): {lhs} > {o}", i
            )
    total = sum(y, Fraction(0))
    if Fraction(cert.claimed_value) != total:
        raise InfeasibleDualError(f"claimed value {cert.claimed_value} differs from sum {total}")
    return total


# -- exact dual simplex -------------------------------------------------------------


@dataclass(frozen=True)
class LPSolution:
    optimum: Fraction
    primal: tuple[Fraction, ...]
    dual: DualCertificate
    pivots: int


def solve_min_geq(
    c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> LPSolution:
    """Minimise ``c.x`` subject to ``A x >= b``, ``x >= 0``, for ``c >= 0``.

    Dual simplex on a dense tableau with Bland's rule.  The slack basis is
    dual feasible because ``c >= 0``.
    """
    c = [Fraction(x) for x in c]
    if any(x < 0 for x in c):
        raise LPError("the dual simplex start needs a nonnegative objective")
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise LPError("dimension mismatch")
    width = n + m
    # rows: -A x + s = -b
    T = []
    for i in range(m):
        row = [-Fraction(x) for x in A[i]] + [Fraction(int(i == j)) for j in range(m)]
        T.append(row + [-Fraction(b[i])])
    cost = c + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    pivots = 0
    while True:
        leave = None
        for i in sorted(range(m), key=lambda i: basis[i]):
            if T[i][width] < 0:
                leave = i
                break
        if leave is None:
            break
        row = T[leave]
        enter = None
        best = None
        for j in range(width):
            if row[j] < 0:
                ratio = cost[j] / -row[j]
                if best is None or ratio < best:
                    best, enter = ratio, j
        if enter is None:
            raise LPError(f"the program is infeasible (row {leave})")
        piv = row[enter]
        T[leave] = [x / piv for x in row]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = cost[enter]
        if f != 0:
            cost = [x - f * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter
        pivots += 1
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][width]
    optimum = sum((ci * xi for ci, xi in zip(c, x[:n])), Fraction(0))
    y = tuple(cost[n + r] for r in range(m))
    return LPSolution(optimum, tuple(x[:n]), DualCertificate(y, sum(y, Fraction(0))), pivots)


def solve_exact(lp: ReductionLP) -> tuple[Fraction, DualCertificate]:
    sol = solve_min_geq(lp.objective, lp.rows, [Fraction(1)] * lp.num_constraints)
    bound = verify_dual(lp, sol.dual)
    if bound != sol.optimum:
        raise LPError(f"strong duality failed: primal {sol.optimum}, dual {bound}")
    return sol.optimum, sol.dual


# -- the shipped reductions ---------------------------------------------------------


C4_VALUES = {(4, "planar"): Fraction(4), (5, "planar"): Fraction(5, 2), (5, "all"): Fraction(15, 4)}


def cycle_lp(cycle_len: int, mode: str = "planar") -> ReductionLP:
    """The program for the 4-cycle (mode ignored) or 5-cycle reduction."""
    from .reductions import cycle4_poles, cycle5_poles

    if cycle_len == 4:
        poles = cycle4_poles()
        names = ["pairs (1,2)(3,4)", "pairs (2,3)(4,1)"]
        c4 = C4_VALUES[(4, "planar")]
    elif cycle_len == 5:
        if (5, mode) not in C4_VALUES:
            raise LPError(f"unknown 5-cycle mode {mode!r}")
        poles = cycle5_poles(mode)
        names = []
        for p in poles:
            iso = p.isolated()[0]
            a, b = (p.slot_of(d) for d in (2 * iso, 2 * iso + 1))
            names.append(f"edge ({a},{b})")
        c4 = C4_VALUES[(5, mode)]
    else:
        raise LPError("cycle length must be 4 or 5")
    try:
        return build_reduction_lp(cycle_pole(cycle_len), poles, c4, names)
    except GraphError as exc:
        raise LPError(str(exc)) from exc


@dataclass(frozen=True)
class CycleLPResult:
    cycle_len: int
    mode: str
    c4: Fraction
    optimum: Fraction
    certified: Fraction
    dual: DualCertificate
    lp: ReductionLP

    @property
    def holds(self) -> bool:
        return self.certified >= 1


def run_cycle_lp(cycle_len: int, mode: str = "planar") -> CycleLPResult:
    lp = cycle_lp(cycle_len, mode)
    optimum, dual = solve_exact(lp)
    certified = verify_dual(lp, dual)
    mode = "planar" if cycle_len == 4 else mode
    return CycleLPResult(cycle_len, mode, lp.c4, optimum, certified, dual, lp)


def check_theorem_lp(cycle_len: int, mode: str = "planar") -> bool:
    """End to end: gadgets, vectors, program, exact solve, dual check; true iff optimum >= 1."""
    return run_cycle_lp(cycle_len, mode).holds


# -- JSON -------------------------------------------------------------------------------


def _rat(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def lp_to_json(lp: ReductionLP, dual: DualCertificate | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "sense": "min",
        "c4": _rat(lp.c4),
        "variables": [str(b) for b in lp.basis],
        "objective": [_rat(x) for x in lp.objective],
        "constraints": [
            {"name": name, "coefficients": [_rat(x) for x in row], "rhs": _rat(Fraction(1))}
            for name, row in zip(lp.names, lp.rows)
        ],
    }
    if dual is not None:
        out["dual"] = {
            "multipliers": [_rat(y) for y in dual.multipliers],
            "value": _rat(dual.claimed_value),
        }
    return out
