"""Exact rational linear programming for small equality-form systems.

Two-phase primal simplex over exact rationals.  Bland's rule (always the
least eligible index) makes it immune to cycling, and every comparison is
exact, so "infeasible" and "unbounded" are definitive answers rather than
numerical judgments.  Problem sizes here are tiny (dozens of columns at
most); clarity wins over sparse cleverness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rationals import Backend, as_fraction, get_backend

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    """Outcome of a solve: status plus, when optimal, value and a vertex."""

    status: str
    objective: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None

    @property
    def is_feasible(self) -> bool:
        return self.status == OPTIMAL


def _pivot(tableau: list[list], basis: list[int], row: int, col: int) -> None:
    pivot = tableau[row][col]
    tableau[row] = [entry / pivot for entry in tableau[row]]
    pivot_row = tableau[row]
    for r, other in enumerate(tableau):
        if r == row:
            continue
        factor = other[col]
        if factor:
            tableau[r] = [a - factor * b for a, b in zip(other, pivot_row)]
    basis[row] = col


def _reduced_costs(tableau: list[list], basis: list[int], cost: list) -> list:
    reduced = list(cost)
    for i, b in enumerate(basis):
        weight = cost[b]
        if weight:
            row = tableau[i]
            for j in range(len(reduced)):
                if row[j]:
                    reduced[j] -= weight * row[j]
    return reduced


def _minimize(tableau: list[list], basis: list[int], cost: list, ncols: int) -> str:
    """Run simplex iterations in place; cost has one entry per column."""
    reduced = _reduced_costs(tableau, basis, cost)
    while True:
        enter = next((j for j in range(ncols) if reduced[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best_ratio = None
        for i, row in enumerate(tableau):
            coeff = row[enter]
            if coeff > 0:
                ratio = row[-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tableau, basis, leave, enter)
        reduced = _reduced_costs(tableau, basis, cost)
    # unreachable


def solve_lp(
    rows: Sequence[Sequence[object]],
    rhs: Sequence[object],
    objective: Sequence[object] | None = None,
    backend: Backend | None = None,
) -> LPResult:
    """Minimize objective · x subject to rows · x = rhs, x ≥ 0.

    With objective=None this is a pure feasibility test (objective 0).
    The returned solution is the basic feasible vertex the pivoting ends
    on, which is deterministic for fixed input.
    """
    be = backend or get_backend()
    ratio = be.ratio
    m = len(rows)
    n = len(rows[0]) if m else (len(objective) if objective else 0)
    if any(len(row) != n for row in rows):
        raise ValueError("constraint rows have inconsistent lengths")
    if len(rhs) != m:
        raise ValueError("right-hand side length does not match row count")
    if objective is not None and len(objective) != n:
        raise ValueError("objective length does not match column count")

    zero = ratio(0)
    one = ratio(1)
    body: list[list] = []
    for row, beta in zip(rows, rhs):
        r = [ratio(x) for x in row]
        b = ratio(beta)
        if b < 0:
            r = [-x for x in r]
            b = -b
        body.append(r + [b])

    if m == 0:
        if objective is not None and any(ratio(c) < 0 for c in objective):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))

    # phase one: artificial basis, minimize the sum of artificials
    tableau = [
        row[:-1] + [one if j == i else zero for j in range(m)] + [row[-1]]
        for i, row in enumerate(body)
    ]
    basis = list(range(n, n + m))
    phase1_cost = [zero] * n + [one] * m + [zero]
    status = _minimize(tableau, basis, phase1_cost, n + m)
    assert status == OPTIMAL, "phase one is always bounded below by zero"
    residue = sum(
        (tableau[i][-1] for i in range(m) if basis[i] >= n),
        zero,
    )
    if residue != 0:
        return LPResult(INFEASIBLE)

    # drive leftover artificials out of the basis; rows that cannot be
    # pivoted are redundant constraints and get dropped
    drop: list[int] = []
    for i in range(m):
        if basis[i] < n:
            continue
        col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if col is None:
            drop.append(i)
        else:
            _pivot(tableau, basis, i, col)
    if drop:
        tableau = [row for i, row in enumerate(tableau) if i not in set(drop)]
        basis = [b for i, b in enumerate(basis) if i not in set(drop)]
    tableau = [row[:n] + [row[-1]] for row in tableau]

    if objective is not None:
        cost = [ratio(c) for c in objective] + [zero]
        status = _minimize(tableau, basis, cost, n)
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED)
    else:
        cost = [zero] * (n + 1)

    values = {basis[i]: tableau[i][-1] for i in range(len(basis))}
    solution = tuple(as_fraction(values.get(j, zero)) for j in range(n))
    value = sum(
        (as_fraction(cost[j]) * solution[j] for j in range(n)),
        Fraction(0),
    )
    return LPResult(OPTIMAL, value, solution)
