"""Ground-truth normality decisions by exhaustive exact search.

Normality of a 0-1 polytope P says every integer point of every dilation
tP is a sum of t vertices.  Because any fractional vertex combination
with coefficients below 1 has degree at most s-1, and generation degrees
beyond dim(P)-1 add nothing, scanning a finite range of dilations decides
the question outright.  Everything here is exact rational arithmetic; a
verdict from this module is a theorem about the input, not an estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .certificates import Witness
from .model import ZeroOnePolytope
from .rationals import Backend
from .simplex import solve_lp

NORMAL = "normal"
NOT_NORMAL = "not_normal"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RationalCombination:
    """Nonnegative rational vertex multipliers summing to the degree."""

    coefficients: tuple[Fraction, ...]
    degree: int


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of the brute-force scan.

    degrees_checked lists every dilation examined, in order; bound is the
    completeness bound the scan would need to be a full decision, and
    max_degree echoes a user override.  status is inconclusive only when
    such an override truncated the scan below the bound.
    """

    status: str
    witness: Witness | None
    degrees_checked: tuple[int, ...]
    points_examined: int
    bound: int
    max_degree: int | None = None


@dataclass(frozen=True)
class VerificationResult:
    """Valid, or invalid with the first failed clause spelled out."""

    valid: bool
    reason: str | None = None
    witness: Witness | None = None


def completeness_bound(polytope: ZeroOnePolytope) -> int:
    """Largest dilation that must be scanned for a definitive verdict.

    Coefficients below 1 cap witness degrees at s-1; the affine dimension
    caps the generation degree of the lattice points at dim-1.  The
    smaller of the two wins, and anything below 2 means there is nothing
    to check at all.
    """
    s = polytope.num_vertices
    return min(s - 1, max(1, polytope.affine_dimension - 1))


def _membership_system(
    polytope: ZeroOnePolytope, point: Sequence[int], degree: int
) -> tuple[list[list[int]], list[int]]:
    s = polytope.num_vertices
    rows: list[list[int]] = [[1] * s]
    rhs: list[int] = [degree]
    for j in range(polytope.ambient_dim):
        rows.append([polytope.vertices[i][j] for i in range(s)])
        rhs.append(point[j])
    return rows, rhs


def lp_membership(
    polytope: ZeroOnePolytope,
    point: Sequence[int],
    degree: int,
    backend: Backend | None = None,
) -> RationalCombination | None:
    """Exact feasibility of point ∈ degree·P, with the combination found.

    None means definitively infeasible.  The returned coefficients are
    the basic solution the pivoting lands on, deterministic per input.
    """
    if len(point) != polytope.ambient_dim:
        raise ValueError(
            f"point has {len(point)} coordinates, polytope lives in "
            f"dimension {polytope.ambient_dim}"
        )
    if degree < 0:
        raise ValueError("degree cannot be negative")
    rows, rhs = _membership_system(polytope, point, degree)
    result = solve_lp(rows, rhs, backend=backend)
    if not result.is_feasible:
        return None
    return RationalCombination(result.solution, degree)


def enumerate_lattice_points(
    polytope: ZeroOnePolytope, degree: int, backend: Backend | None = None
) -> list[tuple[int, ...]]:
    """All integer points of the dilation degree·P, lexicographically.

    Coordinates are fixed left to right; each coordinate's admissible
    integers come from exact minimum/maximum feasibility subproblems, so
    no candidate box scan and no rounding is involved.
    """
    if degree < 0:
        raise ValueError("degree cannot be negative")
    n = polytope.ambient_dim
    s = polytope.num_vertices
    out: list[tuple[int, ...]] = []

    def descend(prefix: list[int]) -> None:
        j = len(prefix)
        if j == n:
            out.append(tuple(prefix))
            return
        rows: list[list[int]] = [[1] * s]
        rhs: list[int] = [degree]
        for k in range(j):
            rows.append([polytope.vertices[i][k] for i in range(s)])
            rhs.append(prefix[k])
        objective = [polytope.vertices[i][j] for i in range(s)]
        low = solve_lp(rows, rhs, objective, backend=backend)
        if not low.is_feasible:
            return
        high = solve_lp(rows, rhs, [-c for c in objective], backend=backend)
        for value in range(ceil(low.objective), floor(-high.objective) + 1):
            descend(prefix + [value])

    descend([])
    return out


def integer_decomposition(
    polytope: ZeroOnePolytope, point: Sequence[int], degree: int
) -> tuple[int, ...] | None:
    """Nonnegative integer vertex multiplicities hitting the point exactly.

    Backtracks over vertices in input order with ascending multiplicity,
    so a returned vector is the lexicographically least decomposition.
    Pruning: per-vertex caps from remaining coordinates, a failure memo,
    and a coverage check that the leftover support is still reachable.
    """
    n = polytope.ambient_dim
    if len(point) != n:
        raise ValueError("point dimension mismatch")
    if degree < 0:
        return None
    s = polytope.num_vertices
    supports = [
        frozenset(j for j in range(n) if polytope.vertices[i][j])
        for i in range(s)
    ]
    reachable: list[frozenset[int]] = [frozenset()] * (s + 1)
    for i in range(s - 1, -1, -1):
        reachable[i] = reachable[i + 1] | supports[i]
    dead: set[tuple[int, tuple[int, ...], int]] = set()

    def search(
        index: int, remaining: tuple[int, ...], budget: int
    ) -> list[int] | None:
        if budget == 0:
            return [0] * (s - index) if not any(remaining) else None
        if index == s:
            return None
        key = (index, remaining, budget)
        if key in dead:
            return None
        positive = {j for j, r in enumerate(remaining) if r}
        if not positive <= reachable[index]:
            dead.add(key)
            return None
        cap = budget
        for j in supports[index]:
            cap = min(cap, remaining[j])
        for count in range(cap + 1):
            if count:
                remaining = tuple(
                    r - 1 if j in supports[index] else r
                    for j, r in enumerate(remaining)
                )
            tail = search(index + 1, remaining, budget - count)
            if tail is not None:
                return [count] + tail
        dead.add(key)
        return None

    found = search(0, tuple(int(x) for x in point), degree)
    return tuple(found) if found is not None else None


def decide_normal_bruteforce(
    polytope: ZeroOnePolytope,
    max_degree: int | None = None,
    backend: Backend | None = None,
) -> OracleVerdict:
    """Scan dilations 2..bound for an undecomposable integer point.

    The first failing point (least degree, lexicographically least point)
    becomes the witness, with coefficients taken from the exact membership
    solve; at the least failing degree those coefficients automatically
    stay below 1.  A clean scan up to the completeness bound proves
    normality; a scan truncated by max_degree below the bound is reported
    inconclusive rather than guessed.
    """
    bound = completeness_bound(polytope)
    limit = bound if max_degree is None else max_degree
    checked: list[int] = []
    points_examined = 0
    for degree in range(2, limit + 1):
        checked.append(degree)
        for point in enumerate_lattice_points(polytope, degree, backend=backend):
            points_examined += 1
            if integer_decomposition(polytope, point, degree) is None:
                combination = lp_membership(polytope, point, degree, backend=backend)
                assert combination is not None, "failing point came from the dilation"
                witness = Witness(combination.coefficients, degree, point)
                return OracleVerdict(
                    NOT_NORMAL,
                    witness,
                    tuple(checked),
                    points_examined,
                    bound,
                    max_degree,
                )
    status = NORMAL if limit >= bound else INCONCLUSIVE
    return OracleVerdict(
        status, None, tuple(checked), points_examined, bound, max_degree
    )


def verify_coefficients(
    polytope: ZeroOnePolytope,
    coefficients: Sequence[Fraction],
    backend: Backend | None = None,
) -> VerificationResult:
    """Check a raw coefficient vector against every witness requirement.

    Clauses, in order: count, range [0,1), integral sum, integral point,
    membership replay, and absence of any integer decomposition.  The
    first failure is reported; success returns the assembled Witness.
    """
    s = polytope.num_vertices
    coeffs = tuple(Fraction(c) for c in coefficients)
    if len(coeffs) != s:
        return VerificationResult(
            False,
            f"coefficient count mismatch: got {len(coeffs)}, "
            f"polytope has {s} vertices",
        )
    for c in coeffs:
        if c < 0 or c >= 1:
            return VerificationResult(False, f"coefficient {c} out of range [0, 1)")
    total = sum(coeffs)
    if total.denominator != 1:
        return VerificationResult(
            False, f"coefficient sum {total} is not an integer"
        )
    degree = int(total)
    powers = [
        sum(
            (coeffs[i] * polytope.vertices[i][j] for i in range(s)),
            Fraction(0),
        )
        for j in range(polytope.ambient_dim)
    ]
    if any(p.denominator != 1 for p in powers):
        return VerificationResult(False, "point not integral")
    point = tuple(int(p) for p in powers)
    if lp_membership(polytope, point, degree, backend=backend) is None:
        return VerificationResult(
            False, "membership replay failed for the derived point"
        )
    decomposition = integer_decomposition(polytope, point, degree)
    if decomposition is not None:
        return VerificationResult(
            False,
            f"point admits the integer decomposition {decomposition}",
        )
    return VerificationResult(True, None, Witness(coeffs, degree, point))


def verify_witness(
    polytope: ZeroOnePolytope,
    witness: Witness,
    backend: Backend | None = None,
) -> VerificationResult:
    """Full check of a structured witness, including its declared fields."""
    result = verify_coefficients(polytope, witness.coefficients, backend=backend)
    if not result.valid:
        return result
    derived = result.witness
    assert derived is not None
    if witness.degree != derived.degree:
        return VerificationResult(
            False,
            f"declared degree {witness.degree} does not match "
            f"coefficient sum {derived.degree}",
        )
    if witness.point != derived.point:
        return VerificationResult(
            False, "declared point does not match the coefficient combination"
        )
    return result
