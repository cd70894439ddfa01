"""Structural normality rules and the witnesses that back them.

Each detector either settles normality for a class of labeled hypergraphs
or declares itself inapplicable.  Every negative answer carries a Witness:
a rational combination in the half-open unit box whose point is integral
but admits no integral rewriting, which the oracle can replay without
trusting any of the structure theory here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .hypergraph import (
    BudgetExceeded,
    Cycle,
    LabeledHypergraph,
    MinorTrace,
    NotSeparatedError,
    ReductionTrace,
    find_special_odd_cycle,
    ideal_of,
)
from .model import generator_degrees
from .rationals import as_fraction

NORMAL = "normal"
NOT_NORMAL = "not_normal"
INAPPLICABLE = "inapplicable"
BUDGET_EXCEEDED = "budget_exceeded"

RED = "red"
BLUE = "blue"


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("need an integer >= 2")
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


@dataclass(frozen=True)
class Witness:
    """A degree-t rational combination that blocks normality.

    Coefficients live in [0, 1) and sum to the integer degree; the point
    is their integral combination of the polytope vertices.  Validity
    (membership plus non-decomposability) is the oracle's business, but
    the shape constraints are enforced here so a Witness is never
    structurally nonsensical.
    """

    coefficients: tuple[Fraction, ...]
    degree: int
    point: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(as_fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "degree", int(self.degree))
        pt = []
        for entry in self.point:
            value = as_fraction(entry)
            if value.denominator != 1:
                raise ValueError(f"point entry {value} is not an integer")
            pt.append(int(value))
        object.__setattr__(self, "point", tuple(pt))
        if not coeffs:
            raise ValueError("witness needs at least one coefficient")
        for c in coeffs:
            if c < 0 or c >= 1:
                raise ValueError(f"coefficient {c} out of range [0, 1)")
        if sum(coeffs) != self.degree:
            raise ValueError("coefficients do not sum to the degree")
        if self.degree < 0:
            raise ValueError("degree cannot be negative")
        if any(x < 0 for x in self.point):
            raise ValueError("point must be nonnegative")


@dataclass(frozen=True)
class RuleOutcome:
    """What a structural rule concluded, and why.

    status is one of normal / not_normal / inapplicable / budget_exceeded;
    only the first two are verdicts.  reason is human-readable and ends up
    in diagnostic reports verbatim.
    """

    status: str
    reason: str
    witness: Witness | None = None
    coloring: "TwoColoring | None" = None
    pair: "ExceptionalPair | None" = None

    @property
    def is_conclusive(self) -> bool:
        return self.status in (NORMAL, NOT_NORMAL)


@dataclass(frozen=True)
class TwoColoring:
    """A proper 2-coloring of the 1-skeleton with modular edge balance.

    edge_counts pairs every edge (canonical order) with its red/blue
    vertex counts; p divides every count difference as well as the total
    difference.  designated, when set, is the simple edge whose imbalance
    powers the obstruction witness.
    """

    colors: tuple[str, ...]
    edge_counts: tuple[tuple[tuple[int, ...], int, int], ...]
    totals: tuple[int, int]
    prime: int
    designated: tuple[tuple[int, ...], int, int] | None = None

    def __post_init__(self) -> None:
        for c in self.colors:
            if c not in (RED, BLUE):
                raise ValueError(f"unknown color {c!r}")
        p = self.prime
        if p < 2 or smallest_prime_factor(p) != p:
            raise ValueError(f"{p} is not prime")
        for edge, r, b in self.edge_counts:
            if (r - b) % p:
                raise ValueError(f"edge {edge} imbalance {r - b} not divisible by {p}")
        if (self.totals[0] - self.totals[1]) % p:
            raise ValueError("total imbalance not divisible by the prime")
        if self.designated is not None:
            _, r, b = self.designated
            if r == b:
                raise ValueError("designated edge must be unbalanced")

    def color_of(self, vertex: int) -> str:
        return self.colors[vertex - 1]


@dataclass(frozen=True)
class ExceptionalPair:
    """Two disjoint odd cycles, one fat simple edge each, and a connector.

    Cycle edges are ordinary 2-vertex edges except the designated simple
    edges, which meet the cycle vertices in exactly two vertices apiece.
    The connection is a chain of edges avoiding all cycle vertices that
    starts on special_one's off-cycle part and ends on special_two's.
    """

    cycle_one: Cycle
    cycle_two: Cycle
    special_one: tuple[int, ...]
    special_two: tuple[int, ...]
    connection: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        c1, c2 = self.cycle_one, self.cycle_two
        for cycle in (c1, c2):
            if len(cycle) < 3 or len(cycle) % 2 == 0:
                raise ValueError("cycles must be odd of length at least 3")
        v1, v2 = set(c1.vertices), set(c2.vertices)
        shared = v1 & v2
        if shared:
            raise ValueError(f"cycles share vertex {min(shared)}")
        e1 = {frozenset(e) for e in c1.edges}
        e2 = {frozenset(e) for e in c2.edges}
        if e1 & e2:
            raise ValueError("cycles share an edge")
        cycle_vertices = v1 | v2
        for cycle, special in ((c1, self.special_one), (c2, self.special_two)):
            fs = frozenset(special)
            if fs not in {frozenset(e) for e in cycle.edges}:
                raise ValueError(f"{special} is not an edge of its cycle")
            for e in cycle.edges:
                if frozenset(e) != fs and len(e) != 2:
                    raise ValueError(f"non-designated cycle edge {e} is not 1-dimensional")
            if len(fs & cycle_vertices) != 2:
                raise ValueError(
                    f"designated edge {special} must meet the cycles in exactly 2 vertices"
                )
        if not self.connection:
            raise ValueError("connection cannot be empty")
        for e in self.connection:
            if set(e) & cycle_vertices:
                raise ValueError(f"connection edge {e} touches a cycle vertex")
        chain = [set(e) for e in self.connection]
        for first, second in zip(chain, chain[1:]):
            if not first & second:
                raise ValueError("connection edges do not chain up")
        if not chain[0] & (set(self.special_one) - cycle_vertices):
            raise ValueError("connection does not reach the first designated edge")
        if not chain[-1] & (set(self.special_two) - cycle_vertices):
            raise ValueError("connection does not reach the second designated edge")

    @property
    def cycle_vertices(self) -> frozenset[int]:
        return frozenset(self.cycle_one.vertices) | frozenset(self.cycle_two.vertices)


def _require_separated(hypergraph: LabeledHypergraph) -> None:
    violation = hypergraph.separation_violation()
    if violation is not None:
        raise NotSeparatedError(violation)


def _label_powers(
    hypergraph: LabeledHypergraph, coefficients: Sequence[Fraction]
) -> list[Fraction]:
    return [
        sum((coefficients[v - 1] for v in image), Fraction(0))
        for _, image in hypergraph.labels
    ]


def _witness_from_coefficients(
    hypergraph: LabeledHypergraph, coefficients: Sequence[Fraction], degree: int
) -> Witness:
    powers = _label_powers(hypergraph, coefficients)
    return Witness(tuple(coefficients), degree, tuple(powers))


def decide_connected_odd(hypergraph: LabeledHypergraph) -> RuleOutcome:
    """Settle normality when the 1-skeleton is connected and non-bipartite.

    In that regime the hypergraph is normal exactly when the vertex count
    is odd or some edge has even dimension (odd vertex count, dimension
    |E| - 1); otherwise the all-halves combination is a witness.  Both
    directions are exact, so this is a decision, not a heuristic.
    """
    _require_separated(hypergraph)
    skeleton = hypergraph.one_skeleton()
    if not skeleton.is_connected:
        return RuleOutcome(INAPPLICABLE, "1-skeleton is not connected")
    if skeleton.is_bipartite:
        return RuleOutcome(INAPPLICABLE, "1-skeleton has no odd cycle")
    s = hypergraph.num_vertices
    if s % 2 == 1:
        return RuleOutcome(NORMAL, f"vertex count {s} is odd")
    for edge in hypergraph.edges:
        if len(edge) % 2 == 1:
            return RuleOutcome(
                NORMAL,
                f"edge {edge} has even dimension {len(edge) - 1}",
            )
    half = Fraction(1, 2)
    witness = _witness_from_coefficients(hypergraph, [half] * s, s // 2)
    return RuleOutcome(
        NOT_NORMAL,
        f"vertex count {s} is even and every edge has odd dimension",
        witness=witness,
    )


def balanced_uniform_rule(
    hypergraph: LabeledHypergraph, budget: int = 10**6
) -> RuleOutcome:
    """Normal when generators share one degree and no special odd cycle exists.

    Sufficient only: an inapplicable answer says nothing.  The uniformity
    check runs first because it is trivial, the cycle search second under
    the given node budget.
    """
    _require_separated(hypergraph)
    if hypergraph.num_vertices == 0:
        return RuleOutcome(INAPPLICABLE, "empty hypergraph")
    degrees = generator_degrees(ideal_of(hypergraph))
    if len(set(degrees)) != 1:
        listing = ",".join(str(d) for d in degrees)
        return RuleOutcome(
            INAPPLICABLE, f"generator degrees not uniform: ({listing})"
        )
    try:
        cycle = find_special_odd_cycle(hypergraph, budget=budget)
    except BudgetExceeded as exc:
        return RuleOutcome(BUDGET_EXCEEDED, str(exc))
    if cycle is not None:
        return RuleOutcome(
            INAPPLICABLE,
            f"special odd cycle on vertices {cycle.vertices}",
        )
    return RuleOutcome(
        NORMAL,
        f"balanced with uniform generator degree {degrees[0]}",
    )


def two_solvable_certificate(hypergraph: LabeledHypergraph) -> TwoColoring | None:
    """Proper 2-coloring with all edge imbalances divisible by one prime.

    Needs a connected bipartite 1-skeleton, whose coloring is then unique
    up to swapping; the smallest vertex is red.  Returns None when the
    skeleton disqualifies or when the imbalance gcd is 1.  A gcd of 0
    (everything balanced) admits every prime; 2 is reported.
    """
    if hypergraph.num_vertices == 0:
        return None
    coloring = hypergraph.one_skeleton().connected_coloring()
    if coloring is None:
        return None
    colors = tuple(
        RED if coloring[v] == 0 else BLUE for v in hypergraph.vertices
    )
    edge_counts = []
    for edge in hypergraph.edges:
        r = sum(1 for v in edge if colors[v - 1] == RED)
        edge_counts.append((edge, r, len(edge) - r))
    total_red = sum(1 for c in colors if c == RED)
    totals = (total_red, len(colors) - total_red)
    g = 0
    for _, r, b in edge_counts:
        g = gcd(g, abs(r - b))
    g = gcd(g, abs(totals[0] - totals[1]))
    if g == 1:
        return None
    prime = 2 if g == 0 else smallest_prime_factor(g)
    return TwoColoring(colors, tuple(edge_counts), totals, prime)


def bicolor_obstruction(
    hypergraph: LabeledHypergraph,
) -> tuple[TwoColoring, Witness] | None:
    """Unbalanced simple edge under a modular 2-coloring: not normal.

    When the hypergraph is 2-solvable for a prime p and some simple edge
    has unequal red/blue counts, assigning 1/p to red vertices and
    (p-1)/p to blue ones yields an integral point with no integral
    rewriting.  The designated edge is the first qualifying simple edge
    in canonical order.
    """
    _require_separated(hypergraph)
    certificate = two_solvable_certificate(hypergraph)
    if certificate is None:
        return None
    counts = {edge: (r, b) for edge, r, b in certificate.edge_counts}
    designated = None
    for simple in hypergraph.simple_edges():
        r, b = counts[simple.vertices]
        if r != b:
            designated = (simple.vertices, r, b)
            break
    if designated is None:
        return None
    p = certificate.prime
    completed = TwoColoring(
        certificate.colors,
        certificate.edge_counts,
        certificate.totals,
        p,
        designated,
    )
    coeffs = [
        Fraction(1, p) if c == RED else Fraction(p - 1, p)
        for c in certificate.colors
    ]
    degree = sum(coeffs)
    assert degree.denominator == 1, "2-solvability makes the total integral"
    witness = _witness_from_coefficients(hypergraph, coeffs, int(degree))
    return completed, witness


def _odd_cycle_candidates(
    hypergraph: LabeledHypergraph, budget: int
) -> list[tuple[tuple[int, ...], Cycle, tuple[int, ...]]]:
    """Odd cycles made of skeleton edges plus one fat simple edge.

    For each simple edge G with at least 3 vertices and each vertex pair
    x < y in G, enumerate even-length skeleton paths from x to y whose
    interior avoids G; the path closed by G is an odd cycle meeting G in
    exactly two vertices.  Deduplicated on (vertex set, G) and sorted by
    (size, vertex tuple, G).
    """
    adjacency = hypergraph.one_skeleton().adjacency
    found: dict[tuple[tuple[int, ...], tuple[int, ...]], Cycle] = {}
    nodes = budget

    def paths(x: int, y: int, forbidden: set[int]) -> Iterable[tuple[int, ...]]:
        stack: list[tuple[int, ...]] = [(x,)]
        nonlocal nodes
        while stack:
            if nodes <= 0:
                return
            nodes -= 1
            path = stack.pop()
            tip = path[-1]
            for w in reversed(adjacency[tip]):
                if w == y:
                    if len(path) % 2 == 0 and len(path) >= 2:
                        yield path + (y,)
                    continue
                if w in forbidden or w in path:
                    continue
                stack.append(path + (w,))

    for simple in hypergraph.simple_edges():
        g = simple.vertices
        if len(g) < 3:
            continue
        g_set = set(g)
        for x, y in combinations(g, 2):
            for path in paths(x, y, g_set):
                key = (tuple(sorted(path)), g)
                if key in found:
                    continue
                skeleton_edges = tuple(
                    tuple(sorted((path[i], path[i + 1])))
                    for i in range(len(path) - 1)
                )
                found[key] = Cycle(path, skeleton_edges + (g,))
    items = [
        (vertices, cycle, g) for (vertices, g), cycle in sorted(found.items())
    ]
    items.sort(key=lambda item: (len(item[0]), item[0], item[2]))
    return items


def _connection_between(
    hypergraph: LabeledHypergraph,
    cycle_vertices: frozenset[int],
    source: set[int],
    target: set[int],
    relaxed: bool,
) -> tuple[tuple[int, ...], ...] | None:
    """Chain of off-cycle edges from source vertices to target vertices."""
    outside = [
        e for e in hypergraph.edges if not cycle_vertices.intersection(e)
    ]
    if not relaxed:
        for e in outside:
            if source.intersection(e) and target.intersection(e):
                return (e,)
        return None
    # breadth-first over edges, expanding in canonical order
    queue: list[tuple[tuple[int, ...], ...]] = [
        (e,) for e in outside if source.intersection(e)
    ]
    seen = {chain[-1] for chain in queue}
    while queue:
        chain = queue.pop(0)
        last = set(chain[-1])
        if target & last:
            return chain
        for e in outside:
            if e not in seen and last.intersection(e):
                seen.add(e)
                queue.append(chain + (e,))
    return None


def find_exceptional_pair(
    hypergraph: LabeledHypergraph, relaxed: bool = False, budget: int = 200_000
) -> ExceptionalPair | None:
    """Search for two connected odd cycles forming an obstruction pattern.

    Candidate cycles consist of skeleton edges closed by one simple edge
    of 3+ vertices; pairs are tried smallest-first.  A pair qualifies when
    the cycles are fully disjoint, every edge of the hypergraph meets
    their union evenly, and a connector chain exists (a single edge by
    default, an edge path when relaxed).  The budget caps path-search
    nodes; on exhaustion the answer None means "none found", not "none
    exists".
    """
    candidates = _odd_cycle_candidates(hypergraph, budget)
    all_edges = hypergraph.edges
    for i in range(len(candidates)):
        vertices_one, cycle_one, g_one = candidates[i]
        set_one = frozenset(vertices_one)
        for j in range(i + 1, len(candidates)):
            vertices_two, cycle_two, g_two = candidates[j]
            set_two = frozenset(vertices_two)
            if set_one & set_two:
                continue
            union = set_one | set_two
            if set(g_one) & set_two or set(g_two) & set_one:
                continue
            if any(len(union.intersection(e)) % 2 for e in all_edges):
                continue
            connection = _connection_between(
                hypergraph,
                union,
                set(g_one) - union,
                set(g_two) - union,
                relaxed,
            )
            if connection is None:
                continue
            return ExceptionalPair(cycle_one, cycle_two, g_one, g_two, connection)
    return None


def exceptional_witness(
    hypergraph: LabeledHypergraph, pair: ExceptionalPair
) -> Witness:
    """All-halves combination on the pair's cycle vertices.

    Validates the pair against the hypergraph (edges exist, designated
    edges are simple, every edge meets the cycles evenly) and raises
    ValueError when anything fails; the evenness condition is exactly
    what makes the point integral.
    """
    edge_set = {frozenset(e) for e in hypergraph.edges}
    for cycle in (pair.cycle_one, pair.cycle_two):
        for e in cycle.edges:
            if frozenset(e) not in edge_set:
                raise ValueError(f"cycle edge {e} is not an edge of the hypergraph")
    simple = {s.vertices for s in hypergraph.simple_edges()}
    for g in (pair.special_one, pair.special_two):
        if tuple(sorted(g)) not in simple:
            raise ValueError(f"designated edge {g} is not a simple edge")
    for e in pair.connection:
        if frozenset(e) not in edge_set:
            raise ValueError(f"connection edge {e} is not an edge of the hypergraph")
    union = pair.cycle_vertices
    for e in hypergraph.edges:
        if len(union.intersection(e)) % 2:
            raise ValueError(
                f"edge {e} meets the cycles in an odd number of vertices"
            )
    coeffs = [
        Fraction(1, 2) if v in union else Fraction(0)
        for v in hypergraph.vertices
    ]
    return _witness_from_coefficients(hypergraph, coeffs, len(union) // 2)


def lift_witness(
    context: ReductionTrace | MinorTrace, witness: Witness
) -> Witness:
    """Transport a witness from a reduced or minor hypergraph to its parent.

    Removed vertices receive coefficient 0 and the point is recomputed
    over the parent's full label set.  A non-integral recomputed point
    means the witness does not belong to this trace and raises ValueError.
    """
    if isinstance(context, ReductionTrace):
        parent = context.original
    elif isinstance(context, MinorTrace):
        parent = context.parent
    else:
        raise TypeError(f"cannot lift through {type(context).__name__}")
    surviving = context.surviving
    if len(witness.coefficients) != len(surviving):
        raise ValueError(
            f"witness has {len(witness.coefficients)} coefficients but the "
            f"trace keeps {len(surviving)} vertices"
        )
    lifted = [Fraction(0)] * parent.num_vertices
    for reduced_index, original_vertex in enumerate(surviving):
        lifted[original_vertex - 1] = witness.coefficients[reduced_index]
    powers = _label_powers(parent, lifted)
    for name_power, (name, _) in zip(powers, parent.labels):
        if name_power.denominator != 1:
            raise ValueError(
                f"lifted point is not integral at label {name!r}; "
                "the witness does not match this trace"
            )
    return Witness(tuple(lifted), witness.degree, tuple(int(p) for p in powers))
