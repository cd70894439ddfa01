from __future__ import annotations

from fractions import Fraction

import pytest

from idpoly.certificates import (
    INAPPLICABLE,
    NORMAL,
    NOT_NORMAL,
    ExceptionalPair,
    Witness,
    balanced_uniform_rule,
    bicolor_obstruction,
    decide_connected_odd,
    exceptional_witness,
    find_exceptional_pair,
    lift_witness,
    smallest_prime_factor,
    two_solvable_certificate,
)
from idpoly.hypergraph import (
    build_from_ideal,
    delete_edge,
    reduce_closed_fixpoint,
)
from idpoly.model import SquarefreeIdeal, polytope_from_ideal
from idpoly.oracle import decide_normal_bruteforce, verify_witness

HALF = Fraction(1, 2)


def test_smallest_prime_factor():
    assert smallest_prime_factor(2) == 2
    assert smallest_prime_factor(9) == 3
    assert smallest_prime_factor(35) == 5
    assert smallest_prime_factor(97) == 97


def test_witness_validation():
    with pytest.raises(ValueError, match="at least one coefficient"):
        Witness((), 0, (0,))
    with pytest.raises(ValueError, match="out of range"):
        Witness((Fraction(1),), 1, (1,))
    with pytest.raises(ValueError, match="out of range"):
        Witness((Fraction(-1, 2), HALF), 0, (0,))
    with pytest.raises(ValueError, match="do not sum to the degree"):
        Witness((HALF, HALF), 2, (1,))
    with pytest.raises(ValueError, match="not an integer"):
        Witness((HALF, HALF), 1, (Fraction(1, 2),))
    with pytest.raises(ValueError, match="nonnegative"):
        Witness((HALF, HALF), 1, (-1,))
    w = Witness((HALF, HALF), 1, (1, 0))
    assert w.degree == 1


def test_connected_odd_normal_odd_count(load_ideal):
    h = build_from_ideal(load_ideal("tri.ideal"))
    out = decide_connected_odd(h)
    assert out.status == NORMAL
    assert "vertex count 3 is odd" in out.reason
    assert out.witness is None


def test_connected_odd_normal_even_dimensional_edge(load_ideal):
    h = build_from_ideal(load_ideal("sixtri.ideal"))
    out = decide_connected_odd(h)
    assert out.status == NORMAL
    assert "edge (4, 5, 6) has even dimension 2" in out.reason


def test_connected_odd_not_normal(load_ideal):
    h = build_from_ideal(load_ideal("hex6.ideal"))
    out = decide_connected_odd(h)
    assert out.status == NOT_NORMAL
    assert out.reason == "vertex count 6 is even and every edge has odd dimension"
    assert out.witness == Witness(
        (HALF,) * 6, 3, (1, 1, 1, 1, 1, 1, 1)
    )
    poly = polytope_from_ideal(load_ideal("hex6.ideal"))
    assert verify_witness(poly, out.witness).valid


def test_connected_odd_inapplicable(load_ideal):
    disconnected = build_from_ideal(load_ideal("fig1.ideal"))
    assert decide_connected_odd(disconnected).status == INAPPLICABLE
    bipartite = build_from_ideal(load_ideal("fourcyc.ideal"))
    out = decide_connected_odd(bipartite)
    assert out.status == INAPPLICABLE
    assert "no odd cycle" in out.reason


def test_singleton_edge_counts_as_even_dimensional():
    # two triangles joined by a bridge, plus one label seeing only the
    # first generator: that singleton edge has dimension 0, flipping the
    # even-count verdict from not-normal to normal
    ideal = SquarefreeIdeal(
        ("a", "b", "c", "d", "e", "f", "g", "t"),
        (
            {"a", "b", "t"},
            {"a", "c"},
            {"b", "c", "d"},
            {"d", "e", "f"},
            {"e", "g"},
            {"f", "g"},
        ),
    )
    h = build_from_ideal(ideal)
    assert (1,) in h.edges
    out = decide_connected_odd(h)
    assert out.status == NORMAL
    assert "edge (1,) has even dimension 0" in out.reason
    # the brute-force oracle confirms the polytope really is normal
    verdict = decide_normal_bruteforce(polytope_from_ideal(ideal))
    assert verdict.status == "normal"


def test_balanced_uniform_rule(load_ideal):
    four = build_from_ideal(load_ideal("fourcyc.ideal"))
    out = balanced_uniform_rule(four)
    assert out.status == NORMAL
    assert "uniform generator degree 2" in out.reason

    tri = build_from_ideal(load_ideal("tri.ideal"))
    out = balanced_uniform_rule(tri)
    assert out.status == INAPPLICABLE
    assert "special odd cycle on vertices (1, 2, 3)" in out.reason

    from conftest import DATA
    from idpoly import parsing
    from idpoly.model import minimalize_generators

    poly = parsing.parse_matrix_text((DATA / "rem32.mat").read_text())
    gens = [
        frozenset(f"x{i + 1}" for i, bit in enumerate(row) if bit)
        for row in poly.vertices
    ]
    rem32 = build_from_ideal(
        minimalize_generators([f"x{i + 1}" for i in range(7)], gens)
    )
    out = balanced_uniform_rule(rem32)
    assert out.status == INAPPLICABLE
    assert out.reason == "generator degrees not uniform: (2,2,3,2,2,3)"


def test_two_solvable_certificate(load_ideal):
    solv = build_from_ideal(load_ideal("solv3.ideal"))
    cert = two_solvable_certificate(solv)
    assert cert is not None
    assert cert.prime == 3
    assert cert.colors == ("red", "blue", "red", "blue", "red", "blue")
    counts = {e: (r, b) for e, r, b in cert.edge_counts}
    assert counts[(1, 3, 5)] == (3, 0)

    k24 = build_from_ideal(load_ideal("k24.ideal"))
    cert = two_solvable_certificate(k24)
    assert cert is not None
    assert cert.prime == 2
    assert cert.totals in ((2, 4), (4, 2))

    hex6 = build_from_ideal(load_ideal("hex6.ideal"))
    assert two_solvable_certificate(hex6) is None


def test_bicolor_obstruction_solv3(load_ideal):
    h = build_from_ideal(load_ideal("solv3.ideal"))
    found = bicolor_obstruction(h)
    assert found is not None
    coloring, witness = found
    assert coloring.designated == ((1, 3, 5), 3, 0)
    assert witness.coefficients == (
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 3),
        Fraction(2, 3),
    )
    assert witness.degree == 3
    assert verify_witness(polytope_from_ideal(load_ideal("solv3.ideal")), witness).valid


def test_bicolor_no_obstruction_on_balanced_edges(load_ideal):
    # K_{2,4} is 2-solvable but every simple edge is balanced
    h = build_from_ideal(load_ideal("k24.ideal"))
    assert bicolor_obstruction(h) is None


def test_bicolor_requires_bipartite_skeleton(load_ideal):
    h = build_from_ideal(load_ideal("hex6.ideal"))
    assert bicolor_obstruction(h) is None


def test_exceptional_pair_bowtie(load_ideal):
    h = build_from_ideal(load_ideal("bowtie.ideal"))
    pair = find_exceptional_pair(h)
    assert pair is not None
    assert set(pair.cycle_one.vertices) == {1, 2, 3}
    assert set(pair.cycle_two.vertices) == {6, 7, 8}
    assert tuple(sorted(pair.special_one)) == (2, 3, 4)
    assert tuple(sorted(pair.special_two)) == (5, 6, 7)
    assert pair.connection == ((4, 5),)
    witness = exceptional_witness(h, pair)
    assert witness.coefficients == (HALF, HALF, HALF, 0, 0, HALF, HALF, HALF)
    assert witness.degree == 3
    assert verify_witness(polytope_from_ideal(load_ideal("bowtie.ideal")), witness).valid


@pytest.mark.parametrize("name,degree", [("ih1.ideal", 5), ("ih2.ideal", 5)])
def test_exceptional_pair_larger_instances(load_ideal, name, degree):
    h = build_from_ideal(load_ideal(name))
    pair = find_exceptional_pair(h)
    assert pair is not None
    witness = exceptional_witness(h, pair)
    assert witness.degree == degree
    assert verify_witness(polytope_from_ideal(load_ideal(name)), witness).valid


@pytest.mark.parametrize("name", ["tri.ideal", "fourcyc.ideal", "veiled.ideal"])
def test_exceptional_pair_absent(load_ideal, name):
    h = build_from_ideal(load_ideal(name))
    assert find_exceptional_pair(h) is None


def test_exceptional_pair_relaxed_connection(load_ideal):
    h = build_from_ideal(load_ideal("twin_d.ideal"))
    assert find_exceptional_pair(h) is None
    pair = find_exceptional_pair(h, relaxed=True)
    assert pair is not None
    assert pair.connection == ((4, 9), (5, 9))
    witness = exceptional_witness(h, pair)
    assert witness.degree == 3
    assert witness.point == (1, 1, 1, 1, 1, 1, 0, 0)


def test_exceptional_witness_rejects_foreign_pair(load_ideal):
    bowtie = build_from_ideal(load_ideal("bowtie.ideal"))
    pair = find_exceptional_pair(bowtie)
    other = build_from_ideal(load_ideal("tri.ideal"))
    with pytest.raises(ValueError):
        exceptional_witness(other, pair)


def test_exceptional_pair_structural_validation():
    from idpoly.hypergraph import Cycle

    c1 = Cycle((1, 2, 3), ((1, 2), (2, 3), (1, 3)))
    c2 = Cycle((4, 5, 6), ((4, 5), (5, 6), (4, 6)))
    with pytest.raises(ValueError, match="is not an edge of its cycle"):
        ExceptionalPair(c1, c2, (9, 10), (4, 5), ((7, 8),))
    with pytest.raises(ValueError, match="connection cannot be empty"):
        ExceptionalPair(c1, c2, (1, 2), (4, 5), ())
    with pytest.raises(ValueError, match="touches a cycle vertex"):
        ExceptionalPair(c1, c2, (1, 2), (4, 5), ((3, 7),))
    shared = Cycle((3, 7, 8), ((3, 7), (7, 8), (3, 8)))
    with pytest.raises(ValueError, match="share vertex 3"):
        ExceptionalPair(c1, shared, (1, 2), (7, 8), ((9, 10),))
    even = Cycle((1, 2, 3, 4), ((1, 2), (2, 3), (3, 4), (1, 4)))
    with pytest.raises(ValueError, match="odd"):
        ExceptionalPair(even, c2, (1, 2), (4, 5), ((7, 8),))


def test_lift_witness_through_reduction():
    # append a closed vertex to the bowtie: z divides only generator 9,
    # which reduces away, and the witness lifts back with a 0 coefficient
    ideal = SquarefreeIdeal(
        ("u1", "u2", "u3", "u4", "u5", "u6", "u7", "z"),
        (
            {"u1", "u2"},
            {"u1", "u3"},
            {"u2", "u3"},
            {"u3", "u4"},
            {"u4", "u5"},
            {"u5", "u6"},
            {"u5", "u7"},
            {"u6", "u7"},
            {"z", "u4"},
        ),
    )
    h = build_from_ideal(ideal)
    reduced, trace = reduce_closed_fixpoint(h)
    assert trace.rounds == (((9, "z"),),)
    assert reduced.num_vertices == 8
    pair = find_exceptional_pair(reduced)
    assert pair is not None
    small = exceptional_witness(reduced, pair)
    lifted = lift_witness(trace, small)
    assert lifted.coefficients == small.coefficients + (Fraction(0),)
    assert lifted.degree == small.degree
    assert verify_witness(polytope_from_ideal(ideal), lifted).valid


def test_lift_witness_through_minor(load_ideal):
    h = build_from_ideal(load_ideal("bowtie.ideal"))
    # deleting the connector edge leaves the two triangles; build a small
    # witness there and lift it back
    sub, trace = delete_edge(h, (4, 5))
    assert trace.surviving == (1, 2, 3, 6, 7, 8)
    small = Witness((HALF,) * 6, 3, (1, 1, 1, 0, 1, 1, 1))
    lifted = lift_witness(trace, small)
    assert lifted.coefficients == (HALF, HALF, HALF, 0, 0, HALF, HALF, HALF)
    assert lifted.point == (1, 1, 1, 0, 1, 1, 1)


def test_lift_witness_validation(load_ideal):
    h = build_from_ideal(load_ideal("bowtie.ideal"))
    _, trace = delete_edge(h, (4, 5))
    with pytest.raises(TypeError, match="cannot lift"):
        lift_witness("not a trace", Witness((HALF, HALF), 1, (1,)))
    with pytest.raises(ValueError, match="witness has 2 coefficients"):
        lift_witness(trace, Witness((HALF, HALF), 1, (1,)))
