from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idpoly.rationals import available_backends
from idpoly.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS, ids=[b.name for b in BACKENDS])
def backend(request):
    return request.param


def test_feasibility_basic(backend):
    # x1 + x2 = 1 with x >= 0 is feasible
    res = solve_lp([[1, 1]], [1], backend=backend)
    assert res.status == OPTIMAL
    assert sum(res.solution) == 1
    assert all(x >= 0 for x in res.solution)


def test_infeasible_negative_rhs_balance(backend):
    # x1 = 1 and x1 = 2 cannot both hold
    res = solve_lp([[1], [1]], [1, 2], backend=backend)
    assert res.status == INFEASIBLE


def test_unbounded_direction(backend):
    # minimize -x1 subject to x1 - x2 = 0: both can grow forever
    res = solve_lp([[1, -1]], [0], objective=[-1, 0], backend=backend)
    assert res.status == UNBOUNDED


def test_no_constraints_zero_objective(backend):
    res = solve_lp([], [], objective=[1, 1], backend=backend)
    assert res.status == OPTIMAL
    assert res.solution == (Fraction(0), Fraction(0))


def test_no_constraints_negative_objective_unbounded(backend):
    res = solve_lp([], [], objective=[-1], backend=backend)
    assert res.status == UNBOUNDED


def test_exact_thirds(backend):
    # 3x = 1 forces x = 1/3 exactly; float arithmetic would not survive
    # the equality replay below
    res = solve_lp([[3]], [1], backend=backend)
    assert res.status == OPTIMAL
    assert res.solution == (Fraction(1, 3),)
    assert 3 * res.solution[0] == 1


def test_optimal_value_and_solution(backend):
    # minimize x1 + x2 with x1 + 2*x2 = 2: best is x = (0, 1)
    res = solve_lp([[1, 2]], [2], objective=[1, 1], backend=backend)
    assert res.status == OPTIMAL
    assert res.objective == 1
    assert res.solution == (Fraction(0), Fraction(1))


def test_solution_satisfies_constraints_exactly(backend):
    rows = [[1, 1, 1, 0], [0, 1, 2, 1], [1, 0, 0, 3]]
    rhs = [3, 4, 2]
    res = solve_lp(rows, rhs, objective=[1, 2, 0, 1], backend=backend)
    assert res.status == OPTIMAL
    for row, b in zip(rows, rhs):
        assert sum(Fraction(a) * x for a, x in zip(row, res.solution)) == b


def test_fractional_input(backend):
    res = solve_lp([[Fraction(1, 2), 1]], [Fraction(3, 4)], backend=backend)
    assert res.status == OPTIMAL
    lhs = Fraction(1, 2) * res.solution[0] + res.solution[1]
    assert lhs == Fraction(3, 4)


def test_shape_validation(backend):
    with pytest.raises(ValueError, match="inconsistent lengths"):
        solve_lp([[1, 2], [1]], [1, 1], backend=backend)
    with pytest.raises(ValueError, match="right-hand side"):
        solve_lp([[1, 2]], [1, 2], backend=backend)
    with pytest.raises(ValueError, match="objective length"):
        solve_lp([[1, 2]], [1], objective=[1], backend=backend)


def test_membership_style_system(backend):
    # is (1,1,1,1,1,1,1) at degree 3 a combination of the six rows of the
    # counterexample matrix?  u4 homogenizing row makes it unique: all 1/2
    vertices = [
        (1, 1, 0, 0, 0, 0, 0),
        (1, 0, 1, 0, 0, 0, 0),
        (0, 1, 1, 0, 0, 0, 1),
        (0, 0, 0, 1, 1, 0, 0),
        (0, 0, 0, 1, 0, 1, 0),
        (0, 0, 0, 0, 1, 1, 1),
    ]
    n = 7
    rows = [[v[i] for v in vertices] for i in range(n)]
    rows.append([1] * len(vertices))
    rhs = [1] * n + [3]
    res = solve_lp(rows, rhs, backend=backend)
    assert res.status == OPTIMAL
    assert res.solution == (Fraction(1, 2),) * 6


@settings(max_examples=60, deadline=None)
@given(
    data=st.data(),
    m=st.integers(min_value=1, max_value=4),
    n=st.integers(min_value=1, max_value=5),
)
def test_feasible_by_construction_stays_feasible(data, m, n):
    # build rhs = A @ x for a known nonnegative x, so the system is
    # feasible and the solver must find some exact solution
    entry = st.integers(min_value=-5, max_value=5)
    rows = data.draw(
        st.lists(
            st.lists(entry, min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
    x = data.draw(st.lists(st.integers(min_value=0, max_value=4), min_size=n, max_size=n))
    rhs = [sum(a * v for a, v in zip(row, x)) for row in rows]
    res = solve_lp(rows, rhs)
    assert res.status == OPTIMAL
    for row, b in zip(rows, rhs):
        assert sum(Fraction(a) * s for a, s in zip(row, res.solution)) == b
    assert all(s >= 0 for s in res.solution)


def test_backend_results_agree():
    if len(BACKENDS) < 2:
        pytest.skip("only one rational backend available")
    rows = [[2, 1, 0], [1, 0, 3]]
    rhs = [2, 3]
    results = [
        solve_lp(rows, rhs, objective=[1, 1, 1], backend=b) for b in BACKENDS
    ]
    first = results[0]
    for other in results[1:]:
        assert other.status == first.status
        assert other.solution == first.solution
        assert other.objective == first.objective
