import numpy as np
import pytest

from frontier_cone import _simplex_py
from frontier_cone.errors import MalformedProgram
from frontier_cone.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, solve

from lp_oracle import best_vertex

try:
    from frontier_cone import _simplex as _compiled
except ImportError:  # pragma: no cover
    _compiled = None


def test_upper_bounded_single_variable():
    sol = solve(LinearProgram(np.array([1.0]), le_matrix=[[1.0]], le_rhs=[1.0]))
    assert sol.status == OPTIMAL
    assert sol.value == pytest.approx(1.0, abs=1e-12)


def test_equality_budget():
    sol = solve(LinearProgram(np.array([1.0, 1.0]), eq_matrix=[[1.0, 1.0]], eq_rhs=[1.0]))
    assert sol.status == OPTIMAL
    assert sol.value == pytest.approx(1.0, abs=1e-12)


def test_unbounded_direction():
    sol = solve(LinearProgram(np.array([1.0]), le_matrix=[[-1.0]], le_rhs=[0.0]))
    assert sol.status == UNBOUNDED


def test_infeasible_program():
    sol = solve(
        LinearProgram(
            np.array([1.0]),
            eq_matrix=[[1.0]], eq_rhs=[2.0],
            le_matrix=[[1.0]], le_rhs=[1.0],
        )
    )
    assert sol.status == INFEASIBLE


def test_dimension_mismatch_raises():
    with pytest.raises(MalformedProgram):
        solve(LinearProgram(np.array([1.0, 2.0]), le_matrix=[[1.0]], le_rhs=[1.0]))
    with pytest.raises(MalformedProgram):
        solve(LinearProgram(np.array([1.0]), le_matrix=[[1.0]], le_rhs=[1.0, 2.0]))


def _random_program(rng):
    n = int(rng.integers(1, 7))
    n_eq = int(rng.integers(0, 3))
    n_le = int(rng.integers(0, 5))
    c = rng.integers(-5, 6, n).astype(float)
    a_eq = rng.integers(-5, 6, (n_eq, n)).astype(float) if n_eq else None
    b_eq = rng.integers(-5, 6, n_eq).astype(float) if n_eq else None
    a_le = rng.integers(-5, 6, (n_le, n)).astype(float) if n_le else None
    b_le = rng.integers(-5, 6, n_le).astype(float) if n_le else None
    return LinearProgram(c, a_eq, b_eq, a_le, b_le)


def test_matches_vertex_enumeration_oracle():
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 100:
        prog = _random_program(rng)
        sol = solve(prog)
        oracle = best_vertex(prog.objective, prog.eq_matrix, prog.eq_rhs,
                             prog.le_matrix, prog.le_rhs)
        if sol.status == INFEASIBLE:
            assert oracle is None
        elif sol.status == OPTIMAL:
            assert oracle is not None
            assert sol.value == pytest.approx(oracle, abs=1e-7, rel=1e-7)
            checked += 1
        else:
            # unbounded: feasible, and the optimum keeps growing with the box
            assert oracle is not None
            grown = []
            for box in (1e3, 1e6):
                n = prog.objective.size
                le = np.vstack([prog.le_matrix if prog.le_matrix is not None
                                else np.zeros((0, n)), np.ones((1, n))])
                rhs = np.concatenate([prog.le_rhs if prog.le_rhs is not None
                                      else np.zeros(0), [box]])
                boxed = solve(LinearProgram(prog.objective, prog.eq_matrix,
                                            prog.eq_rhs, le, rhs))
                assert boxed.status == OPTIMAL
                grown.append(boxed.value)
            assert grown[1] > grown[0] + 1.0


def test_optimal_solution_contract():
    rng = np.random.default_rng(3)
    seen = 0
    while seen < 50:
        prog = _random_program(rng)
        sol = solve(prog)
        if sol.status != OPTIMAL:
            continue
        seen += 1
        assert np.all(sol.primal >= -1e-10)
        if prog.eq_matrix is not None:
            assert np.max(np.abs(prog.eq_matrix @ sol.primal - prog.eq_rhs)) <= 1e-8
        if prog.le_matrix is not None:
            assert np.max(prog.le_matrix @ sol.primal - prog.le_rhs) <= 1e-8


def test_objective_scaling():
    rng = np.random.default_rng(11)
    seen = 0
    while seen < 20:
        prog = _random_program(rng)
        sol = solve(prog)
        if sol.status != OPTIMAL:
            continue
        seen += 1
        factor = float(rng.uniform(0.5, 4.0))
        scaled = solve(LinearProgram(factor * prog.objective, prog.eq_matrix,
                                     prog.eq_rhs, prog.le_matrix, prog.le_rhs))
        assert scaled.status == OPTIMAL
        assert scaled.value == pytest.approx(factor * sol.value, abs=1e-8, rel=1e-9)
        # the original optimal point still attains the scaled optimum
        assert factor * prog.objective @ sol.primal == pytest.approx(scaled.value, abs=1e-8)


def test_deterministic_repeat():
    rng = np.random.default_rng(5)
    prog = _random_program(rng)
    first = solve(prog)
    second = solve(prog)
    assert first.status == second.status
    if first.status == OPTIMAL:
        assert first.value == second.value
        assert np.array_equal(first.primal, second.primal)


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_backends_agree_exactly():
    rng = np.random.default_rng(9)
    for _ in range(100):
        prog = _random_program(rng)
        fast = solve(prog, kernel=_compiled)
        slow = solve(prog, kernel=_simplex_py)
        assert fast.status == slow.status
        if fast.status == OPTIMAL:
            assert fast.value == slow.value
            assert np.array_equal(fast.primal, slow.primal)
