from fractions import Fraction

import pytest

from vie_solver.errors import OracleConvergenceError, SolveError
from vie_solver.expr import parse, parse_expr
from vie_solver.oracle import GridSolution, compare, convergence_ratio, max_error, trapezoid_solve
from vie_solver.picard import solve
from vie_solver.polynomialize import assemble
from vie_solver.series import from_coeffs

from tests.conftest import q


def test_zero_kernel():
    grid = trapezoid_solve(parse("y(t) = 1 + 0*int(y(s), s=0..t)"), "0.1", 1)
    assert len(grid.nodes) == 11
    assert all(y == 1 for y in grid.values)


def test_example_2_at_one_half(vie):
    grid = trapezoid_solve(vie("example_2").equation, "0.001", "0.5")
    assert grid.end == Fraction(1, 2)
    assert abs(max_error(grid, parse_expr("sin(t)")).as_mpf(32)) < 5e-6


def test_grid_lookup():
    grid = trapezoid_solve(parse("y(t) = t"), "0.25", 1)
    assert grid.index_of("0.5") == 2
    assert grid.value_at("0.75").as_fraction() == Fraction(3, 4)
    assert grid.to_csv().splitlines()[0] == "t,y"
    with pytest.raises(SolveError):
        grid.index_of(2)


def test_bad_grids():
    eq = parse("y(t) = 1 + int(y(s), s=0..t)")
    with pytest.raises(SolveError):
        trapezoid_solve(eq, 0, 1)
    with pytest.raises(SolveError):
        trapezoid_solve(eq, "0.1", 0)


def test_inner_iteration_budget():
    with pytest.raises(OracleConvergenceError):
        trapezoid_solve(parse("y(t) = 1 + int(exp(y(s)), s=0..t)"), "0.1", "0.5", max_sweeps=1)


def test_compare_identical():
    eq = parse("y(t) = 1")
    grid = trapezoid_solve(eq, "0.1", 1)
    report = solve(assemble(eq), 3)
    assert compare(report.y, grid).is_zero()


def test_compare_window(vie):
    grid = trapezoid_solve(vie("example_2").equation, "0.01", 1)
    zero = from_coeffs([q(0)] * 4, q(0))
    err = compare(zero, grid, window=(0, 1)).as_mpf(32)
    assert abs(err - 0.8414709848) < 1e-3
    with pytest.raises(SolveError):
        compare(zero, grid, window=("0.001", "0.002"))


def test_oracle_agrees_with_converged_series(vie):
    doc = vie("example_2")
    report = solve(assemble(doc.equation), 12, max_iters=20)
    grid = trapezoid_solve(doc.equation, "0.001", "0.4")
    assert compare(report.y, grid).as_mpf(32) < 1e-4


def test_grid_needs_two_nodes():
    with pytest.raises(SolveError):
        GridSolution(Fraction(1), [Fraction(0)], [0], 32)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["example_1", "example_2"])
def test_second_order_convergence(vie, name):
    doc = vie(name)
    ratio = convergence_ratio(doc.equation, doc.reference, Fraction(1, 40), Fraction(1, 2))
    assert 3.5 <= ratio <= 4.5
