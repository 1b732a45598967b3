import pytest

from vie_solver.errors import ConfigError, SolveError
from vie_solver.expr import parse
from vie_solver.picard import initial_state, residual, solve, step
from vie_solver.polynomialize import assemble
from vie_solver.series import from_coeffs

from tests.conftest import q

ZERO = q(0)


def series(*values):
    return from_coeffs([q(x) for x in values], ZERO)


def test_initial_state_is_constant(system):
    state = initial_state(system("example_1"), 4)
    assert state.k == 0
    assert state.components[4] == series(3, 0, 0, 0, 0)
    assert state.components[5] == series("1/3", 0, 0, 0, 0)


def test_one_step_example_2(system):
    s = system("example_2")
    first = step(s, initial_state(s, 5))
    assert first.k == 1
    assert first.components == (series(0, 0, 0, 0, 0, 0), series(0, 1, 0, 0, 0, 0), series(1, 0, 0, 0, 0, 0))
    assert first.stable_degree == 0


def test_zero_kernel_is_a_fixed_point():
    s = assemble(parse("y(t) = 1"))
    report = solve(s, 6, max_iters=3, mode="fixed_iters")
    assert report.y == series(1, 0, 0, 0, 0, 0, 0)
    assert report.trace == [6, 6, 6]


def test_stabilize_stops_early():
    s = assemble(parse("y(t) = 1"))
    report = solve(s, 6, max_iters=10)
    assert report.iterations == 1


def test_exponential():
    s = assemble(parse("y(t) = 1 + int(y(s), s=0..t)"))
    report = solve(s, 5)
    assert report.y == series(1, 1, "1/2", "1/6", "1/24", "1/120")
    assert report.state.stable_degree == 5


def test_example_2_exact_odd_coefficients(system):
    report = solve(system("example_2"), 9, max_iters=7, mode="fixed_iters")
    y = report.y
    assert (y[1], y[3], y[5]) == (q(1), q("-1/6"), q("1/120"))
    assert all(y[j].is_zero() for j in (0, 2, 4, 6))
    assert report.rounded()[:8] == ["0.00000", "1.00000", "0.00000", "-0.16667", "0.00000", "0.00833",
                                    "0.00000", "0.00000"]


def test_example_2_eighth_step_settles_t7(system):
    s = system("example_2")
    seventh = solve(s, 9, max_iters=7, mode="fixed_iters")
    eighth = solve(s, 9, max_iters=8, mode="fixed_iters")
    assert eighth.y[7] == q("-1/5040")
    assert seventh.y[7] != eighth.y[7]
    assert eighth.rounded()[7] == "-0.00020"


def test_example_1_rounded_coefficients(system):
    report = solve(system("example_1"), 7, max_iters=8, mode="fixed_iters")
    assert report.rounded() == ["0.00000", "1.00000", "1.50000", "0.83333", "0.16667", "-0.03333",
                                "-0.02593", "-0.00529"]


@pytest.mark.parametrize("name, order, iters", [
    ("example_1", 7, 8), ("example_2", 9, 8), ("example_4", 9, 10),
    pytest.param("example_3", 11, 28, marks=pytest.mark.slow),
])
def test_stable_degree_grows(system, name, order, iters):
    report = solve(system(name), order, max_iters=iters, mode="fixed_iters")
    trace = report.trace
    assert all(b >= a for a, b in zip(trace, trace[1:]))
    # y reads its explicit part from the previous iterate, so it trails the integrals by a step
    for k, degree in enumerate(trace, start=1):
        assert degree >= min(k - 2, order)


def test_stable_degree_traces(system):
    assert solve(system("example_1"), 7, max_iters=8, mode="fixed_iters").trace == [0, 0, 1, 3, 4, 4, 5, 7]
    assert solve(system("example_2"), 9, max_iters=8, mode="fixed_iters").trace == [0, 0, 2, 2, 4, 4, 6, 6]


def test_residual_vanishes_up_to_stable_degree(system):
    s = system("example_2")
    report = solve(s, 9, max_iters=6, mode="fixed_iters")
    degree = report.state.stable_degree
    for r in residual(s, report.state):
        assert all(c.is_zero() for c in r.coeffs[:degree + 1])


def test_initialization_does_not_matter(system):
    s = system("example_2")
    plain = solve(s, 9, max_iters=18, mode="fixed_iters")
    shifted = solve(s, 9, max_iters=18, mode="fixed_iters", overrides={"y": q(1), 2: q(5)})
    assert shifted.y == plain.y
    assert shifted.state.stable_degree == 9


def test_float_example_4(system):
    s = system("example_4")
    report = solve(s, 9, max_iters=10, mode="fixed_iters")
    assert report.y.backend.value == "float"
    assert report.rounded()[:2] == ["1.00000", "-0.84147"]


def test_bad_arguments(system):
    s = system("example_2")
    with pytest.raises(ConfigError):
        solve(s, 3, mode="forever")
    with pytest.raises(SolveError):
        solve(s, 3, max_iters=0)
    with pytest.raises(SolveError):
        initial_state(s, 3, overrides={"v9": q(0)})
    with pytest.raises(SolveError):
        initial_state(s, -1)


def test_report_record(system):
    report = solve(system("example_2"), 5, max_iters=3, mode="fixed_iters")
    data = report.to_dict()
    assert data["iterations"] == 3
    assert data["components"][1]["coeffs"][:2] == ["0", "1"]
    assert len(data["stable_degree_trace"]) == 3


def test_order_zero_gives_the_constant(system):
    report = solve(system("example_1"), 0)
    assert report.y == series(0)
    assert report.iterations == 1
