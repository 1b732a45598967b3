'''End-to-end runs of the four shipped worked examples at the orders and
iteration counts in their headers.'''
import time
from fractions import Fraction

import pytest

from vie_solver.expr import eval_numeric
from vie_solver.oracle import compare, trapezoid_solve
from vie_solver.picard import solve
from vie_solver.polynomialize import assemble
from vie_solver.series import evaluate

from tests.conftest import EXAMPLES, q

pytestmark = pytest.mark.slow


def iterate(doc):
    system = assemble(doc.equation)
    return solve(system, doc.order, max_iters=doc.iters, mode=doc.mode)


def error_at(doc, report, t):
    point = q(t)
    if report.y.backend.value == "float":
        point = point.promote(report.y.precision)
    value = evaluate(report.y, point).as_mpf(64)
    exact = eval_numeric(doc.reference, {"t": q(t)}, 64).as_mpf(64)
    return abs(value - exact)


def test_example_1(vie):
    doc = vie("example_1")
    started = time.perf_counter()
    report = iterate(doc)
    assert time.perf_counter() - started < 10
    assert report.rounded()[1:] == ["1.00000", "1.50000", "0.83333", "0.16667", "-0.03333", "-0.02593", "-0.00529"]
    assert 2.8e-4 <= error_at(doc, report, 1) <= 1.2e-3


def test_example_2(vie):
    doc = vie("example_2")
    report = iterate(doc)
    y = report.y
    assert (y[1], y[3], y[5]) == (q(1), q("-1/6"), q("1/120"))
    assert report.rounded()[7] == "0.00000"
    assert 5e-4 <= error_at(doc, report, 1) <= 2e-3


def test_example_3(vie):
    doc = vie("example_3")
    started = time.perf_counter()
    report = iterate(doc)
    assert time.perf_counter() - started < 60
    rounded = report.rounded()
    assert [rounded[j] for j in (1, 3, 5, 7, 9, 11)] == ["1.00000", "0.33333", "0.13333", "0.05397", "0.02187",
                                                          "0.00886"]
    worst = max(error_at(doc, report, Fraction(n, 100)) for n in range(11))
    assert worst <= 1e-13


def test_example_4(vie):
    doc = vie("example_4")
    report = iterate(doc)
    assert report.rounded() == ["1.00000", "-0.84147", "0.22732", "0.05836", "-0.06154", "0.00791", "0.01180",
                                "-0.00629", "-0.00078", "0.00202"]
    assert 3e-4 <= error_at(doc, report, 1) <= 1.3e-3


@pytest.mark.parametrize("name", EXAMPLES)
def test_oracle_cross_check(vie, name):
    doc = vie(name)
    system = assemble(doc.equation)
    converged = solve(system, doc.order, max_iters=2 * doc.order + 4)
    end = "0.1" if name == "example_3" else "0.4"
    grid = trapezoid_solve(doc.equation, "0.001", end)
    assert compare(converged.y, grid).as_mpf(32) <= 1e-4
