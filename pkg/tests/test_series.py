import random
from fractions import Fraction

import pytest

from vie_solver.coeff import Backend
from vie_solver.errors import SeriesMismatchError
from vie_solver.series import (
    add, constant, differentiate, evaluate, format_series, from_coeffs, integrate, mul, round_coeffs,
    scale, to_backend, variable,
)

from tests.conftest import q

ZERO = q(0)


def series(*values):
    return from_coeffs([q(v) for v in values], ZERO)


def test_constant_and_variable():
    assert constant(q(0), ZERO, 3) == series(0, 0, 0, 0)
    assert variable(q(2), 3).coeffs == (q(2), q(1), q(0), q(0))
    assert variable(ZERO, 0) == series(0)


def test_ring_operations():
    assert add(series(1, 2), series(3, 4)) == series(4, 6)
    assert scale(q("3/2"), series(0, 0, 1)) == series(0, 0, "3/2")
    assert mul(series(1, 1, 0), series(1, -1, 0)) == series(1, 0, -1)
    sin5 = series(0, 1, 0, "-1/6", 0, "1/120")
    assert mul(sin5, sin5) == series(0, 0, 1, 0, "-1/3", 0)


def test_cauchy_product_against_brute_force():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(0, 64)
        p = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1)]
        r = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1)]
        expected = [sum((p[i] * r[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        assert mul(series(*p), series(*r)) == series(*expected)


def test_integrate_and_differentiate():
    assert integrate(series(1, 0, 0)) == series(0, 1, 0)
    assert integrate(series(0, 0, 1, 0)) == series(0, 0, 0, "1/3")
    assert differentiate(series(1, 1, "1/2", "1/6")) == series(1, 1, "1/2", 0)


def test_picard_on_exponential():
    # v <- 1 + int(v) from v = 1 builds the Taylor polynomial of exp one degree per step
    v = series(1, 0, 0, 0)
    for _ in range(3):
        v = add(series(1, 0, 0, 0), integrate(v))
    assert v == series(1, 1, "1/2", "1/6")


def test_evaluate():
    assert evaluate(series(1, 2, 3), ZERO) == q(1)
    assert evaluate(series(0, 1), q("1/2")) == q("1/2")
    assert evaluate(series(1, 1, 1), q(2)) == q(7)
    assert evaluate(series(1, 1, 1), q("1/3")) == q("13/9")
    assert evaluate(series(2, -3, 0, 4), q("-1/2")) == q(3)


def test_mismatches():
    with pytest.raises(SeriesMismatchError):
        add(series(1, 2), series(1, 2, 3))
    with pytest.raises(SeriesMismatchError):
        add(series(1, 2), from_coeffs([q(1), q(2)], q(1)))
    with pytest.raises(SeriesMismatchError):
        add(series(1, 2), to_backend(series(1, 2), Backend.FLOAT, 32))


def test_round_and_format():
    s = series(0, 1, 0, "-1/6", 0, "1/120", 0, "1/10000000")
    assert round_coeffs(s)[3] == "-0.16667"
    assert format_series(s) == "1.00000 t - 0.16667 t^3 + 0.00833 t^5 + 0.00000 t^7"
    assert format_series(series(0, 0)) == "0"
