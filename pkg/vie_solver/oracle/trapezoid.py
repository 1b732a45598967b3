'''Trapezoid-rule solver for y(t) = phi(t) + sum_i f_i(t) int_a^t k_i(s, y(s)) ds.

It reads the parsed Equation directly and shares nothing with the
polynomialization, so it can check the series solutions independently.'''
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from vie_solver.coeff import Backend, Coefficient, float_context
from vie_solver.errors import OracleConvergenceError, SolveError
from vie_solver.expr import Equation, Expr, compile_numeric
from vie_solver.series import Series, evaluate

Scalar = Union[Coefficient, Fraction, int, str, float]


def _fraction(x: Scalar) -> Fraction:
    if isinstance(x, Coefficient):
        return x.as_fraction()
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass
class GridSolution:
    """y_n ~ y(t_n) on t_n = a + n*h, n = 0..M"""

    step: Fraction
    nodes: List[Fraction]
    values: List[object]          # mpf at `precision`
    precision: int

    def __post_init__(self):
        if len(self.nodes) < 2 or len(self.nodes) != len(self.values):
            raise SolveError("a grid solution needs at least two nodes with one value each")

    @property
    def a(self) -> Fraction:
        return self.nodes[0]

    @property
    def end(self) -> Fraction:
        return self.nodes[-1]

    def value(self, n: int) -> Coefficient:
        return Coefficient(self.values[n], Backend.FLOAT, self.precision)

    def index_of(self, t: Scalar) -> int:
        """Nearest node; t must lie in [a, end]"""
        t = _fraction(t)
        if t < self.a or t > self.end:
            raise SolveError(f"t = {float(t)} is outside the grid [{float(self.a)}, {float(self.end)}]")
        n = (t - self.a) / self.step
        return min(int(n + Fraction(1, 2)), len(self.nodes) - 1)

    def value_at(self, t: Scalar) -> Coefficient:
        return self.value(self.index_of(t))

    def to_csv(self) -> str:
        """ "t,y" rows, y at full precision"""
        ctx = float_context(self.precision)
        rows = ["t,y"]
        for t, y in zip(self.nodes, self.values):
            node = ctx.mpf(t.numerator) / t.denominator
            rows.append(f"{ctx.nstr(node, 15)},{ctx.nstr(y, self.precision)}")
        return "\n".join(rows) + "\n"


def trapezoid_solve(eq: Equation, h: Scalar, T: Scalar, precision: int = 32, max_sweeps: int = 200,
                    damping: float = 0.5, tolerance_shift: int = 4) -> GridSolution:
    """
    Solve on [a, T] with step h.

    y_n solves y_n = phi(t_n) + sum_i f_i(t_n) h (k_i(t_0,y_0)/2 + sum_{j<n} k_i(t_j,y_j) + k_i(t_n,y_n)/2)
    by fixed-point sweeps started from y_{n-1}. Damping is switched on once
    successive corrections alternate in sign.

    Args:
        eq: parsed equation
        h: step (> 0)
        T: right end (> a); the grid stops at the first node >= T
        precision: digits of the mpmath context
        max_sweeps: budget of the inner fixed-point iteration per node
        damping: relaxation factor once oscillation is detected

    Returns:
        GridSolution
    """
    h, T, a = _fraction(h), _fraction(T), eq.a.as_fraction()
    if h <= 0:
        raise SolveError("oracle step must be > 0")
    if T <= a:
        raise SolveError("oracle end point must lie to the right of a")
    M = max(1, math.ceil((T - a) / h))

    ctx = float_context(precision)
    phi = compile_numeric(eq.phi, precision)
    fs = [compile_numeric(term.f, precision) for term in eq.terms]
    ks = [compile_numeric(term.kernel, precision) for term in eq.terms]
    tolerance = ctx.mpf(10) ** (tolerance_shift - precision)
    hh = ctx.mpf(h.numerator) / h.denominator
    half = ctx.mpf(1) / 2
    relax = ctx.mpf(damping)

    nodes = [a + n * h for n in range(M + 1)]
    mp_nodes = [ctx.mpf(t.numerator) / t.denominator for t in nodes]

    y0 = phi({"t": mp_nodes[0]})
    values = [y0]
    sums = [half * k({"s": mp_nodes[0], "y": y0}) for k in ks]

    for n in range(1, M + 1):
        tn = mp_nodes[n]
        phi_n = phi({"t": tn})
        f_n = [f({"t": tn}) for f in fs]

        def g(y):
            total = phi_n
            for f_value, k, partial in zip(f_n, ks, sums):
                total += f_value * hh * (partial + half * k({"s": tn, "y": y}))
            return total

        y, previous, damped = values[-1], None, False
        for _ in range(max_sweeps):
            correction = g(y) - y
            if abs(correction) <= tolerance * max(1, abs(y)):
                y += correction
                break
            if previous is not None and correction * previous < 0:
                damped = True
            y += relax * correction if damped else correction
            previous = correction
        else:
            raise OracleConvergenceError(
                f"inner fixed-point iteration did not converge in {max_sweeps} sweeps at t = {float(nodes[n])}")

        values.append(y)
        sums = [partial + k({"s": tn, "y": y}) for k, partial in zip(ks, sums)]

    return GridSolution(h, nodes, values, precision)


def _series_value(series: Series, t: Fraction, precision: int):
    point = Coefficient.rational(t)
    if series.backend is Backend.FLOAT:
        point = point.promote(series.precision)
    return evaluate(series, point).as_mpf(precision)


def compare(series: Series, grid: GridSolution, window: Optional[Tuple[Scalar, Scalar]] = None) -> Coefficient:
    """
    max |series(t_n) - y_n| over the grid nodes inside `window` (the whole grid by default)
    """
    lo, hi = (grid.a, grid.end) if window is None else (_fraction(window[0]), _fraction(window[1]))
    picked = [n for n, t in enumerate(grid.nodes) if lo <= t <= hi]
    if not picked:
        raise SolveError(f"comparison window [{float(lo)}, {float(hi)}] holds no grid node")
    ctx = float_context(grid.precision)
    worst = ctx.mpf(0)
    for n in picked:
        worst = max(worst, abs(_series_value(series, grid.nodes[n], grid.precision) - grid.values[n]))
    return Coefficient(worst, Backend.FLOAT, grid.precision)


def max_error(grid: GridSolution, reference: Expr) -> Coefficient:
    """max_n |y_n - reference(t_n)| for a closed form in t"""
    ctx = float_context(grid.precision)
    exact = compile_numeric(reference, grid.precision)
    worst = ctx.mpf(0)
    for t, y in zip(grid.nodes, grid.values):
        worst = max(worst, abs(y - exact({"t": ctx.mpf(t.numerator) / t.denominator})))
    return Coefficient(worst, Backend.FLOAT, grid.precision)


def convergence_ratio(eq: Equation, reference: Expr, h: Scalar, T: Scalar, precision: int = 32,
                      **options) -> float:
    """error(h) / error(h/2) against a closed form; close to 4 for a second-order method"""
    h = _fraction(h)
    coarse = max_error(trapezoid_solve(eq, h, T, precision, **options), reference)
    fine = max_error(trapezoid_solve(eq, h / 2, T, precision, **options), reference)
    if fine.is_zero():
        raise SolveError("error vanished at the finer step; ratio undefined")
    return float(coarse.value / fine.value)
