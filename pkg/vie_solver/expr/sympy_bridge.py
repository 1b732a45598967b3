'''Conversion to sympy, used for closed-form reference series and as an
independent check of derivatives in the tests.'''
from fractions import Fraction

import sympy as sp

from vie_solver.coeff import Backend, Coefficient, DEFAULT_FLOAT_PRECISION
from vie_solver.errors import CoefficientDomainError
from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Expr, IntPow, Integral, Mul, Neg, Sub, Var, Y_PRIME,
)
from vie_solver.series import Series, from_coeffs

SYMBOLS = {name: sp.Symbol(name) for name in ("t", "s", "y")}
SYMBOLS[Y_PRIME] = sp.Symbol("yp")

_FUNCTIONS = {
    "sin": sp.sin,
    "cos": sp.cos,
    "exp": sp.exp,
    "ln": sp.log,
    "tan": sp.tan,
    "cot": sp.cot,
    "arccot": sp.acot,
}


def to_sympy(e: Expr) -> sp.Expr:
    if isinstance(e, Const):
        q = e.value.as_fraction()
        return sp.Rational(q.numerator, q.denominator)
    if isinstance(e, Var):
        return SYMBOLS[e.name]
    if isinstance(e, Add):
        return to_sympy(e.left) + to_sympy(e.right)
    if isinstance(e, Sub):
        return to_sympy(e.left) - to_sympy(e.right)
    if isinstance(e, Mul):
        return to_sympy(e.left) * to_sympy(e.right)
    if isinstance(e, Div):
        return to_sympy(e.left) / to_sympy(e.right)
    if isinstance(e, Neg):
        return -to_sympy(e.operand)
    if isinstance(e, IntPow):
        return to_sympy(e.base) ** e.exponent
    if isinstance(e, Apply):
        return _FUNCTIONS[e.fn](to_sympy(e.arg))
    if isinstance(e, Integral):
        s = SYMBOLS["s"]
        return sp.Integral(to_sympy(e.integrand), (s, sp.Rational(*_pair(e.lower.as_fraction())), SYMBOLS["t"]))
    raise TypeError(f"cannot convert node {e!r}")


def _pair(q: Fraction):
    return q.numerator, q.denominator


def _coefficient(value, backend: Backend, precision: int) -> Coefficient:
    if value.is_Rational and backend is Backend.RATIONAL:
        return Coefficient.rational(int(value.p), int(value.q))
    evaluated = sp.N(value, precision + 10)
    if not evaluated.is_real:
        raise CoefficientDomainError(f"reference coefficient {value} is not real")
    return Coefficient.big_float(str(evaluated), precision)


def reference_series(e: Expr, a: Coefficient, order: int, backend: Backend = Backend.RATIONAL,
                     precision: int = DEFAULT_FLOAT_PRECISION) -> Series:
    """
    Taylor coefficients of a closed form in t about t = a, up to (t-a)^order.

    Coefficients sympy finds rational stay exact on the rational backend
    (tan t gives 1, 1/3, 2/15, 17/315, ...); the others, or all of them on
    the float backend, are evaluated at `precision` digits.
    """
    t = SYMBOLS["t"]
    u = sp.Symbol("u")
    shifted = to_sympy(e).subs(t, u + sp.Rational(*_pair(a.as_fraction())))
    expansion = sp.series(shifted, u, 0, order + 1).removeO()
    raw = [sp.simplify(expansion.coeff(u, j)) for j in range(order + 1)]
    exact = all(c.is_Rational for c in raw)
    if backend is Backend.RATIONAL and not exact:
        backend = Backend.FLOAT
    coeffs = [_coefficient(c, backend, precision) for c in raw]
    return from_coeffs(coeffs, a)
