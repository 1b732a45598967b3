'''Numeric and exact evaluation of expression trees'''
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional

from vie_solver.coeff import Backend, Coefficient, DEFAULT_FLOAT_PRECISION, GUARD_DIGITS, float_context
from vie_solver.errors import CoefficientDomainError
from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Expr, IntPow, Integral, Mul, Neg, Sub, Var,
)

Compiled = Callable[[Dict[str, object]], object]


def compile_numeric(e: Expr, precision: int = DEFAULT_FLOAT_PRECISION) -> Compiled:
    """
    Compile `e` into a function env -> mpf, where env maps variable names
    to mpf values of the context at `precision`. The oracle calls these
    thousands of times, so the tree is walked once here.
    """
    ctx = float_context(precision)

    def build(n: Expr) -> Compiled:
        if isinstance(n, Const):
            q = n.value.as_fraction()
            value = ctx.mpf(q.numerator) / q.denominator
            return lambda env: value
        if isinstance(n, Var):
            name = n.name

            def lookup(env):
                try:
                    return env[name]
                except KeyError:
                    raise CoefficientDomainError(f"unbound variable {name!r}") from None
            return lookup
        if isinstance(n, (Add, Sub, Mul, Div)):
            left, right = build(n.left), build(n.right)
            if isinstance(n, Add):
                return lambda env: left(env) + right(env)
            if isinstance(n, Sub):
                return lambda env: left(env) - right(env)
            if isinstance(n, Mul):
                return lambda env: left(env) * right(env)

            def quotient(env):
                den = right(env)
                if den == 0:
                    raise CoefficientDomainError("division by zero")
                return left(env) / den
            return quotient
        if isinstance(n, Neg):
            operand = build(n.operand)
            return lambda env: -operand(env)
        if isinstance(n, IntPow):
            base, k = build(n.base), n.exponent
            return lambda env: base(env) ** k
        if isinstance(n, Apply):
            return _apply(ctx, n.fn, build(n.arg))
        if isinstance(n, Integral):
            raise CoefficientDomainError("an integral has no pointwise value")
        raise CoefficientDomainError(f"cannot evaluate node {n!r}")

    return build(e)


def _apply(ctx, fn: str, arg: Compiled) -> Compiled:
    if fn == "sin":
        return lambda env: ctx.sin(arg(env))
    if fn == "cos":
        return lambda env: ctx.cos(arg(env))
    if fn == "exp":
        return lambda env: ctx.exp(arg(env))

    def ln(env):
        x = arg(env)
        if x <= 0:
            raise CoefficientDomainError(f"ln of non-positive value {ctx.nstr(x, 10)}")
        return ctx.ln(x)

    def tan(env):
        x = arg(env)
        if ctx.cos(x) == 0:
            raise CoefficientDomainError("tan pole")
        return ctx.tan(x)

    def cot(env):
        x = arg(env)
        if ctx.sin(x) == 0:
            raise CoefficientDomainError("cot pole")
        return ctx.cot(x)

    table = {"ln": ln, "tan": tan, "cot": cot, "arccot": lambda env: ctx.acot(arg(env))}
    if fn not in table:
        raise CoefficientDomainError(f"unknown function {fn!r}")
    return table[fn]


def eval_numeric(e: Expr, bindings: Optional[Mapping[str, Coefficient]] = None,
                 precision: int = DEFAULT_FLOAT_PRECISION) -> Coefficient:
    """
    Evaluate `e` as a big-float at `precision` digits.

    Args:
        e: expression without integrals
        bindings: values of the free variables (t, s, y)
        precision: decimal digits of the result

    Returns:
        Coefficient on the big-float backend
    """
    target = float_context(precision)
    # evaluate with guard digits, round once at the end
    work = precision + GUARD_DIGITS
    env = {name: c.as_mpf(work) for name, c in (bindings or {}).items()}
    value = compile_numeric(e, work)(env)
    return Coefficient(target.mpf(value), Backend.FLOAT, precision)


# values that are rational by identity; cot and arccot never are
_EXACT_AT = {
    ("sin", Fraction(0)): Fraction(0),
    ("cos", Fraction(0)): Fraction(1),
    ("exp", Fraction(0)): Fraction(1),
    ("ln", Fraction(1)): Fraction(0),
    ("tan", Fraction(0)): Fraction(0),
}


def eval_exact(e: Expr, bindings: Optional[Mapping[str, Coefficient]] = None) -> Optional[Coefficient]:
    """
    Exact rational value of `e`, or None when the value is not rational by
    identity (sin(1), ln(3), ...) or a binding is a big-float.
    """
    bindings = bindings or {}

    def go(n: Expr) -> Optional[Fraction]:
        if isinstance(n, Const):
            return n.value.value if n.value.is_rational else None
        if isinstance(n, Var):
            c = bindings.get(n.name)
            if c is None or not c.is_rational:
                return None
            return c.value
        if isinstance(n, Neg):
            x = go(n.operand)
            return None if x is None else -x
        if isinstance(n, IntPow):
            x = go(n.base)
            return None if x is None else x ** n.exponent
        if isinstance(n, (Add, Sub, Mul, Div)):
            x = go(n.left)
            if x is None:
                return None
            y = go(n.right)
            if y is None:
                return None
            if isinstance(n, Add):
                return x + y
            if isinstance(n, Sub):
                return x - y
            if isinstance(n, Mul):
                return x * y
            if y == 0:
                raise CoefficientDomainError("division by zero")
            return x / y
        if isinstance(n, Apply):
            x = go(n.arg)
            if x is None:
                return None
            if n.fn == "ln" and x <= 0:
                raise CoefficientDomainError(f"ln of non-positive value {x}")
            return _EXACT_AT.get((n.fn, x))
        return None

    value = go(e)
    return None if value is None else Coefficient.rational(value)


def evaluate_constant(e: Expr, bindings: Optional[Mapping[str, Coefficient]] = None,
                      precision: int = DEFAULT_FLOAT_PRECISION) -> Coefficient:
    """Exact value when there is one, else a big-float at `precision`"""
    exact = eval_exact(e, bindings)
    if exact is not None:
        return exact
    return eval_numeric(e, bindings, precision)
