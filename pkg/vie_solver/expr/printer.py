from fractions import Fraction

from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Equation, Expr, IntPow, Integral, Mul, Neg, Sub, Var,
)

# binding strength: sums < products < unary minus < powers < atoms
_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = 1, 2, 3, 4, 5


def _fraction_text(q: Fraction) -> str:
    """Integers and finite decimals print as DSL literals; anything else as (p/q)"""
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"({q.numerator}/{q.denominator})"
    places = max(twos, fives)
    scaled = abs(q.numerator) * (10 ** places) // q.denominator
    whole, frac = divmod(scaled, 10 ** places)
    sign = "-" if q < 0 else ""
    return f"{sign}{whole}.{frac:0{places}d}"


def _const_text(c: Const) -> str:
    if c.value.is_rational:
        text = _fraction_text(c.value.value)
    else:
        text = c.value.to_string(20)
    if text.startswith("-"):
        return f"({text})"
    return text


def _precedence(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PRODUCT
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, IntPow):
        return _POWER
    return _ATOM


def print_expr(e: Expr, y_text: str = "y(s)") -> str:
    """
    Compact DSL rendering, e.g. "exp(t)*sin(t)+(2+cos(t))*int(y(s)/(2+cos(s)), s=0..t)".
    Parsing the output gives back the same tree for every parsed expression.

    Args:
        e: expression to print
        y_text: spelling of the unknown; "y(s)" for the DSL, "y" for rosters
    """

    def wrap(child: Expr, minimum: int) -> str:
        text = go(child)
        if _precedence(child) < minimum or (isinstance(child, Neg) and minimum > _SUM):
            return f"({text})"
        return text

    def go(n: Expr) -> str:
        if isinstance(n, Const):
            return _const_text(n)
        if isinstance(n, Var):
            return y_text if n.name == "y" else n.name
        if isinstance(n, Add):
            return f"{wrap(n.left, _SUM)}+{wrap(n.right, _PRODUCT)}"
        if isinstance(n, Sub):
            return f"{wrap(n.left, _SUM)}-{wrap(n.right, _PRODUCT)}"
        if isinstance(n, Mul):
            return f"{wrap(n.left, _PRODUCT)}*{wrap(n.right, _UNARY)}"
        if isinstance(n, Div):
            return f"{wrap(n.left, _PRODUCT)}/{wrap(n.right, _UNARY)}"
        if isinstance(n, Neg):
            return f"-{wrap(n.operand, _UNARY)}"
        if isinstance(n, IntPow):
            return f"{wrap(n.base, _ATOM)}^{n.exponent}"
        if isinstance(n, Apply):
            return f"{n.fn}({go(n.arg)})"
        if isinstance(n, Integral):
            lower = _fraction_text(n.lower.as_fraction())
            return f"int({go(n.integrand)}, s={lower}..t)"
        raise TypeError(f"cannot print node {n!r}")

    return go(e)


def print_equation(eq: Equation) -> str:
    return "y(t) = " + print_expr(eq.rhs)
