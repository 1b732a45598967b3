from vie_solver.errors import ClosureError
from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Expr, IntPow, Integral, Mul, Neg, Sub, Var, Y_PRIME, const,
)


def _is(e: Expr, value) -> bool:
    return isinstance(e, Const) and e.value.is_rational and e.value.value == value


# smart constructors keep derivatives free of 0*x and 1*x clutter

def _add(a: Expr, b: Expr) -> Expr:
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(b, Neg):
        return Sub(a, b.operand)
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is(b, 0):
        return a
    if _is(a, 0):
        return _neg(b)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if _is(a, 0):
        return a
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is(a, 0) or _is(b, 0):
        return const(0)
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if isinstance(a, Neg):
        return _neg(_mul(a.operand, b))
    if isinstance(b, Neg):
        return _neg(_mul(a, b.operand))
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is(a, 0):
        return a
    if _is(b, 1):
        return a
    if isinstance(a, Neg):
        return _neg(_div(a.operand, b))
    return Div(a, b)


def _square(u: Expr) -> Expr:
    return IntPow(u, 2)


def differentiate_sym(e: Expr, var: str = "t") -> Expr:
    """
    Symbolic derivative d e / d var.

    y is read as a function of the differentiation variable, so d y = y'
    (the variable Y_PRIME); every other variable is independent of `var`.

    Args:
        e: integral-free expression
        var: "t" or "s"

    Returns:
        Derivative tree, lightly simplified (no 0*u, 1*u, u+0)
    """

    def d(n: Expr) -> Expr:
        if isinstance(n, Const):
            return const(0)
        if isinstance(n, Var):
            if n.name == var:
                return const(1)
            if n.name == "y":
                return Var(Y_PRIME)
            if n.name == Y_PRIME:
                raise ClosureError("second derivatives of y are not supported")
            return const(0)
        if isinstance(n, Add):
            return _add(d(n.left), d(n.right))
        if isinstance(n, Sub):
            return _sub(d(n.left), d(n.right))
        if isinstance(n, Neg):
            return _neg(d(n.operand))
        if isinstance(n, Mul):
            return _add(_mul(d(n.left), n.right), _mul(n.left, d(n.right)))
        if isinstance(n, Div):
            # u'/v - u v'/v^2
            u, v = n.left, n.right
            return _sub(_div(d(u), v), _div(_mul(u, d(v)), _square(v)))
        if isinstance(n, IntPow):
            u, p = n.base, n.exponent
            lower = u if p == 2 else IntPow(u, p - 1)
            return _mul(_mul(const(p), lower), d(u))
        if isinstance(n, Apply):
            return _chain(n, d(n.arg))
        if isinstance(n, Integral):
            raise ClosureError("cannot differentiate an integral")
        raise ClosureError(f"unsupported node {type(n).__name__}")

    return d(e)


def _chain(n: Apply, du: Expr) -> Expr:
    u = n.arg
    one = const(1)
    if n.fn == "sin":
        outer = Apply("cos", u)
    elif n.fn == "cos":
        return _neg(_mul(Apply("sin", u), du))
    elif n.fn == "exp":
        outer = n
    elif n.fn == "ln":
        return _div(du, u)
    elif n.fn == "tan":
        outer = Add(one, _square(n))
    elif n.fn == "cot":
        return _neg(_mul(Add(one, _square(n)), du))
    elif n.fn == "arccot":
        return _neg(_div(du, Add(one, _square(u))))
    else:
        raise ClosureError(f"no derivative rule for {n.fn}")
    return _mul(outer, du)
