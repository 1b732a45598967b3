'''Parser for the equation DSL

    equation := "y(t)" "=" expr
    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := "-" factor | base ("^" INT)?
    base     := NUMBER | "t" | "s" | "y(s)" | FUNC "(" expr ")" | "(" expr ")"
              | "int(" expr "," "s=" NUMBER ".." "t" ")"

Whitespace is insignificant and "#" starts a comment.'''
from fractions import Fraction
from functools import lru_cache

import pyparsing as pp

from vie_solver.coeff import Coefficient
from vie_solver.errors import NonConformingEquationError, VieSyntaxError
from vie_solver.expr.kernel import split_kernel
from vie_solver.expr.nodes import (
    FUNCTIONS, Add, Apply, Const, Div, Equation, Expr, IntPow, Integral, Mul, Neg, Sub, Var,
    count_integrals, free_vars,
)

pp.ParserElement.enable_packrat()


def _fold_left(loc, toks, ops):
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = ops[toks[i]](node, toks[i + 1], span=loc)
    return node


def _power(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    exponent = int(toks[1])
    if exponent < 1:
        raise pp.ParseFatalException(s, loc, "exponent must be a positive integer")
    return IntPow(toks[0], exponent, span=loc)


@lru_cache(maxsize=None)
def _grammar():
    """Build (expression, equation) parsers once"""
    lpar, rpar, comma = pp.Suppress("("), pp.Suppress(")"), pp.Suppress(",")
    number = pp.Regex(r"\d+(\.\d+)?").set_name("number")
    signed_number = pp.Regex(r"-?\d+(\.\d+)?").set_name("number")
    integer = pp.Regex(r"\d+").set_name("integer")

    expr = pp.Forward().set_name("expression")
    factor = pp.Forward().set_name("factor")

    number_node = number.copy().set_parse_action(
        lambda s, loc, toks: Const(Coefficient.rational(Fraction(toks[0])), span=loc))
    t_node = pp.Keyword("t").set_parse_action(lambda s, loc, toks: Var("t", span=loc))
    s_node = pp.Keyword("s").set_parse_action(lambda s, loc, toks: Var("s", span=loc))
    y_node = (pp.Keyword("y") + lpar + pp.Suppress(pp.Keyword("s")) + rpar).set_parse_action(
        lambda s, loc, toks: Var("y", span=loc))
    y_at_t = pp.Keyword("y") + lpar + pp.Keyword("t") + rpar
    y_at_t.set_parse_action(lambda s, loc, toks: _raise(s, loc, "y(t) may only appear on the left-hand side"))

    func = pp.MatchFirst([pp.Keyword(name) for name in FUNCTIONS]).set_name("function")
    call = (func + lpar + expr + rpar).set_parse_action(
        lambda s, loc, toks: Apply(toks[0], toks[1], span=loc))
    integral = (
        pp.Suppress(pp.Keyword("int")) + lpar + expr + comma
        + pp.Suppress(pp.Keyword("s")) + pp.Suppress("=") + signed_number
        + pp.Suppress("..") + pp.Suppress(pp.Keyword("t")) + rpar
    ).set_parse_action(
        lambda s, loc, toks: Integral(toks[0], Coefficient.rational(Fraction(toks[1])), span=loc))

    base = integral | call | y_at_t | y_node | number_node | t_node | s_node | (lpar + expr + rpar)
    negation = (pp.Suppress("-") + factor).set_parse_action(lambda s, loc, toks: Neg(toks[0], span=loc))
    power = (base + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(_power)
    factor <<= negation | power

    term = (factor + pp.ZeroOrMore(pp.one_of("* /") + factor)).set_parse_action(
        lambda s, loc, toks: _fold_left(loc, toks, {"*": Mul, "/": Div}))
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(
        lambda s, loc, toks: _fold_left(loc, toks, {"+": Add, "-": Sub}))

    lhs = pp.Suppress(pp.Keyword("y") + pp.Literal("(") + pp.Keyword("t") + pp.Literal(")") + pp.Literal("="))
    equation = lhs + expr

    comment = pp.python_style_comment
    expr.ignore(comment)
    equation.ignore(comment)
    return expr, equation


def _raise(s, loc, message):
    raise pp.ParseFatalException(s, loc, message)


def _run(parser, text: str, line_offset: int = 0) -> Expr:
    try:
        return parser.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise VieSyntaxError(exc.msg, exc.lineno + line_offset, exc.col) from exc


def parse_rhs(text: str, line_offset: int = 0) -> Expr:
    """Parse "y(t) = <expr>" and return the right-hand side tree"""
    _, equation = _grammar()
    return _run(equation, text, line_offset)


def parse_expr(text: str) -> Expr:
    """Parse a bare expression, e.g. a closed-form reference solution in t"""
    expr, _ = _grammar()
    return _run(expr, text)


def build_equation(rhs: Expr, label: str = "") -> Equation:
    """Check the integral placement and split the right-hand side into phi and kernel terms"""
    if count_integrals(rhs) > 1:
        raise NonConformingEquationError("non-conforming: multiple integral terms")
    phi, terms, a = split_kernel(rhs)
    if free_vars(phi) & {"s", "y"}:
        raise NonConformingEquationError("s and y(s) may only appear inside the integral")
    return Equation(phi=phi, terms=tuple(terms), a=a, label=label, rhs=rhs)


def parse(text: str, label: str = "", line_offset: int = 0) -> Equation:
    """
    Parse equation text into an Equation

    Args:
        text: "y(t) = phi + f * int(kernel, s=a..t)" in the DSL
        label: name used in reports
        line_offset: lines preceding `text` in its file, for error positions

    Returns:
        Equation with phi, separable kernel terms and lower limit
    """
    return build_equation(parse_rhs(text, line_offset), label)
