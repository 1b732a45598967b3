'''Auxiliary variables and the closure that makes every derivative polynomial.

Each non-polynomial piece of phi, f_i and k_i (kernels read with s renamed
to t) gets a variable v_j. Differentiating a definition may ask for new
variables (sin u needs cos u, ln u needs 1/u, ...); the roster grows until
every v_j' is a polynomial in y, t and the declared variables.'''
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence

from vie_solver.coeff import Coefficient, DEFAULT_FLOAT_PRECISION
from vie_solver.errors import ClosureError, CoefficientDomainError
from vie_solver.expr import (
    Add, Apply, Const, Div, Equation, Expr, IntPow, Integral, Mul, Neg, Sub, Var, Y_PRIME,
    const, differentiate_sym, evaluate_constant, fold_constants, is_constant, print_expr,
    rewrite_double_angle, substitute, walk,
)
from vie_solver.polynomialize.polynomial import T_INDEX, Y_INDEX, Polynomial

APPLY, DENOMINATOR, RECIPROCAL = "apply", "denominator", "reciprocal"


@dataclass
class AuxVariable:
    """
    v_j := definition, with v_j' = rhs(y, t, v_1..v_r) once the closure is done.

    kind is "apply" (fn(u)), "denominator" (a named sum or product u that is
    divided by) or "reciprocal" (1/u).
    """

    index: int
    definition: Expr
    kind: str
    argument: Expr
    initial_value: Optional[Coefficient] = None
    rhs: Optional[Polynomial] = None
    body: Optional[Polynomial] = None

    @property
    def name(self) -> str:
        return f"v{self.index}"

    def depends_on_y(self) -> bool:
        return any(isinstance(n, Var) and n.name == "y" for n in walk(self.definition))


def normalize(e: Expr) -> Expr:
    """Constant folding around the sin 2u / cos 2u doubling rewrite"""
    return fold_constants(rewrite_double_angle(fold_constants(e)))


def kernel_in_t(kernel: Expr) -> Expr:
    return substitute(kernel, {"s": Var("t")})


class Polynomializer:
    """Builds the auxiliary-variable roster and converts expressions to polynomials"""

    def __init__(self, equation: Optional[Equation] = None, y_prime: Optional[Expr] = None,
                 variable_cap: int = 32, degree_cap: int = 16,
                 precision: int = DEFAULT_FLOAT_PRECISION):
        """
        Args:
            equation: source of y' when every f_i is constant
            y_prime: explicit expression for y' in t and y, overriding the equation
            variable_cap: maximum number of auxiliary variables
            degree_cap: maximum total degree of any derived polynomial
            precision: digits for constants that are not rational
        """
        self.equation = equation
        self.variable_cap = variable_cap
        self.degree_cap = degree_cap
        self.precision = precision
        self.variables: List[AuxVariable] = []
        self._defined: Dict[Expr, int] = {}
        self._reciprocal: Dict[Expr, int] = {}
        self._y_prime_expr = normalize(y_prime) if y_prime is not None else None
        self._y_prime: Optional[Polynomial] = None
        self._y_prime_resolved = False
        self._in_progress: set = set()

    # ---- registration -------------------------------------------------

    def _new(self, definition: Expr, kind: str, argument: Expr) -> int:
        if len(self.variables) >= self.variable_cap:
            raise ClosureError(f"closure exceeds the variable cap of {self.variable_cap}")
        index = len(self.variables) + 1
        self.variables.append(AuxVariable(index, definition, kind, argument))
        return index

    def _is_named(self, e: Expr) -> bool:
        return e in self._defined or (isinstance(e, Var) and e.name in ("t", "y"))

    def register(self, e: Expr):
        """First-encounter registration over a post-order, left-to-right walk"""
        for n in walk(e):
            if isinstance(n, Integral):
                raise ClosureError("an integral cannot be polynomialized")
            if isinstance(n, Var) and n.name == Y_PRIME:
                raise ClosureError("y' may not appear in an equation")
            if is_constant(n):
                continue
            if isinstance(n, Apply) and n not in self._defined:
                self._defined[n] = self._new(n, APPLY, n.arg)
            elif isinstance(n, Div):
                self.register_reciprocal(n.right)

    def register_reciprocal(self, den: Expr):
        """Variables needed to write 1/den as a polynomial"""
        if is_constant(den):
            return
        if isinstance(den, IntPow):
            return self.register_reciprocal(den.base)
        if isinstance(den, Neg):
            return self.register_reciprocal(den.operand)
        if isinstance(den, Mul):
            self.register_reciprocal(den.left)
            return self.register_reciprocal(den.right)
        if isinstance(den, Div):
            self.register(den.right)
            return self.register_reciprocal(den.left)
        if den in self._reciprocal:
            return
        self.register(den)
        if not self._is_named(den):
            self._defined[den] = self._new(den, DENOMINATOR, den)
        self._reciprocal[den] = self._new(Div(const(1), den), RECIPROCAL, den)

    # ---- conversion ---------------------------------------------------

    def constant(self, e: Expr) -> Coefficient:
        return evaluate_constant(e, precision=self.precision)

    def to_polynomial(self, e: Expr, _top_lookup: bool = True) -> Polynomial:
        """
        Rewrite `e` as a polynomial over y, t and the declared variables.
        Structurally equal subtrees map to the same variable.
        """
        if _top_lookup and e in self._defined:
            return Polynomial.variable(self._defined[e])
        if isinstance(e, Const):
            return Polynomial.constant(e.value)
        if is_constant(e):
            return Polynomial.constant(self.constant(e))
        if isinstance(e, Var):
            if e.name == "t":
                return Polynomial.variable(T_INDEX)
            if e.name == "y":
                return Polynomial.variable(Y_INDEX)
            if e.name == Y_PRIME:
                return self._require_y_prime()
            raise ClosureError(f"variable {e.name!r} cannot appear here")
        if isinstance(e, Add):
            return self.to_polynomial(e.left) + self.to_polynomial(e.right)
        if isinstance(e, Sub):
            return self.to_polynomial(e.left) - self.to_polynomial(e.right)
        if isinstance(e, Mul):
            return self.to_polynomial(e.left) * self.to_polynomial(e.right)
        if isinstance(e, Neg):
            return -self.to_polynomial(e.operand)
        if isinstance(e, IntPow):
            return self.to_polynomial(e.base) ** e.exponent
        if isinstance(e, Div):
            return self.to_polynomial(e.left) * self.reciprocal(e.right)
        raise ClosureError(f"untabled subexpression: {print_expr(e, y_text='y')}")

    def reciprocal(self, den: Expr) -> Polynomial:
        """Polynomial for 1/den"""
        if is_constant(den):
            value = self.constant(den)
            if value.is_zero():
                raise CoefficientDomainError("division by zero")
            return Polynomial.constant(value.one() / value)
        if isinstance(den, IntPow):
            return self.reciprocal(den.base) ** den.exponent
        if isinstance(den, Neg):
            return -self.reciprocal(den.operand)
        if isinstance(den, Mul):
            return self.reciprocal(den.left) * self.reciprocal(den.right)
        if isinstance(den, Div):
            return self.to_polynomial(den.right) * self.reciprocal(den.left)
        if den in self._reciprocal:
            return Polynomial.variable(self._reciprocal[den])
        raise ClosureError(f"untabled subexpression: 1/({print_expr(den, y_text='y')})")

    # ---- derivatives --------------------------------------------------

    def derive_y_prime(self) -> Optional[Polynomial]:
        """
        y' as a polynomial, available when every f_i is constant:
        y' = phi'(t) + sum_i c_i * k_i(t, y). None otherwise.
        """
        if self._y_prime_resolved:
            return self._y_prime
        self._y_prime_resolved = True
        expr = self._y_prime_expr
        if expr is None and self.equation is not None:
            expr = y_prime_expression(self.equation)
        if expr is not None:
            self.register(expr)
            self._y_prime = self.to_polynomial(expr)
            self._y_prime.check_degree(self.degree_cap, "y'")
        return self._y_prime

    def _require_y_prime(self) -> Polynomial:
        poly = self.derive_y_prime()
        if poly is None:
            raise ClosureError("closure needs y' but y' is unavailable: some f(t) is not constant")
        return poly

    def _time_derivative(self, index: int) -> Polynomial:
        if index == T_INDEX:
            return Polynomial.one()
        if index == Y_INDEX:
            return self._require_y_prime()
        return self.derivative(index)

    def _dt(self, p: Polynomial) -> Polynomial:
        return p.substitute_derivatives(self._time_derivative)

    def derivative(self, index: int) -> Polynomial:
        """v_index' as a polynomial, registering whatever it needs"""
        var = self.variables[index - 1]
        if var.rhs is not None:
            return var.rhs
        if index in self._in_progress:
            raise ClosureError(f"circular derivative for {var.name}")
        self._in_progress.add(index)
        try:
            var.rhs = self._derive(var)
        finally:
            self._in_progress.discard(index)
        var.rhs.check_degree(self.degree_cap, f"{var.name}'")
        return var.rhs

    def _derive(self, var: AuxVariable) -> Polynomial:
        v = Polynomial.variable(var.index)
        one = Polynomial.one()
        if var.kind == DENOMINATOR:
            var.body = self.to_polynomial(var.argument, _top_lookup=False)
            return self._dt(var.body)
        if var.kind == RECIPROCAL:
            var.body = self.to_polynomial(var.argument)
            return -(v * v) * self._dt(var.body)

        u = var.argument
        var.body = self.to_polynomial(u)
        du = self._dt(var.body)
        fn = var.definition.fn
        if fn in ("sin", "cos"):
            partner = Apply("cos" if fn == "sin" else "sin", u)
            self.register(partner)
            w = Polynomial.variable(self._defined[partner])
            return w * du if fn == "sin" else -(w * du)
        if fn == "exp":
            return v * du
        if fn == "tan":
            return (one + v * v) * du
        if fn == "cot":
            return -((one + v * v) * du)
        if fn == "ln":
            self.register_reciprocal(u)
            return self.reciprocal(u) * du
        if fn == "arccot":
            den = fold_constants(Add(const(1), IntPow(u, 2)))
            self.register_reciprocal(den)
            return -(self.reciprocal(den) * du)
        raise ClosureError(f"no closure rule for {fn}")

    def close(self):
        """Derive every variable, including those added along the way"""
        j = 1
        while j <= len(self.variables):
            self.derivative(j)
            j += 1

    # ---- initial values -------------------------------------------------

    def initial_values(self, a: Coefficient, y0: Coefficient):
        """v_j(a) from each definition at t = a, y = y0"""
        bindings = {"t": a, "y": y0}
        for var in self.variables:
            var.initial_value = evaluate_constant(var.definition, bindings, self.precision)

    def names(self) -> List[str]:
        return ["y"] + [v.name for v in self.variables]


def y_prime_expression(eq: Equation) -> Optional[Expr]:
    """phi' + sum c_i k_i(t, y) when every f_i is a constant c_i, else None"""
    if not all(is_constant(term.f) for term in eq.terms):
        return None
    parts = [differentiate_sym(normalize(eq.phi), "t")]
    for term in eq.terms:
        parts.append(Mul(term.f, kernel_in_t(term.kernel)))
    return normalize(reduce(Add, parts))


def closure(exprs: Iterable[Expr], y_prime: Optional[Expr] = None, variable_cap: int = 32,
            degree_cap: int = 16, precision: int = DEFAULT_FLOAT_PRECISION) -> List[AuxVariable]:
    """
    Roster of auxiliary variables for a set of expressions in t and y.

    Args:
        exprs: expressions to polynomialize (kernels already read in t)
        y_prime: expression for y' if a y-dependent variable needs it

    Returns:
        AuxVariables in first-encounter order, each with its derivative polynomial
    """
    poly = Polynomializer(y_prime=y_prime, variable_cap=variable_cap, degree_cap=degree_cap,
                          precision=precision)
    for e in exprs:
        poly.register(normalize(e))
    poly.close()
    return poly.variables


def derive_y_prime(eq: Equation, variable_cap: int = 32, degree_cap: int = 16,
                   precision: int = DEFAULT_FLOAT_PRECISION):
    """
    y' of the equation as (polynomial, roster), or None when some f is not constant.
    """
    poly = Polynomializer(eq, variable_cap=variable_cap, degree_cap=degree_cap, precision=precision)
    for e in source_expressions(eq):
        poly.register(e)
    result = poly.derive_y_prime()
    if result is None:
        return None
    poly.close()
    return result, poly.variables


def to_polynomial(e: Expr, variables: Sequence[AuxVariable], y_prime: Optional[Polynomial] = None) -> Polynomial:
    """Polynomial for `e` against an existing roster; untabled pieces raise ClosureError"""
    poly = Polynomializer(variable_cap=max(len(variables), 1))
    for var in variables:
        if var.kind == RECIPROCAL:
            poly._reciprocal[var.argument] = var.index
        else:
            poly._defined[var.definition] = var.index
    poly.variables = list(variables)
    poly._y_prime, poly._y_prime_resolved = y_prime, True
    return poly.to_polynomial(normalize(e))


def source_expressions(eq: Equation) -> List[Expr]:
    """phi, then each f_i, then each k_i with s renamed to t; all normalized"""
    out = [normalize(eq.phi)]
    out += [normalize(term.f) for term in eq.terms]
    out += [normalize(kernel_in_t(term.kernel)) for term in eq.terms]
    return out
