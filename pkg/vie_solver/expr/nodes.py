from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional, Tuple, Union

from vie_solver.coeff import Coefficient

FUNCTIONS = ("sin", "cos", "exp", "ln", "tan", "arccot", "cot")
VARIABLES = ("t", "s", "y")
Y_PRIME = "y'"


@dataclass(frozen=True)
class Expr:
    """Base of the expression tree. `span` is the parse position and takes no
    part in equality, so structurally identical subtrees compare equal."""

    span: Optional[int] = field(default=None, compare=False, repr=False, kw_only=True)

    def children(self) -> Tuple["Expr", ...]:
        return ()

    def rebuild(self, children: Tuple["Expr", ...]) -> "Expr":
        return self

    def __add__(self, other) -> "Expr":
        return Add(self, lift(other))

    def __radd__(self, other) -> "Expr":
        return Add(lift(other), self)

    def __sub__(self, other) -> "Expr":
        return Sub(self, lift(other))

    def __rsub__(self, other) -> "Expr":
        return Sub(lift(other), self)

    def __mul__(self, other) -> "Expr":
        return Mul(self, lift(other))

    def __rmul__(self, other) -> "Expr":
        return Mul(lift(other), self)

    def __truediv__(self, other) -> "Expr":
        return Div(self, lift(other))

    def __rtruediv__(self, other) -> "Expr":
        return Div(lift(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, exponent: int) -> "Expr":
        return IntPow(self, exponent)


@dataclass(frozen=True)
class Const(Expr):
    value: Coefficient

    @property
    def fraction(self) -> Fraction:
        return self.value.as_fraction()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return Add(*children, span=self.span)


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return Sub(*children, span=self.span)


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return Mul(*children, span=self.span)


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return Div(*children, span=self.span)


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def children(self):
        return (self.operand,)

    def rebuild(self, children):
        return Neg(children[0], span=self.span)


@dataclass(frozen=True)
class IntPow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError(f"integer powers must have exponent >= 1, got {self.exponent}")

    def children(self):
        return (self.base,)

    def rebuild(self, children):
        return IntPow(children[0], self.exponent, span=self.span)


@dataclass(frozen=True)
class Apply(Expr):
    fn: str
    arg: Expr

    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return Apply(self.fn, children[0], span=self.span)


@dataclass(frozen=True)
class Integral(Expr):
    """int(integrand, s=lower..t); the upper limit is always t"""

    integrand: Expr
    lower: Coefficient

    def children(self):
        return (self.integrand,)

    def rebuild(self, children):
        return Integral(children[0], self.lower, span=self.span)


@dataclass(frozen=True)
class KernelTerm:
    """One separable piece f(t) * int(kernel(s, y(s)), s=a..t)"""

    f: Expr
    kernel: Expr


@dataclass(frozen=True)
class Equation:
    """
    y(t) = phi(t) + sum_i f_i(t) * int(k_i(s, y(s)), s=a..t)

    A single term in the usual case; the trig-difference rewrite can split an
    integrand into several separable terms. `rhs` keeps the parsed tree.
    """

    phi: Expr
    terms: Tuple[KernelTerm, ...]
    a: Coefficient
    label: str = ""
    rhs: Optional[Expr] = None

    @property
    def f(self) -> Expr:
        return self._single().f

    @property
    def kernel(self) -> Expr:
        return self._single().kernel

    def _single(self) -> KernelTerm:
        if len(self.terms) != 1:
            raise ValueError(f"equation has {len(self.terms)} kernel terms; use .terms")
        return self.terms[0]


# ---- helpers ---------------------------------------------------------------


def lift(x: Union[Expr, int, Fraction, Coefficient]) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, Coefficient):
        return Const(x)
    return Const(Coefficient.rational(x))


def const(x: Union[int, Fraction, str]) -> Const:
    return Const(Coefficient.rational(Fraction(x)))


T = Var("t")
S = Var("s")
Y = Var("y")


def walk(e: Expr) -> Iterator[Expr]:
    """Post-order traversal, children left to right"""
    for child in e.children():
        yield from walk(child)
    yield e


def transform(e: Expr, fn: Callable[[Expr], Expr]) -> Expr:
    """Bottom-up rewrite: children first, then `fn` on the rebuilt node"""
    kids = e.children()
    if kids:
        e = e.rebuild(tuple(transform(k, fn) for k in kids))
    return fn(e)


def free_vars(e: Expr) -> set:
    return {n.name for n in walk(e) if isinstance(n, Var)}


def contains_integral(e: Expr) -> bool:
    return any(isinstance(n, Integral) for n in walk(e))


def count_integrals(e: Expr) -> int:
    return sum(1 for n in walk(e) if isinstance(n, Integral))


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace variables by expressions (e.g. s -> t when a kernel is read as a function of t)"""
    return transform(e, lambda n: mapping.get(n.name, n) if isinstance(n, Var) else n)


def is_constant(e: Expr) -> bool:
    """No variables and no integral"""
    return not free_vars(e) and not contains_integral(e)
