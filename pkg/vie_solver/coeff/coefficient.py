from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from mpmath import MPContext
from mpmath.libmp import to_rational

from vie_solver.errors import BackendMismatchError, CoefficientDomainError

MIN_FLOAT_PRECISION = 32
DEFAULT_FLOAT_PRECISION = 64
GUARD_DIGITS = 10


class Backend(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"


@lru_cache(maxsize=None)
def float_context(precision: int) -> MPContext:
    """One mpmath context per decimal precision; its mpf values round at that precision.
    Contexts are shared, so callers never change their dps; extra working digits
    come from the context at a higher precision."""
    if precision < MIN_FLOAT_PRECISION:
        raise ValueError(f"big-float precision must be >= {MIN_FLOAT_PRECISION} digits, got {precision}")
    ctx = MPContext()
    ctx.dps = precision
    return ctx


Number = Union[int, Fraction, str]


@dataclass(frozen=True)
class Coefficient:
    """
    Scalar of every series: an exact rational in lowest terms, or an mpmath
    big-float carried together with its precision in decimal digits.

    Values are immutable. Arithmetic between the two backends, or between
    floats of different precision, raises BackendMismatchError unless the
    caller promotes explicitly.
    """

    value: object
    backend: Backend = Backend.RATIONAL
    precision: Optional[int] = None

    # ---- construction -------------------------------------------------

    @classmethod
    def rational(cls, numerator: Number, denominator: int = 1) -> "Coefficient":
        if denominator == 0:
            raise CoefficientDomainError("division by zero")
        return cls(Fraction(numerator) / denominator, Backend.RATIONAL, None)

    @classmethod
    def big_float(cls, value: object, precision: int = DEFAULT_FLOAT_PRECISION) -> "Coefficient":
        ctx = float_context(precision)
        if isinstance(value, Fraction):
            value = ctx.mpf(value.numerator) / value.denominator
        else:
            value = ctx.mpf(value)
        return cls(value, Backend.FLOAT, precision)

    @classmethod
    def parse(cls, text: str, backend: Backend = Backend.RATIONAL,
              precision: int = DEFAULT_FLOAT_PRECISION) -> "Coefficient":
        """Read a decimal or "num/den" literal"""
        text = text.strip()
        try:
            exact = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            if backend is Backend.FLOAT:
                return cls.big_float(text, precision)
            raise CoefficientDomainError(f"not a rational literal: {text!r}") from exc
        if backend is Backend.FLOAT:
            return cls.big_float(exact, precision)
        return cls(exact, Backend.RATIONAL, None)

    def zero(self) -> "Coefficient":
        """Additive identity on this coefficient's backend"""
        return self._like(0)

    def one(self) -> "Coefficient":
        return self._like(1)

    def from_int(self, n: int) -> "Coefficient":
        return self._like(n)

    def _like(self, n: Union[int, Fraction]) -> "Coefficient":
        if self.backend is Backend.RATIONAL:
            return Coefficient(Fraction(n), Backend.RATIONAL, None)
        return Coefficient.big_float(Fraction(n), self.precision)

    # ---- backends -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.backend is Backend.RATIONAL

    def same_backend(self, other: "Coefficient") -> bool:
        return self.backend is other.backend and self.precision == other.precision

    def promote(self, precision: int = DEFAULT_FLOAT_PRECISION) -> "Coefficient":
        """Rational -> big-float at the given precision (value preserving up to rounding)"""
        if self.backend is Backend.FLOAT:
            if self.precision == precision:
                return self
            return Coefficient.big_float(self.value, precision)
        return Coefficient.big_float(self.value, precision)

    def to_backend(self, backend: Backend, precision: int = DEFAULT_FLOAT_PRECISION) -> "Coefficient":
        if backend is Backend.FLOAT:
            return self.promote(precision)
        if self.backend is not Backend.RATIONAL:
            raise BackendMismatchError("a big-float coefficient cannot be demoted to an exact rational")
        return self

    def as_fraction(self) -> Fraction:
        """Exact rational value (a big-float is a dyadic rational)"""
        if self.backend is Backend.RATIONAL:
            return self.value
        p, q = to_rational(self.value._mpf_)
        return Fraction(p, q)

    def as_mpf(self, precision: int = DEFAULT_FLOAT_PRECISION):
        """Value as an mpf of the context at `precision`"""
        q = self.as_fraction()
        return float_context(precision).mpf(q.numerator) / q.denominator

    # ---- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def __float__(self) -> float:
        return float(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other: "Coefficient") -> "Coefficient":
        return add(self, other)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return add(self, neg(other))

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        return mul(self, other)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        return div(self, other)

    def __neg__(self) -> "Coefficient":
        return neg(self)

    def __abs__(self) -> "Coefficient":
        return neg(self) if self.value < 0 else self

    def __lt__(self, other: "Coefficient") -> bool:
        a, b = _coerce(self, other, promote=True)
        return a.value < b.value

    def __le__(self, other: "Coefficient") -> bool:
        a, b = _coerce(self, other, promote=True)
        return a.value <= b.value

    # ---- printing -----------------------------------------------------

    def to_string(self, digits: Optional[int] = None) -> str:
        """Rationals print as "num/den" (or an integer); floats print with
        `digits` significant digits, the full precision by default"""
        if self.backend is Backend.RATIONAL:
            q = self.value
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        ctx = float_context(self.precision)
        return ctx.nstr(self.value, digits or self.precision, min_fixed=-ctx.inf, max_fixed=ctx.inf)

    def round_places(self, places: int) -> str:
        """Fixed-width decimal rounded half away from zero, e.g. 1/6 -> "0.16667"."""
        q = self.as_fraction()
        scale = 10 ** places
        magnitude = abs(q) * scale
        units = int(magnitude + Fraction(1, 2))
        whole, frac = divmod(units, scale)
        sign = "-" if q < 0 and units != 0 else ""
        if places == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{frac:0{places}d}"

    def __str__(self) -> str:
        return self.to_string()


def _tag(x: Coefficient) -> str:
    return x.backend.value if x.precision is None else f"{x.backend.value}@{x.precision}"


def _coerce(x: Coefficient, y: Coefficient, promote: bool = False):
    if x.same_backend(y):
        return x, y
    if not promote:
        raise BackendMismatchError(f"cannot combine {_tag(x)} with {_tag(y)} without promotion")
    precision = max(p for p in (x.precision, y.precision) if p is not None)
    return x.promote(precision), y.promote(precision)


def add(x: Coefficient, y: Coefficient, promote: bool = False) -> Coefficient:
    x, y = _coerce(x, y, promote)
    return Coefficient(x.value + y.value, x.backend, x.precision)


def mul(x: Coefficient, y: Coefficient, promote: bool = False) -> Coefficient:
    x, y = _coerce(x, y, promote)
    return Coefficient(x.value * y.value, x.backend, x.precision)


def neg(x: Coefficient) -> Coefficient:
    return Coefficient(-x.value, x.backend, x.precision)


def div(x: Coefficient, y: Coefficient, promote: bool = False) -> Coefficient:
    x, y = _coerce(x, y, promote)
    if y.is_zero():
        raise CoefficientDomainError("division by zero")
    return Coefficient(x.value / y.value, x.backend, x.precision)


TRANSCENDENTALS = ("sin", "cos", "exp", "ln", "tan", "arccot", "cot")


def transcendental_constant(name: str, argument: Coefficient,
                            precision: int = DEFAULT_FLOAT_PRECISION) -> Coefficient:
    """
    Evaluate sin, cos, exp, ln, tan, arccot or cot at a point, as a big-float
    at `precision` digits.

    Args:
        name: function name as written in the equation DSL
        argument: point of evaluation (either backend)
        precision: decimal digits of the result

    Returns:
        Coefficient on the big-float backend
    """
    target = float_context(precision)
    ctx = float_context(precision + GUARD_DIGITS)
    q = argument.as_fraction()
    x = ctx.mpf(q.numerator) / q.denominator
    if name == "sin":
        value = ctx.sin(x)
    elif name == "cos":
        value = ctx.cos(x)
    elif name == "exp":
        value = ctx.exp(x)
    elif name == "ln":
        if x <= 0:
            raise CoefficientDomainError(f"ln of non-positive value {argument}")
        value = ctx.ln(x)
    elif name == "tan":
        if ctx.cos(x) == 0:
            raise CoefficientDomainError(f"tan pole at {argument}")
        value = ctx.tan(x)
    elif name == "cot":
        if x == 0 or ctx.sin(x) == 0:
            raise CoefficientDomainError(f"cot pole at {argument}")
        value = ctx.cot(x)
    elif name == "arccot":
        value = ctx.acot(x)
    else:
        raise CoefficientDomainError(f"unknown transcendental function {name!r}")
    return Coefficient(target.mpf(value), Backend.FLOAT, precision)
