from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar

from vie_solver.coeff import Backend, Coefficient
from vie_solver.coeff import add as coeff_add
from vie_solver.coeff import mul as coeff_mul
from vie_solver.errors import ClosureError

# variable indices: 0 = y, j = v_j, T_INDEX = the scalar t
Y_INDEX = 0
T_INDEX = -1

Monomial = Tuple[Tuple[int, int], ...]   # sorted ((variable, exponent), ...), exponents >= 1
ONE: Monomial = ()

V = TypeVar("V")


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers = dict(m1)
    for var, exp in m2:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


def mono_degree(m: Monomial) -> int:
    return sum(exp for _, exp in m)


@dataclass(frozen=True)
class Polynomial:
    """
    Sparse polynomial over y, v_1..v_r and t with Coefficient values.

    Zero coefficients are never stored, so the zero polynomial has no terms.
    Coefficients may mix rationals with big-floats while the system is being
    built; arithmetic promotes, and AugmentedSystem.promote settles one backend.
    """

    terms: Dict[Monomial, Coefficient] = field(default_factory=dict)

    # ---- construction -------------------------------------------------

    @classmethod
    def constant(cls, c: Coefficient) -> "Polynomial":
        return cls({} if c.is_zero() else {ONE: c})

    @classmethod
    def variable(cls, index: int) -> "Polynomial":
        return cls({((index, 1),): Coefficient.rational(1)})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(Coefficient.rational(1))

    @staticmethod
    def _collect(pairs: Iterable[Tuple[Monomial, Coefficient]]) -> "Polynomial":
        out: Dict[Monomial, Coefficient] = {}
        for m, c in pairs:
            out[m] = coeff_add(out[m], c, promote=True) if m in out else c
        return Polynomial({m: c for m, c in sorted(out.items()) if not c.is_zero()})

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._collect(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._collect(
            (_mono_mul(m1, m2), coeff_mul(c1, c2, promote=True))
            for m1, c1 in self.terms.items()
            for m2, c2 in other.terms.items()
        )

    def scale(self, c: Coefficient) -> "Polynomial":
        return Polynomial._collect((m, coeff_mul(c, v, promote=True)) for m, v in self.terms.items())

    def __pow__(self, exponent: int) -> "Polynomial":
        result = Polynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def partial(self, index: int) -> "Polynomial":
        """Partial derivative with respect to one variable"""
        pairs = []
        for m, c in self.terms.items():
            powers = dict(m)
            exp = powers.get(index, 0)
            if exp == 0:
                continue
            if exp == 1:
                del powers[index]
            else:
                powers[index] = exp - 1
            pairs.append((tuple(sorted(powers.items())), coeff_mul(c, c.from_int(exp))))
        return Polynomial._collect(pairs)

    def substitute_derivatives(self, derivative: Callable[[int], "Polynomial"]) -> "Polynomial":
        """Time derivative via the chain rule: sum_x dP/dx * x'"""
        total = Polynomial.zero()
        for index in sorted(self.variables()):
            total = total + self.partial(index) * derivative(index)
        return total

    # ---- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_term(self) -> Coefficient:
        return self.terms.get(ONE, Coefficient.rational(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def variables(self) -> set:
        return {var for m in self.terms for var, _ in m}

    def coefficients(self) -> List[Coefficient]:
        return list(self.terms.values())

    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.terms.values())

    def as_variable(self) -> Optional[int]:
        """Index when the polynomial is a single variable with coefficient 1"""
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if len(m) == 1 and m[0][1] == 1 and c.is_rational and c.is_one():
                return m[0][0]
        return None

    def check_degree(self, cap: int, what: str = "polynomial"):
        if self.degree() > cap:
            raise ClosureError(f"{what} has degree {self.degree()}, above the cap of {cap}")

    # ---- conversion -----------------------------------------------------

    def promote(self, backend: Backend, precision: int) -> "Polynomial":
        return Polynomial({m: c.to_backend(backend, precision) for m, c in self.terms.items()})

    def evaluate(self, power: Callable[[int, int], V], mul: Callable[[V, V], V],
                 scale: Callable[[Coefficient, V], V], unit: V, zero: V) -> V:
        """
        Generic evaluation over any ring of values (Series in the Picard step):
        `power(index, exp)` gives x_index^exp, `unit` stands for the empty monomial.
        """
        total = zero
        for m, c in self.terms.items():
            term = unit
            for k, (var, exp) in enumerate(m):
                factor = power(var, exp)
                term = factor if k == 0 else mul(term, factor)
            total = total + scale(c, term)
        return total

    def evaluate_at(self, point: Mapping[int, Coefficient]) -> Coefficient:
        """Value at numeric variable values, promoting as needed"""
        total = Coefficient.rational(0)
        for m, c in self.terms.items():
            term = c
            for var, exp in m:
                x = point[var]
                for _ in range(exp):
                    term = coeff_mul(term, x, promote=True)
            total = coeff_add(total, term, promote=True)
        return total

    def render(self, names: Sequence[str], t_name: str = "t", digits: int = 12) -> str:
        """Human-readable form, e.g. "v1*v3 - 1/2*t" """
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda item: (-mono_degree(item[0]), item[0])):
            factors = []
            for var, exp in m:
                name = t_name if var == T_INDEX else names[var]
                factors.append(name if exp == 1 else f"{name}^{exp}")
            negative = c.value < 0
            magnitude = -c if negative else c
            text = magnitude.to_string(digits)
            if factors and magnitude.is_one():
                body = "*".join(factors)
            elif factors:
                body = text + "*" + "*".join(factors)
            else:
                body = text
            parts.append(("-" if negative else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_pairs(self, digits: Optional[int] = None) -> List[Tuple[List[List[int]], str]]:
        return [([list(p) for p in m], c.to_string(digits)) for m, c in self.terms.items()]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))
