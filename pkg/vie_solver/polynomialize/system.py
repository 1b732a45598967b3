from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

from vie_solver.coeff import Backend, Coefficient, DEFAULT_FLOAT_PRECISION
from vie_solver.errors import BackendMismatchError
from vie_solver.expr import Equation, print_expr
from vie_solver.expr.evaluate import evaluate_constant
from vie_solver.polynomialize.closure import (
    AuxVariable, Polynomializer, kernel_in_t, normalize, source_expressions,
)
from vie_solver.polynomialize.polynomial import Polynomial


@dataclass(frozen=True)
class PolyRule:
    """
    component = constant + explicit(t) + sum_i outer_i(t) * int_a^t integrand_i(s) ds

    The y rule carries phi as its explicit part; each v_j rule is
    v_j(a) + int P_j.
    """

    component: int
    constant: Coefficient
    explicit: Polynomial
    terms: Tuple[Tuple[Polynomial, Polynomial], ...] = ()

    def promote(self, backend: Backend, precision: int) -> "PolyRule":
        return PolyRule(
            self.component,
            self.constant.to_backend(backend, precision),
            self.explicit.promote(backend, precision),
            tuple((o.promote(backend, precision), i.promote(backend, precision)) for o, i in self.terms),
        )

    def polynomials(self) -> List[Polynomial]:
        return [self.explicit] + [p for pair in self.terms for p in pair]

    def render(self, names: List[str], digits: int = 12) -> str:
        parts = []
        if not self.constant.is_zero():
            parts.append(self.constant.to_string(digits))
        if not self.explicit.is_zero():
            parts.append(self.explicit.render(names, digits=digits))
        for outer, integrand in self.terms:
            integral = f"int({integrand.render(names, 's', digits)}, s=a..t)"
            if outer == Polynomial.one():
                parts.append(integral)
            else:
                parts.append(f"({outer.render(names, digits=digits)})*{integral}")
        return " + ".join(parts) if parts else "0"


@dataclass
class AugmentedSystem:
    """
    The equation adjoined to the integral form of the auxiliary ODEs:

        y   = P(v(t)) + sum_i Q_i(v(t)) * int R_i(y(s), v(s)) ds
        v_j = v_j(a) + int P_j(v(s)) ds

    rules[0] is the y rule, rules[j] the rule of v_j.
    """

    variables: List[AuxVariable]
    rules: List[PolyRule]
    y0: Coefficient
    a: Coefficient
    label: str = ""
    backend: Backend = Backend.RATIONAL
    precision: Optional[int] = None
    y_prime: Optional[Polynomial] = field(default=None, repr=False)

    @property
    def y_rule(self) -> PolyRule:
        return self.rules[0]

    @property
    def v_rules(self) -> List[PolyRule]:
        return self.rules[1:]

    @property
    def arity(self) -> int:
        return len(self.rules)

    @property
    def component_names(self) -> Tuple[str, ...]:
        return ("y",) + tuple(v.name for v in self.variables)

    def initial_constants(self) -> List[Coefficient]:
        return [self.y0] + [v.initial_value for v in self.variables]

    def is_rational(self) -> bool:
        values = self.initial_constants() + [self.a]
        if not all(c.is_rational for c in values):
            return False
        return all(p.is_rational() for rule in self.rules for p in rule.polynomials())

    def promote(self, backend: Backend, precision: int = DEFAULT_FLOAT_PRECISION) -> "AugmentedSystem":
        """Every coefficient and initial value on one backend"""
        if backend is Backend.RATIONAL and not self.is_rational():
            raise BackendMismatchError("system has irrational constants; it needs the float backend")
        precision = precision if backend is Backend.FLOAT else None
        variables = [replace(v, initial_value=v.initial_value.to_backend(backend, precision),
                             rhs=v.rhs.promote(backend, precision)) for v in self.variables]
        return AugmentedSystem(
            variables=variables,
            rules=[r.promote(backend, precision) for r in self.rules],
            y0=self.y0.to_backend(backend, precision),
            a=self.a.to_backend(backend, precision),
            label=self.label,
            backend=backend,
            precision=precision,
            y_prime=self.y_prime.promote(backend, precision) if self.y_prime is not None else None,
        )

    def to_dict(self, digits: Optional[int] = None) -> Dict[str, Any]:
        names = list(self.component_names)
        return {
            "label": self.label,
            "a": self.a.to_string(digits),
            "y0": self.y0.to_string(digits),
            "variables": [
                {
                    "index": v.index,
                    "name": v.name,
                    "definition": print_expr(v.definition, y_text="y"),
                    "initial_value": v.initial_value.to_string(digits),
                    "derivative": v.rhs.render(names, digits=digits or 12),
                }
                for v in self.variables
            ],
            "rules": [
                {
                    "component": names[r.component],
                    "constant": r.constant.to_string(digits),
                    "explicit": r.explicit.render(names, digits=digits or 12),
                    "terms": [
                        {"outer": o.render(names, digits=digits or 12),
                         "integrand": i.render(names, "s", digits or 12)}
                        for o, i in r.terms
                    ],
                }
                for r in self.rules
            ],
        }


def assemble(eq: Equation, backend: str = "auto", precision: int = DEFAULT_FLOAT_PRECISION,
             variable_cap: int = 32, degree_cap: int = 16) -> AugmentedSystem:
    """
    Polynomialize an equation into its augmented system.

    Args:
        eq: parsed equation
        backend: "auto" (rational when every constant is), "rational" or "float"
        precision: digits of the float backend and of irrational constants
        variable_cap: maximum number of auxiliary variables
        degree_cap: maximum total degree of any polynomial

    Returns:
        AugmentedSystem on a single coefficient backend
    """
    poly = Polynomializer(eq, variable_cap=variable_cap, degree_cap=degree_cap, precision=precision)
    phi, *rest = source_expressions(eq)
    for e in [phi] + rest:
        poly.register(e)
    poly.close()

    y0 = evaluate_constant(eq.phi, {"t": eq.a}, precision)
    poly.initial_values(eq.a, y0)

    explicit = poly.to_polynomial(phi)
    explicit.check_degree(degree_cap, "P")
    terms = []
    for term in eq.terms:
        outer = poly.to_polynomial(normalize(term.f))
        integrand = poly.to_polynomial(normalize(kernel_in_t(term.kernel)))
        outer.check_degree(degree_cap, "Q")
        integrand.check_degree(degree_cap, "R")
        if outer.is_zero() or integrand.is_zero():
            continue
        terms.append((outer, integrand))

    zero = Coefficient.rational(0)
    rules = [PolyRule(0, zero, explicit, tuple(terms))]
    for v in poly.variables:
        rules.append(PolyRule(v.index, v.initial_value, Polynomial.zero(), ((Polynomial.one(), v.rhs),)))

    system = AugmentedSystem(
        variables=poly.variables,
        rules=rules,
        y0=y0,
        a=eq.a,
        label=eq.label,
        y_prime=poly._y_prime,
    )
    if backend == "auto":
        target = Backend.RATIONAL if system.is_rational() else Backend.FLOAT
    else:
        target = Backend(backend)
    return system.promote(target, precision)


def render_system(system: AugmentedSystem, digits: int = 12) -> str:
    """Text roster: one line per auxiliary variable, then the assembled rules"""
    names = list(system.component_names)
    lines = [f"system {system.label or '(unnamed)'}: a = {system.a.to_string(digits)}, "
             f"y(a) = {system.y0.to_string(digits)}, backend {system.backend.value}"]
    if not system.variables:
        lines.append("no auxiliary variables required")
    for v in system.variables:
        lines.append(
            f"{v.name} := {print_expr(v.definition, y_text='y')}, "
            f"{v.name}(a) = {v.initial_value.to_string(digits)}, "
            f"{v.name}' = {v.rhs.render(names, digits=digits)}"
        )
    if system.y_prime is not None:
        lines.append(f"y' = {system.y_prime.render(names, digits=digits)}")
    lines.append("rules:")
    for rule in system.rules:
        lines.append(f"  {names[rule.component]} = {rule.render(names, digits)}")
    return "\n".join(lines)
