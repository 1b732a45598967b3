from vie_solver.polynomialize.polynomial import T_INDEX, Y_INDEX, Polynomial
from vie_solver.polynomialize.closure import (
    AuxVariable,
    Polynomializer,
    closure,
    derive_y_prime,
    source_expressions,
    to_polynomial,
    y_prime_expression,
)
from vie_solver.polynomialize.system import AugmentedSystem, PolyRule, assemble, render_system

__all__ = [
    'AugmentedSystem',
    'AuxVariable',
    'PolyRule',
    'Polynomial',
    'Polynomializer',
    'T_INDEX',
    'Y_INDEX',
    'assemble',
    'closure',
    'derive_y_prime',
    'render_system',
    'source_expressions',
    'to_polynomial',
    'y_prime_expression',
]
