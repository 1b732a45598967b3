from vie_solver.coeff.coefficient import (
    Backend,
    Coefficient,
    DEFAULT_FLOAT_PRECISION,
    GUARD_DIGITS,
    MIN_FLOAT_PRECISION,
    TRANSCENDENTALS,
    add,
    div,
    float_context,
    mul,
    neg,
    transcendental_constant,
)

__all__ = [
    'Backend',
    'Coefficient',
    'DEFAULT_FLOAT_PRECISION',
    'GUARD_DIGITS',
    'MIN_FLOAT_PRECISION',
    'TRANSCENDENTALS',
    'add',
    'div',
    'float_context',
    'mul',
    'neg',
    'transcendental_constant',
]
