from vie_solver.series.series import (
    Series,
    add,
    constant,
    differentiate,
    evaluate,
    format_series,
    from_coeffs,
    integrate,
    mul,
    round_coeffs,
    scale,
    to_backend,
    variable,
)

__all__ = [
    'Series',
    'add',
    'constant',
    'differentiate',
    'evaluate',
    'format_series',
    'from_coeffs',
    'integrate',
    'mul',
    'round_coeffs',
    'scale',
    'to_backend',
    'variable',
]
