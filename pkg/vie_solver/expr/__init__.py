from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Equation, Expr, FUNCTIONS, IntPow, Integral, KernelTerm, Mul, Neg,
    S, Sub, T, Var, Y, Y_PRIME, const, contains_integral, count_integrals, free_vars,
    is_constant, lift, substitute, transform, walk,
)
from vie_solver.expr.printer import print_equation, print_expr
from vie_solver.expr.kernel import (
    fold_constants, rewrite_double_angle, rewrite_trig_difference, split_kernel,
)
from vie_solver.expr.parser import build_equation, parse, parse_expr, parse_rhs
from vie_solver.expr.evaluate import compile_numeric, eval_exact, eval_numeric, evaluate_constant
from vie_solver.expr.differentiate import differentiate_sym
from vie_solver.expr.vie_file import VieDocument, parse_window, read_vie, read_vie_text
from vie_solver.expr.sympy_bridge import reference_series, to_sympy

__all__ = [
    'Add', 'Apply', 'Const', 'Div', 'Equation', 'Expr', 'FUNCTIONS', 'IntPow', 'Integral',
    'KernelTerm', 'Mul', 'Neg', 'S', 'Sub', 'T', 'Var', 'Y', 'Y_PRIME', 'const',
    'contains_integral', 'count_integrals', 'free_vars', 'is_constant', 'lift', 'substitute',
    'transform', 'walk',
    'print_equation', 'print_expr',
    'fold_constants', 'rewrite_double_angle', 'rewrite_trig_difference', 'split_kernel',
    'build_equation', 'parse', 'parse_expr', 'parse_rhs',
    'compile_numeric', 'eval_exact', 'eval_numeric', 'evaluate_constant',
    'differentiate_sym',
    'VieDocument', 'parse_window', 'read_vie', 'read_vie_text',
    'reference_series', 'to_sympy',
]
