from vie_solver.oracle.trapezoid import (
    GridSolution,
    compare,
    convergence_ratio,
    max_error,
    trapezoid_solve,
)

__all__ = ['GridSolution', 'compare', 'convergence_ratio', 'max_error', 'trapezoid_solve']
