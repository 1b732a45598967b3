from vie_solver.picard.engine import (
    MODES,
    IterationState,
    SolveReport,
    initial_state,
    residual,
    solve,
    stable_degree,
    step,
)

__all__ = [
    'MODES',
    'IterationState',
    'SolveReport',
    'initial_state',
    'residual',
    'solve',
    'stable_degree',
    'step',
]
