'''Exceptions raised across the solver. Every error knows the exit code the
command line should finish with, so pipeline stages only have to catch
VieSolverError and report it.'''
from typing import Optional


class VieSolverError(Exception):
    """Base class for all solver errors"""

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(VieSolverError, ValueError):
    exit_code = 2


class VieSyntaxError(VieSolverError):
    """Syntax error in the equation DSL, positioned by line and column"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"syntax error at line {line}, column {column}: {message}"
        elif line is not None:
            message = f"syntax error at line {line}: {message}"
        else:
            message = f"syntax error: {message}"
        super().__init__(message)


class NonConformingEquationError(VieSolverError):
    """Equation parses but does not have the shape y(t) = phi(t) + f(t) int(k(s, y(s)))"""

    exit_code = 2


class NonSeparableKernelError(NonConformingEquationError):
    def __init__(self, message: str, subtree: str = ""):
        self.subtree = subtree
        if subtree:
            message = f"{message}: {subtree}"
        super().__init__(message)


class BackendMismatchError(VieSolverError, TypeError):
    pass


class CoefficientDomainError(VieSolverError, ValueError):
    exit_code = 4


class SeriesMismatchError(VieSolverError, ValueError):
    pass


class ClosureError(VieSolverError):
    exit_code = 3


class SolveError(VieSolverError):
    exit_code = 4


class OracleConvergenceError(SolveError):
    pass
