from fractions import Fraction

import pytest

from vie_solver import ENV
from vie_solver.coeff import Coefficient
from vie_solver.expr import read_vie
from vie_solver.polynomialize import assemble

EXAMPLES = ("example_1", "example_2", "example_3", "example_4")


def q(x) -> Coefficient:
    """Exact rational coefficient from an int, Fraction or "p/q" string"""
    return Coefficient.rational(Fraction(x))


@pytest.fixture
def vie():
    """Load a shipped .vie document by stem"""
    def load(name: str):
        return read_vie(ENV.EQUATIONS_DIR / f"{name}.vie")
    return load


@pytest.fixture
def system(vie):
    """Assembled system of a shipped example on its default backend"""
    def build(name: str, **options):
        return assemble(vie(name).equation, **options)
    return build
