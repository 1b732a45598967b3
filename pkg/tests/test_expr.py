from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from vie_solver import ENV
from vie_solver.coeff import Backend, float_context, transcendental_constant
from vie_solver.errors import (
    CoefficientDomainError, NonConformingEquationError, NonSeparableKernelError, VieSyntaxError,
)
from vie_solver.expr import (
    differentiate_sym, eval_exact, eval_numeric, fold_constants, parse, parse_expr, parse_rhs, parse_window,
    print_expr, read_vie, read_vie_text, reference_series, rewrite_double_angle, rewrite_trig_difference,
    to_sympy,
)

from tests.conftest import EXAMPLES, q


def split(text):
    eq = parse(text)
    return print_expr(eq.phi), [(print_expr(k.f), print_expr(k.kernel)) for k in eq.terms], eq.a


def test_split_example_1(vie):
    eq = vie("example_1").equation
    assert print_expr(eq.phi) == "exp(t)*sin(t)"
    assert print_expr(eq.f) == "2+cos(t)"
    assert print_expr(eq.kernel) == "y(s)/(2+cos(s))"
    assert eq.a == q(0)


def test_split_example_2_into_two_terms(vie):
    eq = vie("example_2").equation
    assert [(print_expr(k.f), print_expr(k.kernel)) for k in eq.terms] == [
        ("1.5*cos(t)", "y(s)^2*cos(s)"),
        ("1.5*sin(t)", "y(s)^2*sin(s)"),
    ]


def test_subtracted_integral_moves_sign_into_kernel(vie):
    eq = vie("example_4").equation
    assert print_expr(eq.phi) == "1"
    assert print_expr(eq.f) == "1"
    assert print_expr(eq.kernel) == "-sin(y(s))"


def test_no_integral():
    phi, terms, a = split("y(t) = 0")
    assert phi == "0"
    assert terms == [("1", "0")]


def test_lower_limit_and_constant_factor():
    phi, terms, a = split("y(t) = t + 2*int(y(s), s=0.5..t)")
    assert phi == "t"
    assert terms == [("2", "y(s)")]
    assert a == q("1/2")


def test_syntax_error_position():
    with pytest.raises(VieSyntaxError) as info:
        parse_rhs("y(t) = 1 +* t")
    assert info.value.line == 1
    assert info.value.column is not None


def test_syntax_error_line_in_file():
    with pytest.raises(VieSyntaxError) as info:
        read_vie_text("label: broken\norder: 3\ny(t) = int(")
    assert info.value.line == 3


def test_y_of_t_on_the_right():
    with pytest.raises(VieSyntaxError):
        parse("y(t) = y(t) + int(y(s), s=0..t)")


def test_multiple_integrals():
    with pytest.raises(NonConformingEquationError, match="multiple integral terms"):
        parse("y(t) = int(y(s), s=0..t) + int(s, s=0..t)")


def test_y_outside_integral():
    with pytest.raises(NonConformingEquationError):
        parse("y(t) = y(s) + int(y(s), s=0..t)")


def test_non_separable_kernel():
    with pytest.raises(NonSeparableKernelError) as info:
        parse("y(t) = 1 + int(exp(t*s)*y(s), s=0..t)")
    assert info.value.subtree == "exp(t*s)"


def test_trig_difference():
    assert print_expr(rewrite_trig_difference(parse_expr("cos(s-t)"))) == "cos(s)*cos(t)+sin(s)*sin(t)"
    assert print_expr(rewrite_trig_difference(parse_expr("sin(t-s)"))) == "sin(t)*cos(s)-cos(t)*sin(s)"
    assert print_expr(rewrite_trig_difference(parse_expr("cos(t)"))) == "cos(t)"


@pytest.mark.parametrize("name", EXAMPLES)
def test_print_parse_round_trip(vie, name):
    rhs = vie(name).equation.rhs
    assert parse_rhs("y(t) = " + print_expr(rhs)) == rhs


@pytest.mark.parametrize("text", [
    "-t^2", "(-t)^2", "1-(2-t)", "t/(2*t)", "-(t/2)", "exp(-t)*3", "sin(t)^3/cos(t)",
])
def test_print_parse_round_trip_expressions(text):
    e = parse_expr(text)
    assert parse_expr(print_expr(e)) == e


def test_derivatives_symbolic():
    assert print_expr(differentiate_sym(parse_expr("2+cos(t)"))) == "-sin(t)"
    assert print_expr(differentiate_sym(parse_expr("sin(y(s))"), "s"), y_text="y") == "cos(y)*y'"


@pytest.mark.parametrize("text, x", [
    ("sin(t)", "0.3"), ("cos(t)", "1.2"), ("exp(t)", "0.7"), ("ln(t)", "2.5"), ("tan(t)", "0.4"),
    ("cot(t)", "0.9"), ("arccot(t)", "0.6"), ("1/(2+cos(t))", "0.8"), ("t^3*exp(-t)", "1.1"),
    ("ln(2+cos(t))", "0.2"), ("2*arccot(cot(0.5)*exp(t))", "0.5"),
])
def test_derivative_matches_central_difference(text, x):
    e = parse_expr(text)
    de = differentiate_sym(e)
    h = Fraction(1, 10 ** 12)
    t = Fraction(x)
    plus = eval_numeric(e, {"t": q(t + h)}, 32).as_mpf(32)
    minus = eval_numeric(e, {"t": q(t - h)}, 32).as_mpf(32)
    exact = eval_numeric(de, {"t": q(t)}, 32).as_mpf(32)
    approx = (plus - minus) / (2 * h.numerator) * h.denominator
    assert abs(approx - exact) <= 1e-8 * max(abs(exact), 1)


def test_eval_numeric_references(vie):
    one = vie("example_1")
    assert abs(eval_numeric(one.reference, {"t": q(0)}).as_mpf()) < 1e-60
    four = vie("example_4")
    assert abs(eval_numeric(four.reference, {"t": q(0)}).as_mpf() - 1) < 1e-60


def test_eval_domain_errors():
    with pytest.raises(CoefficientDomainError):
        eval_numeric(parse_expr("ln(t)"), {"t": q(0)}, 32)
    with pytest.raises(CoefficientDomainError):
        eval_numeric(parse_expr("1/t"), {"t": q(0)}, 32)


def test_eval_exact():
    assert eval_exact(parse_expr("sin(0) + cos(0)*3/4")) == q("3/4")
    assert eval_exact(parse_expr("2+cos(t)"), {"t": q(0)}) == q(3)
    assert eval_exact(parse_expr("sin(1)")) is None
    assert eval_exact(parse_expr("cot(0.5)")) is None


def test_read_vie_headers():
    doc = read_vie(ENV.EQUATIONS_DIR / "example_3.vie")
    assert doc.label == "example-3"
    assert (doc.order, doc.iters, doc.mode) == (11, 28, "fixed_iters")
    assert doc.window == (Fraction(0), Fraction(1, 10))
    assert print_expr(doc.reference) == "tan(t)"


def test_read_vie_rejects_unknown_header():
    with pytest.raises(VieSyntaxError) as info:
        read_vie_text("label: x\ncolour: blue\ny(t) = 1")
    assert info.value.line == 2


def test_read_vie_header_values():
    with pytest.raises(VieSyntaxError):
        read_vie_text("precision: 16\ny(t) = 1")
    with pytest.raises(VieSyntaxError):
        read_vie_text("mode: forever\ny(t) = 1")


def test_parse_window():
    assert parse_window("0..0.4") == (Fraction(0), Fraction(2, 5))
    with pytest.raises(VieSyntaxError):
        parse_window("1..0")


def test_reference_series():
    tan = reference_series(parse_expr("tan(t)"), q(0), 7)
    assert tan.coeffs == tuple(q(x) for x in (0, 1, 0, "1/3", 0, "2/15", 0, "17/315"))
    irrational = reference_series(parse_expr("exp(t)*sin(1)"), q(0), 2)
    assert irrational.backend is Backend.FLOAT


@pytest.mark.parametrize("text", ["exp(t)*sin(t)", "1/(2+cos(t))", "2*arccot(cot(0.5)*exp(t))", "ln(2+cos(t))*t^2"])
def test_derivative_matches_sympy(text):
    import sympy as sp

    e = parse_expr(text)
    t = sp.Symbol("t")
    expected = sp.diff(to_sympy(e), t).subs(t, sp.Rational(3, 10))
    got = eval_numeric(differentiate_sym(e), {"t": q("0.3")}, 40).as_mpf(40)
    assert abs(float(sp.N(expected, 40)) - float(got)) <= 1e-12 * max(abs(float(got)), 1)


def test_double_angle():
    assert rewrite_double_angle(parse_expr("sin(2*t)")) == parse_expr("2*sin(t)*cos(t)")
    assert rewrite_double_angle(parse_expr("cos(t*2)")) == parse_expr("cos(t)*cos(t)-sin(t)*sin(t)")
    assert rewrite_double_angle(parse_expr("sin(3*t)")) == parse_expr("sin(3*t)")


@pytest.mark.parametrize("text, folded", [
    ("0+t*1", "t"), ("2*3+t", "6+t"), ("--t", "t"), ("t^1/1", "t"), ("0*sin(t)", "0"), ("sin(1)*1", "sin(1)"),
])
def test_fold_constants(text, folded):
    assert fold_constants(parse_expr(text)) == parse_expr(folded)


def test_evaluation_leaves_shared_contexts_at_their_precision():
    eval_numeric(parse_expr("sin(t)*exp(t)"), {"t": q("0.3")}, 32)
    transcendental_constant("ln", q(3), 32)
    assert float_context(32).dps == 32
    assert float_context(42).dps == 42


def test_eval_numeric_from_several_threads():
    e = parse_expr("2*arccot(cot(0.5)*exp(t))")
    jobs = [(t, p) for t in ("0.1", "0.7", "1.3") for p in (32, 40, 64)] * 4

    def run(job):
        t, p = job
        return eval_numeric(e, {"t": q(t)}, p).to_string()

    expected = [run(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=6) as pool:
        assert list(pool.map(run, jobs)) == expected
