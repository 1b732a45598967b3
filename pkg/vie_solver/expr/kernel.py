'''Rewrites on expression trees and the split of a right-hand side into
phi(t) + sum_i f_i(t) * int(k_i(s, y(s)), s=a..t).'''
from fractions import Fraction
from typing import List, Tuple

from vie_solver.coeff import Coefficient
from vie_solver.errors import NonConformingEquationError, NonSeparableKernelError
from vie_solver.expr.nodes import (
    Add, Apply, Const, Div, Expr, IntPow, Integral, KernelTerm, Mul, Neg, Sub, Var,
    contains_integral, free_vars, transform,
)
from vie_solver.expr.printer import print_expr

Factor = Tuple[Expr, int]        # (factor, +1 numerator | -1 denominator)


def _c(q) -> Const:
    return Const(Coefficient.rational(Fraction(q)))


def _is_const(e: Expr, value=None) -> bool:
    if not isinstance(e, Const) or not e.value.is_rational:
        return False
    return value is None or e.value.value == value


# ---- constant folding ------------------------------------------------------


def fold_constants(e: Expr) -> Expr:
    """
    Evaluate rational constant subtrees and drop neutral elements
    (x+0, x*1, x/1, 0*x, --x). Transcendental values such as sin(1) stay symbolic.
    """

    def fold(n: Expr) -> Expr:
        if isinstance(n, (Add, Sub, Mul, Div)):
            l, r = n.left, n.right
            if _is_const(l) and _is_const(r):
                a, b = l.value.value, r.value.value
                if isinstance(n, Add):
                    return _c(a + b)
                if isinstance(n, Sub):
                    return _c(a - b)
                if isinstance(n, Mul):
                    return _c(a * b)
                if b != 0:
                    return _c(a / b)
                return n
            if isinstance(n, Add):
                if _is_const(l, 0):
                    return r
                if _is_const(r, 0):
                    return l
            if isinstance(n, Sub):
                if _is_const(r, 0):
                    return l
                if _is_const(l, 0):
                    return fold(Neg(r))
            if isinstance(n, Mul):
                if _is_const(l, 0) or _is_const(r, 0):
                    return _c(0)
                if _is_const(l, 1):
                    return r
                if _is_const(r, 1):
                    return l
            if isinstance(n, Div):
                if _is_const(r, 1):
                    return l
                if _is_const(l, 0) and not _is_const(r, 0):
                    return _c(0)
            return n
        if isinstance(n, Neg):
            if _is_const(n.operand):
                return _c(-n.operand.value.value)
            if isinstance(n.operand, Neg):
                return n.operand.operand
            return n
        if isinstance(n, IntPow):
            if _is_const(n.base):
                return _c(n.base.value.value ** n.exponent)
            if n.exponent == 1:
                return n.base
            return n
        return n

    return transform(e, fold)


# ---- trig rewrites ---------------------------------------------------------


def _trig_var(e: Expr) -> bool:
    return isinstance(e, Var) and e.name in ("t", "s")


def rewrite_trig_difference(e: Expr) -> Expr:
    """
    Expand cos(a-b), sin(a-b) (and the sums cos(a+b), sin(a+b)) with a, b in {t, s}:
    cos(s-t) -> cos(s)*cos(t)+sin(s)*sin(t), sin(t-s) -> sin(t)*cos(s)-cos(t)*sin(s).
    """

    def rewrite(n: Expr) -> Expr:
        if not (isinstance(n, Apply) and n.fn in ("sin", "cos") and isinstance(n.arg, (Add, Sub))):
            return n
        a, b = n.arg.left, n.arg.right
        if not (_trig_var(a) and _trig_var(b)):
            return n
        sa, ca, sb, cb = Apply("sin", a), Apply("cos", a), Apply("sin", b), Apply("cos", b)
        if isinstance(n.arg, Sub):
            if n.fn == "cos":
                return Add(Mul(ca, cb), Mul(sa, sb))
            return Sub(Mul(sa, cb), Mul(ca, sb))
        if n.fn == "cos":
            return Sub(Mul(ca, cb), Mul(sa, sb))
        return Add(Mul(sa, cb), Mul(ca, sb))

    return transform(e, rewrite)


def _doubled(arg: Expr):
    if isinstance(arg, Mul):
        if _is_const(arg.left, 2):
            return arg.right
        if _is_const(arg.right, 2):
            return arg.left
    return None


def rewrite_double_angle(e: Expr) -> Expr:
    """sin(2u) -> 2*sin(u)*cos(u), cos(2u) -> cos(u)*cos(u)-sin(u)*sin(u)"""

    def rewrite(n: Expr) -> Expr:
        if isinstance(n, Apply) and n.fn in ("sin", "cos"):
            u = _doubled(n.arg)
            if u is not None:
                su, cu = Apply("sin", u), Apply("cos", u)
                if n.fn == "sin":
                    return Mul(Mul(_c(2), su), cu)
                return Sub(Mul(cu, cu), Mul(su, su))
        return n

    return transform(e, rewrite)


# ---- factor bookkeeping ----------------------------------------------------


def _summands(e: Expr, sign: int = 1) -> List[Tuple[int, Expr]]:
    if isinstance(e, Add):
        return _summands(e.left, sign) + _summands(e.right, sign)
    if isinstance(e, Sub):
        return _summands(e.left, sign) + _summands(e.right, -sign)
    if isinstance(e, Neg):
        return _summands(e.operand, -sign)
    return [(sign, e)]


def _depends_on_t(e: Expr) -> bool:
    return "t" in free_vars(e)


def _depends_on_sy(e: Expr) -> bool:
    return bool(free_vars(e) & {"s", "y"})


def _mixed(e: Expr) -> bool:
    return _depends_on_t(e) and _depends_on_sy(e)


def _factors(e: Expr, power: int = 1) -> Tuple[int, List[Factor]]:
    """Flatten products, quotients and negations into (sign, [(factor, +-1)])"""
    if isinstance(e, Mul):
        s1, f1 = _factors(e.left, power)
        s2, f2 = _factors(e.right, power)
        return s1 * s2, f1 + f2
    if isinstance(e, Div):
        s1, f1 = _factors(e.left, power)
        s2, f2 = _factors(e.right, -power)
        return s1 * s2, f1 + f2
    if isinstance(e, Neg):
        s, f = _factors(e.operand, power)
        return -s, f
    if isinstance(e, IntPow) and _mixed(e.base):
        sign, out = 1, []
        for _ in range(e.exponent):
            s, f = _factors(e.base, power)
            sign *= s
            out += f
        return sign, out
    return 1, [(e, power)]


def _product(factors: List[Factor]) -> Expr:
    """Rebuild num/den from factors, collecting rational constants in front"""
    coeff = Fraction(1)
    num: List[Expr] = []
    den: List[Expr] = []
    for f, p in factors:
        if _is_const(f):
            value = f.value.value
            coeff = coeff * value if p > 0 else coeff / value
        elif p > 0:
            num.append(f)
        else:
            den.append(f)
    node = None
    if coeff != 1 or not num:
        node = _c(coeff)
    for f in num:
        node = f if node is None else Mul(node, f)
    if den:
        bottom = den[0]
        for f in den[1:]:
            bottom = Mul(bottom, f)
        node = Div(node, bottom)
    return node


def _expand_separable(e: Expr, sign: int = 1) -> List[Tuple[int, List[Factor]]]:
    """Distribute products over sums until every factor depends on t alone or on (s, y) alone"""
    s, fs = _factors(e)
    sign *= s
    for idx, (f, p) in enumerate(fs):
        if not _mixed(f):
            continue
        if p > 0 and isinstance(f, (Add, Sub)):
            rest = fs[:idx] + fs[idx + 1:]
            out = []
            for part_sign, part in _summands(f):
                out += _expand_separable(_product(rest + [(part, 1)]), sign * part_sign)
            return out
        raise NonSeparableKernelError("non-separable kernel: t is entangled with s or y", print_expr(f))
    return [(sign, fs)]


# ---- split ------------------------------------------------------------------


def split_kernel(rhs: Expr) -> Tuple[Expr, List[KernelTerm], Coefficient]:
    """
    Split rhs into phi(t) and separable kernel terms.

    t-only factors written inside the integrand move into f, together with
    rational constants; the sign of a subtracted integral goes into the kernel.

    Returns:
        (phi, [KernelTerm(f, kernel), ...], lower limit a)
    """
    phi_parts: List[Tuple[int, Expr]] = []
    integral_parts: List[Tuple[int, Expr]] = []
    for sign, part in _summands(rhs):
        (integral_parts if contains_integral(part) else phi_parts).append((sign, part))

    phi = _c(0)
    for k, (sign, part) in enumerate(phi_parts):
        if k == 0:
            phi = part if sign > 0 else Neg(part)
        else:
            phi = Add(phi, part) if sign > 0 else Sub(phi, part)

    if not integral_parts:
        return phi, [KernelTerm(f=_c(1), kernel=_c(0))], Coefficient.rational(0)

    if len(integral_parts) > 1:
        raise NonConformingEquationError("non-conforming: multiple integral terms")

    outer_sign, part = integral_parts[0]
    sign, factors = _factors(part)
    integrals = [(f, p) for f, p in factors if isinstance(f, Integral)]
    if len(integrals) != 1 or integrals[0][1] < 0:
        raise NonConformingEquationError(
            "the integral must appear as a summand or a factor of a summand: " + print_expr(part))
    integral = integrals[0][0]
    outer = [(f, p) for f, p in factors if not isinstance(f, Integral)]
    for f, _ in outer:
        if contains_integral(f) or _depends_on_sy(f):
            raise NonSeparableKernelError("factor outside the integral must depend on t only", print_expr(f))

    integrand = rewrite_trig_difference(integral.integrand)
    terms = []
    for inner_sign, fs in _expand_separable(integrand, outer_sign * sign):
        t_factors = [(f, p) for f, p in fs if not _depends_on_sy(f)]
        k_factors = [(f, p) for f, p in fs if _depends_on_sy(f)]
        kernel = _product(k_factors) if k_factors else _c(1)
        if inner_sign < 0:
            kernel = fold_constants(Neg(kernel))
        terms.append(KernelTerm(f=_product(outer + t_factors), kernel=kernel))
    return phi, terms, integral.lower
