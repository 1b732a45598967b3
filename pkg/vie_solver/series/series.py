from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from vie_solver.coeff import Backend, Coefficient
from vie_solver.errors import SeriesMismatchError


@dataclass(frozen=True)
class Series:
    """
    Truncated power series sum_j coeffs[j] * (t - point)^j, j = 0..order.

    All coefficients and the expansion point live on one Coefficient backend.
    Products and integrals are truncated back to `order`, so a whole solve
    runs at one fixed order.
    """

    point: Coefficient
    order: int
    coeffs: Tuple[Coefficient, ...]

    def __post_init__(self):
        if self.order < 0:
            raise SeriesMismatchError(f"series order must be >= 0, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise SeriesMismatchError(
                f"series of order {self.order} needs {self.order + 1} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not c.same_backend(self.point):
                raise SeriesMismatchError("series coefficients and expansion point must share one backend")

    # ---- views --------------------------------------------------------

    @property
    def backend(self) -> Backend:
        return self.point.backend

    @property
    def precision(self):
        return self.point.precision

    def __getitem__(self, j: int) -> Coefficient:
        return self.coeffs[j]

    def __len__(self) -> int:
        return len(self.coeffs)

    def values(self) -> List[Any]:
        return [c.value for c in self.coeffs]

    def _wrap(self, raw: Sequence[Any]) -> "Series":
        backend, precision = self.point.backend, self.point.precision
        return Series(self.point, self.order, tuple(Coefficient(v, backend, precision) for v in raw))

    def _check(self, other: "Series"):
        if self.order != other.order:
            raise SeriesMismatchError(f"order mismatch: {self.order} vs {other.order}")
        if not self.point.same_backend(other.point):
            raise SeriesMismatchError("backend mismatch between series")
        if self.point != other.point:
            raise SeriesMismatchError(f"expansion point mismatch: {self.point} vs {other.point}")

    # ---- ring operations ---------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        return add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        return add(self, scale(self.point.from_int(-1), other))

    def __mul__(self, other: "Series") -> "Series":
        return mul(self, other)

    def __neg__(self) -> "Series":
        return scale(self.point.from_int(-1), self)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_dict(self, digits: int = None) -> Dict[str, Any]:
        """JSON-shaped record {point, order, backend, coeffs}"""
        return {
            "point": self.point.to_string(digits),
            "order": self.order,
            "backend": self.backend.value,
            "coeffs": [c.to_string(digits) for c in self.coeffs],
        }

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


def constant(c: Coefficient, a: Coefficient, order: int) -> Series:
    """c + 0*(t-a) + ... at the given order; `a` is moved onto c's backend"""
    a = a.to_backend(c.backend, c.precision) if not a.same_backend(c) else a
    zero = c.zero()
    return Series(a, order, (c,) + (zero,) * order)


def from_coeffs(coeffs: Sequence[Coefficient], a: Coefficient = None) -> Series:
    """Series with the given coefficients; order is len(coeffs) - 1"""
    coeffs = tuple(coeffs)
    if a is None:
        a = coeffs[0].zero()
    elif not a.same_backend(coeffs[0]):
        a = a.to_backend(coeffs[0].backend, coeffs[0].precision)
    return Series(a, len(coeffs) - 1, coeffs)


def variable(a: Coefficient, order: int) -> Series:
    """The series of t itself: a + 1*(t - a)"""
    if order == 0:
        return constant(a, a, order)
    return from_coeffs((a, a.one()) + (a.zero(),) * (order - 1), a)


def add(p: Series, q: Series) -> Series:
    p._check(q)
    return p._wrap([x + y for x, y in zip(p.values(), q.values())])


def scale(c: Coefficient, p: Series) -> Series:
    if not c.same_backend(p.point):
        raise SeriesMismatchError("scalar and series are on different backends")
    v = c.value
    return p._wrap([v * x for x in p.values()])


def mul(p: Series, q: Series) -> Series:
    """Truncated Cauchy product: r_k = sum_{i+j=k} p_i q_j for k <= order"""
    p._check(q)
    a, b = p.values(), q.values()
    n = p.order
    zero = p.point.zero().value
    # skip structurally zero leading terms, common for integrals (c0 = 0)
    lo_a = next((i for i, x in enumerate(a) if x != 0), n + 1)
    lo_b = next((i for i, x in enumerate(b) if x != 0), n + 1)
    out = []
    for k in range(n + 1):
        acc = zero
        for i in range(lo_a, k - lo_b + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return p._wrap(out)


def integrate(p: Series) -> Series:
    """Definite integral from the expansion point: r_0 = 0, r_{j+1} = p_j / (j+1)"""
    v = p.values()
    zero = p.point.zero().value
    return p._wrap([zero] + [v[j] / (j + 1) for j in range(p.order)])


def differentiate(p: Series) -> Series:
    """r_j = (j+1) p_{j+1}; the top coefficient becomes zero"""
    v = p.values()
    zero = p.point.zero().value
    return p._wrap([(j + 1) * v[j + 1] for j in range(p.order)] + [zero])


def evaluate(p: Series, x: Coefficient) -> Coefficient:
    """Horner evaluation of sum c_j (x - a)^j"""
    if not x.same_backend(p.point):
        raise SeriesMismatchError("evaluation point is on a different backend than the series")
    u = x.value - p.point.value
    acc = p.point.zero().value
    for c in reversed(p.values()):
        acc = acc * u + c
    return Coefficient(acc, p.backend, p.precision)


def round_coeffs(p: Series, places: int = 5) -> List[str]:
    """Coefficients rounded half away from zero to fixed `places` decimals"""
    return [c.round_places(places) for c in p.coeffs]


def to_backend(p: Series, backend: Backend, precision: int) -> Series:
    """Explicit promotion of a whole series"""
    return Series(p.point.to_backend(backend, precision), p.order,
                  tuple(c.to_backend(backend, precision) for c in p.coeffs))


def format_series(p: Series, places: int = 5, variable_name: str = "t") -> str:
    """
    Render like "1.00000 t - 0.16667 t^3 + ...". Exactly zero terms are left out;
    nonzero terms that round to zero stay, printed as 0.00000.
    """
    shifted = variable_name if p.point.is_zero() else f"({variable_name} - {p.point.to_string(12)})"
    parts = []
    for j, (c, text) in enumerate(zip(p.coeffs, round_coeffs(p, places))):
        if c.is_zero():
            continue
        magnitude = text.lstrip("-")
        if j == 0:
            term = magnitude
        elif j == 1:
            term = f"{magnitude} {shifted}"
        else:
            term = f"{magnitude} {shifted}^{j}"
        parts.append(("-" if text.startswith("-") else "+", term))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out
