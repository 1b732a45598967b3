'''Picard iteration of an augmented system over truncated power series'''
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

from vie_solver.coeff import Backend, Coefficient, float_context
from vie_solver.errors import ConfigError, SolveError
from vie_solver.polynomialize import T_INDEX, AugmentedSystem, Polynomial
from vie_solver.series import Series, constant, integrate, mul, round_coeffs, scale, variable

MODES = ("fixed_iters", "stabilize")


@dataclass(frozen=True)
class IterationState:
    """Iterate k: one series per component (0 = y, then v_1..v_r)"""

    k: int
    components: Tuple[Series, ...]
    stable_degree: int = -1

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def y(self) -> Series:
        return self.components[0]


@dataclass
class SolveReport:
    state: IterationState
    iterations: int
    mode: str
    trace: List[int] = field(default_factory=list)
    wall_time_ms: float = 0.0
    label: str = ""
    names: Tuple[str, ...] = ()

    @property
    def y(self) -> Series:
        return self.state.y

    def rounded(self, places: int = 5) -> List[str]:
        """y-coefficients rounded half away from zero"""
        return round_coeffs(self.state.y, places)

    def to_dict(self, digits: Optional[int] = None, places: int = 5) -> Dict[str, Any]:
        return {
            "label": self.label,
            "iterations": self.iterations,
            "mode": self.mode,
            "stable_degree_trace": list(self.trace),
            "wall_time_ms": self.wall_time_ms,
            "components": [s.to_dict(digits) for s in self.state.components],
            "rounded": self.rounded(places),
        }


def initial_state(system: AugmentedSystem, order: int,
                  overrides: Optional[Mapping[Union[int, str], Coefficient]] = None) -> IterationState:
    """
    Constant initialization y^[0] = y(a), v_j^[0] = v_j(a).

    Args:
        system: augmented system on its final backend
        order: highest retained power N
        overrides: replacement starting constants keyed by component index or name

    Returns:
        IterationState with k = 0
    """
    if order < 0:
        raise SolveError(f"order must be >= 0, got {order}")
    constants = system.initial_constants()
    for key, value in (overrides or {}).items():
        names = system.component_names
        index = (names.index(key) if key in names else -1) if isinstance(key, str) else key
        if not 0 <= index < len(constants):
            raise SolveError(f"no component {key!r} to override")
        constants[index] = value.to_backend(system.backend, system.precision or value.precision)
    return IterationState(0, tuple(constant(c, system.a, order) for c in constants))


def _check(system: AugmentedSystem, state: IterationState):
    if len(state.components) != system.arity:
        raise SolveError(f"state has {len(state.components)} components, system has {system.arity}")
    if not state.components[0].point.same_backend(system.a):
        raise SolveError("state and system are on different coefficient backends")


def _apply_rules(system: AugmentedSystem, state: IterationState) -> List[Series]:
    """Right-hand side of every rule at iterate k"""
    _check(system, state)
    comps = state.components
    point, order = comps[0].point, state.order
    t_series = variable(point, order)
    unit = constant(point.one(), point, order)
    zero = constant(point.zero(), point, order)
    powers: Dict[Tuple[int, int], Series] = {}

    # x^e shared across all rules of one step
    def power(var: int, exp: int) -> Series:
        key = (var, exp)
        if key not in powers:
            base = t_series if var == T_INDEX else comps[var]
            powers[key] = base if exp == 1 else mul(power(var, exp - 1), base)
        return powers[key]

    def value(p: Polynomial) -> Series:
        return p.evaluate(power, mul, scale, unit, zero)

    out = []
    for rule in system.rules:
        total = constant(rule.constant, point, order)
        if not rule.explicit.is_zero():
            total = total + value(rule.explicit)
        for outer, integrand in rule.terms:
            integral = integrate(value(integrand))
            if outer != Polynomial.one():
                integral = mul(value(outer), integral)
            total = total + integral
        out.append(total)
    return out


def _first_change(old: Series, new: Series, tolerance) -> int:
    for j, (x, y) in enumerate(zip(old.values(), new.values())):
        if tolerance is None:
            if x != y:
                return j
        elif abs(x - y) > tolerance:
            return j
    return old.order + 1


def stable_degree(old: IterationState, new_components, tolerance=None) -> int:
    """Largest d with coefficients 0..d of every component unchanged; -1 if a constant term moved"""
    first = min(_first_change(o, n, tolerance) for o, n in zip(old.components, new_components))
    return first - 1


def _tolerance(system: AugmentedSystem, shift: int):
    if system.backend is Backend.RATIONAL:
        return None
    ctx = float_context(system.precision)
    return ctx.mpf(10) ** (shift - system.precision)


def step(system: AugmentedSystem, state: IterationState, tolerance_shift: int = 4) -> IterationState:
    """
    One simultaneous update of every component from iterate k.

    Returns:
        Iterate k + 1 with its stable degree
    """
    new = tuple(_apply_rules(system, state))
    degree = stable_degree(state, new, _tolerance(system, tolerance_shift))
    return IterationState(state.k + 1, new, degree)


def solve(system: AugmentedSystem, order: int, max_iters: Optional[int] = None, mode: str = "stabilize",
          tolerance_shift: int = 4, overrides: Optional[Mapping[Union[int, str], Coefficient]] = None,
          on_step: Optional[Callable[[IterationState], None]] = None) -> SolveReport:
    """
    Iterate from the constant initialization.

    Args:
        system: augmented system
        order: highest retained power N
        max_iters: iteration budget, N + 4 when None
        mode: "fixed_iters" runs exactly max_iters steps; "stabilize" stops once
            every coefficient up to N is unchanged by a step
        tolerance_shift: float stabilization accepts |difference| <= 10^(shift - precision)
        overrides: replacement starting constants, see initial_state
        on_step: called with each new iterate

    Returns:
        SolveReport with the final iterate and the stable-degree trace
    """
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if max_iters is None:
        max_iters = order + 4
    if max_iters < 1:
        raise SolveError(f"max_iters must be >= 1, got {max_iters}")

    started = time.perf_counter()
    state = initial_state(system, order, overrides)
    trace = []
    for _ in range(max_iters):
        state = step(system, state, tolerance_shift)
        trace.append(state.stable_degree)
        if on_step is not None:
            on_step(state)
        if mode == "stabilize" and state.stable_degree >= order:
            break
    elapsed = (time.perf_counter() - started) * 1000.0
    return SolveReport(state, state.k, mode, trace, round(elapsed, 3), system.label, system.component_names)


def residual(system: AugmentedSystem, state: IterationState) -> List[Series]:
    """Right-hand side at the state minus the state, per component"""
    return [rhs - current for rhs, current in zip(_apply_rules(system, state), state.components)]
