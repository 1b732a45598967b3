'''Schemas of every JSON document the command line writes. This file is
the single source of truth for them: export-schema dumps these models and
the tests validate command output against them.'''
from typing import List, Optional

from pydantic import BaseModel, Field


class SeriesRecord(BaseModel):
    point: str = Field(
        description="Expansion point a, as 'num/den' (rational backend) or a decimal (float backend)."
    )
    order: int = Field(description="Highest retained power N of (t - a).", ge=0)
    backend: str = Field(description="Coefficient backend: 'rational' or 'float'.")
    coeffs: List[str] = Field(
        description="Coefficients c_0..c_N of sum c_j (t - a)^j. Example: ['0', '1', '0', '-1/6']."
    )


class AuxVariableRecord(BaseModel):
    index: int = Field(description="j in v_j, starting at 1.", ge=1)
    name: str = Field(description="Display name. Example: 'v3'.")
    definition: str = Field(description="Defining expression in t and y. Example: 'cos(t)', '1/(2+cos(t))'.")
    initial_value: str = Field(description="v_j(a) from the definition at t = a, y = y(a).")
    derivative: str = Field(description="v_j' as a polynomial in y, t and the auxiliary variables.")


class RuleTermRecord(BaseModel):
    outer: str = Field(description="Polynomial evaluated at t that multiplies the integral.")
    integrand: str = Field(description="Polynomial integrated in s from a to t.")


class PolyRuleRecord(BaseModel):
    component: str = Field(description="Component the rule updates: 'y' or 'v_j' name.")
    constant: str = Field(description="Initial-value constant of the rule (0 for y).")
    explicit: str = Field(description="Part evaluated at t without an integral, P for y.")
    terms: List[RuleTermRecord] = Field(default_factory=list, description="(outer, integrand) pairs.")


class AugmentedSystemRecord(BaseModel):
    label: str = Field(description="Equation label.")
    a: str = Field(description="Lower limit of the integral.")
    y0: str = Field(description="y(a) = phi(a).")
    variables: List[AuxVariableRecord] = Field(default_factory=list)
    rules: List[PolyRuleRecord] = Field(default_factory=list)


class SolveReportRecord(BaseModel):
    label: str
    iterations: int = Field(description="Picard steps taken from the constant initialization.", ge=0)
    mode: str = Field(description="'fixed_iters' or 'stabilize'.")
    stable_degree_trace: List[int] = Field(
        description="Stable degree after each step; -1 when a constant term still moved."
    )
    wall_time_ms: float = Field(description="Wall-clock time of the iteration in milliseconds.", ge=0)
    components: List[SeriesRecord] = Field(description="Final iterate: y first, then v_1..v_r.")
    rounded: List[str] = Field(description="y coefficients rounded half away from zero. Example: '0.16667'.")
    reference: Optional[List[str]] = Field(
        default=None, description="Rounded Taylor coefficients of the reference solution, when given."
    )


class CompareSample(BaseModel):
    t: str
    series: str = Field(description="Series value at t.")
    reference: str = Field(description="Closed-form or trapezoid value at t.")
    error: str = Field(description="|series - reference|.")


class CompareRecord(BaseModel):
    label: str
    source: str = Field(description="'closed form' or 'trapezoid oracle'.")
    window: List[str] = Field(description="[start, end] of the comparison window.", min_length=2, max_length=2)
    samples: List[CompareSample]
    max_error: str
    practically_zero_until: Optional[str] = Field(
        default=None, description="Largest sample t up to which every error is below the practically-zero threshold."
    )
    monotone_tail: bool = Field(description="Errors never decrease after practically_zero_until.")


class KernelTermRecord(BaseModel):
    f: str = Field(description="Factor in t outside the integral.")
    kernel: str = Field(description="Integrand in s and y(s).")


class CheckRecord(BaseModel):
    label: str
    phi: str
    terms: List[KernelTermRecord]
    separable: bool = True


RECORDS = {
    "series": SeriesRecord,
    "aux_variable": AuxVariableRecord,
    "poly_rule": PolyRuleRecord,
    "augmented_system": AugmentedSystemRecord,
    "solve_report": SolveReportRecord,
    "compare": CompareRecord,
    "check": CheckRecord,
}
