from typing import Tuple

from vie_solver.expr import VieDocument, is_constant, print_expr
from vie_solver.pipeline.run_config import RunConfig
from vie_solver.utils.json_schema import CheckRecord, KernelTermRecord


def PIPELINE_01_CHECK(doc: VieDocument, run: RunConfig) -> Tuple[CheckRecord, str]:
    """
    Report how the equation splits into phi and separable kernel terms

    Args:
        doc: parsed equation document (parsing already raised on bad input)
        run: resolved run settings

    Returns:
        (CheckRecord, rendered output in run.format)
    """
    eq = doc.equation
    record = CheckRecord(
        label=eq.label,
        phi=print_expr(eq.phi),
        terms=[KernelTermRecord(f=print_expr(t.f), kernel=print_expr(t.kernel)) for t in eq.terms],
    )
    if run.format == "json":
        return record, record.model_dump_json(indent=2)

    if run.format == "csv":
        rows = ["term,f,kernel"] + [f'{i},"{t.f}","{t.kernel}"' for i, t in enumerate(record.terms, start=1)]
        return record, "\n".join(rows)

    lines = [f"equation {eq.label or '(inline)'}: lower limit a = {eq.a.to_string()}",
             f"phi(t) = {record.phi}"]
    for i, (term, raw) in enumerate(zip(record.terms, eq.terms), start=1):
        suffix = f" [term {i}]" if len(record.terms) > 1 else ""
        lines.append(f"separable: f(t) = {term.f}, k(s, y) = {term.kernel}{suffix}")
        if is_constant(raw.f):
            lines.append(f"  f is constant: y' is available for the closure{suffix}")
    return record, "\n".join(lines)
