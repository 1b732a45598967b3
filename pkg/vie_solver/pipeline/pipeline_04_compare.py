from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from vie_solver.coeff import Backend, Coefficient, float_context
from vie_solver.expr import VieDocument, eval_numeric
from vie_solver.oracle import GridSolution, trapezoid_solve
from vie_solver.pipeline.pipeline_03_solve import solve_document
from vie_solver.pipeline.run_config import RunConfig, fraction_text, sample_points
from vie_solver.series import Series, evaluate
from vie_solver.utils.json_schema import CompareRecord, CompareSample
from vie_solver.utils.logger import debug
from vie_solver.utils.utils import write_output

CLOSED_FORM, ORACLE = "closed form", "trapezoid oracle"


def series_value(series: Series, t: Fraction, precision: int):
    point = Coefficient.rational(t)
    if series.backend is Backend.FLOAT:
        point = point.promote(series.precision)
    return evaluate(series, point).as_mpf(precision)


def practically_zero_until(ts: Sequence[Fraction], errors: Sequence, threshold: float) -> Optional[int]:
    """Index of the last sample before the first error above `threshold`; None if the first one is"""
    last = None
    for i, err in enumerate(errors):
        if err > threshold:
            break
        last = i
    return last


def monotone_tail(errors: Sequence, start: Optional[int]) -> bool:
    """Errors never decrease from index `start` on"""
    tail = list(errors[(start or 0):])
    return all(b >= a for a, b in zip(tail, tail[1:]))


def oracle_grid(doc: VieDocument, run: RunConfig, end: Fraction) -> GridSolution:
    grid = trapezoid_solve(
        doc.equation, run.oracle_h, end, run.oracle_precision,
        max_sweeps=run.oracle_max_sweeps, damping=run.oracle_damping, tolerance_shift=run.tolerance_shift,
    )
    debug(f"{doc.label}: oracle grid of {len(grid.nodes)} nodes, h = {float(run.oracle_h)}")
    return grid


def reference_values(doc: VieDocument, run: RunConfig, ts: List[Fraction], precision: int,
                     grid: Optional[GridSolution] = None) -> Tuple[str, list]:
    if run.reference is not None:
        return CLOSED_FORM, [eval_numeric(run.reference, {"t": Coefficient.rational(t)}, precision).as_mpf(precision)
                             for t in ts]
    grid = grid or oracle_grid(doc, run, ts[-1])
    return ORACLE, [grid.value_at(t).as_mpf(precision) for t in ts]


def grid_csv_path(target: Path, label: str) -> Path:
    """`target` itself, or `<label>.grid.csv` inside it when it is a directory"""
    if target.is_dir() or not target.suffix:
        return target / f"{label or 'inline'}.grid.csv"
    return target


def PIPELINE_04_COMPARE(doc: VieDocument, run: RunConfig) -> Tuple[CompareRecord, str]:
    """
    Error profile of the solved series against the closed-form reference, or
    against the trapezoid oracle when the equation has none

    Returns:
        (CompareRecord, rendering in run.format)
    """
    _, report = solve_document(doc, run)
    ts = sample_points(run.window, run.samples)
    precision = run.precision if run.reference is not None else run.oracle_precision
    grid = oracle_grid(doc, run, ts[-1]) if run.grid_csv is not None else None
    source, refs = reference_values(doc, run, ts, precision, grid)
    if grid is not None:
        path = grid_csv_path(Path(run.grid_csv), doc.label)
        write_output(grid.to_csv(), path)
        debug(f"{doc.label}: wrote {len(grid.nodes)} grid rows to {path}")

    ctx = float_context(precision)
    values = [series_value(report.y, t, precision) for t in ts]
    errors = [abs(v - r) for v, r in zip(values, refs)]
    zero_until = practically_zero_until(ts, errors, run.practically_zero)

    def num(x) -> str:
        return ctx.nstr(x, 10)

    record = CompareRecord(
        label=doc.label,
        source=source,
        window=[fraction_text(run.window[0]), fraction_text(run.window[1])],
        samples=[CompareSample(t=fraction_text(t), series=num(v), reference=num(r), error=num(e))
                 for t, v, r, e in zip(ts, values, refs, errors)],
        max_error=num(max(errors)),
        practically_zero_until=fraction_text(ts[zero_until]) if zero_until is not None else None,
        monotone_tail=monotone_tail(errors, zero_until),
    )

    if run.format == "json":
        return record, record.model_dump_json(indent=2)
    rows = [(s.t, s.series, s.reference, s.error) for s in record.samples]
    if run.format == "csv":
        return record, "\n".join(["t,series,reference,error"] + [",".join(r) for r in rows])

    lines = [f"{doc.label or 'y'}: y^[{report.iterations}] against the {source} on "
             f"[{record.window[0]}, {record.window[1]}]",
             f"{'t':>10}  {'series':>18}  {'reference':>18}  {'|error|':>18}"]
    lines += [f"{t:>10}  {v:>18}  {r:>18}  {e:>18}" for t, v, r, e in rows]
    lines.append(f"max error: {record.max_error}")
    if record.practically_zero_until is not None:
        lines.append(f"error practically zero (<= {run.practically_zero:g}) up to t = {record.practically_zero_until}, "
                     f"{'increasing monotonically' if record.monotone_tail else 'not monotone'} beyond")
    else:
        lines.append(f"error exceeds {run.practically_zero:g} from the first sample")
    return record, "\n".join(lines)
