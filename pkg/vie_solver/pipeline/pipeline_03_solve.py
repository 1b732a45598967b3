from typing import List, Optional, Tuple

from vie_solver.expr import VieDocument, reference_series
from vie_solver.picard import IterationState, SolveReport, solve
from vie_solver.pipeline.pipeline_02_show_system import build_system
from vie_solver.pipeline.run_config import RunConfig
from vie_solver.polynomialize import AugmentedSystem
from vie_solver.series import Series, format_series, round_coeffs
from vie_solver.utils.json_schema import SolveReportRecord
from vie_solver.utils.logger import debug, is_verbose, warn
from vie_solver.utils.status import get_progress_bar


def run_picard(system: AugmentedSystem, run: RunConfig) -> SolveReport:
    """Iterate with a progress bar under --verbose"""
    if not is_verbose():
        return solve(system, run.order, run.max_iters, run.mode, run.tolerance_shift)

    with get_progress_bar(transient=True) as progress:
        task = progress.add_task(description=f"[cyan]Picard iterations ({system.label})", total=run.max_iters)

        def on_step(state: IterationState):
            progress.update(task, advance=1)
            debug(f"iterate {state.k}: stable degree {state.stable_degree}")

        return solve(system, run.order, run.max_iters, run.mode, run.tolerance_shift, on_step=on_step)


def reference_coefficients(doc: VieDocument, run: RunConfig, system: AugmentedSystem) -> Optional[Series]:
    if run.reference is None:
        return None
    return reference_series(run.reference, doc.equation.a, run.order, system.backend, run.precision)


def render_solve(report: SolveReport, run: RunConfig, reference: Optional[Series] = None) -> str:
    if run.format == "json":
        data = report.to_dict(places=run.places)
        data["reference"] = round_coeffs(reference, run.places) if reference is not None else None
        return SolveReportRecord.model_validate(data).model_dump_json(indent=2)

    if run.format == "csv":
        rows = ["power,coefficient,rounded"]
        for j, (c, text) in enumerate(zip(report.y.coeffs, report.rounded(run.places))):
            rows.append(f"{j},{c.to_string()},{text}")
        return "\n".join(rows)

    lines = [
        f"{report.label or 'y'}: y^[{report.iterations}](t) = {format_series(report.y, run.places)}",
        f"iterations: {report.iterations} ({report.mode}), stable degree trace: {report.trace}",
    ]
    if reference is not None:
        lines.append(f"reference Taylor series: {format_series(reference, run.places)}")
    return "\n".join(lines)


def PIPELINE_03_SOLVE(doc: VieDocument, run: RunConfig) -> Tuple[SolveReport, str]:
    """
    Polynomialize, iterate and render the y-series

    Args:
        doc: equation document
        run: resolved settings (order, iterations, mode, backend, format)

    Returns:
        (SolveReport, rendering in run.format)
    """
    system, report = solve_document(doc, run)
    return report, render_solve(report, run, reference_coefficients(doc, run, system))


def solve_document(doc: VieDocument, run: RunConfig) -> Tuple[AugmentedSystem, SolveReport]:
    system = build_system(doc, run)
    report = run_picard(system, run)
    debug(f"{doc.label}: {report.iterations} iterations in {report.wall_time_ms} ms")
    if report.mode == "stabilize" and report.state.stable_degree < run.order:
        warn(f"{doc.label or 'y'}: not stable beyond degree {report.state.stable_degree} "
             f"after {report.iterations} iterations; raise --iters for all {run.order + 1} coefficients")
    return system, report


def component_lines(names, series_list: List[Series], digits: int = 12) -> List[str]:
    return [f"{name}: [" + ", ".join(c.to_string(digits) for c in s.coeffs) + "]"
            for name, s in zip(names, series_list)]
