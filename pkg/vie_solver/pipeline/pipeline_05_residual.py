import json
from typing import List, Tuple

from vie_solver.expr import VieDocument
from vie_solver.picard import residual
from vie_solver.pipeline.pipeline_03_solve import component_lines, solve_document
from vie_solver.pipeline.run_config import RunConfig
from vie_solver.series import Series
from vie_solver.utils.json_schema import SeriesRecord


def PIPELINE_05_RESIDUAL(doc: VieDocument, run: RunConfig) -> Tuple[List[Series], str]:
    """
    Solve, then evaluate every rule at the final iterate minus the iterate.
    Coefficients up to the stable degree vanish for a converged state.
    """
    system, report = solve_document(doc, run)
    residuals = residual(system, report.state)
    names = system.component_names
    if run.format == "json":
        records = {name: SeriesRecord.model_validate(r.to_dict()).model_dump() for name, r in zip(names, residuals)}
        return residuals, json.dumps(
            {"label": doc.label, "stable_degree": report.state.stable_degree, "residuals": records}, indent=2)
    if run.format == "csv":
        rows = ["component,power,coefficient"]
        for name, r in zip(names, residuals):
            rows += [f"{name},{j},{c.to_string(12)}" for j, c in enumerate(r.coeffs)]
        return residuals, "\n".join(rows)
    head = f"{doc.label or 'y'}: residual after {report.iterations} iterations (stable degree {report.state.stable_degree})"
    return residuals, "\n".join([head] + component_lines(names, residuals))
