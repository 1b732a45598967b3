from typing import Tuple

from vie_solver.expr import VieDocument
from vie_solver.pipeline.run_config import RunConfig
from vie_solver.polynomialize import AugmentedSystem, assemble, render_system
from vie_solver.utils.json_schema import AugmentedSystemRecord
from vie_solver.utils.logger import debug


def build_system(doc: VieDocument, run: RunConfig) -> AugmentedSystem:
    system = assemble(
        doc.equation,
        backend=run.backend,
        precision=run.precision,
        variable_cap=run.variable_cap,
        degree_cap=run.degree_cap,
    )
    debug(f"{doc.label}: {len(system.variables)} auxiliary variables, backend {system.backend.value}")
    return system


def PIPELINE_02_SHOW_SYSTEM(doc: VieDocument, run: RunConfig) -> Tuple[AugmentedSystem, str]:
    """
    Polynomialize the equation and render the auxiliary-variable roster

    Returns:
        (AugmentedSystem, text or JSON rendering)
    """
    system = build_system(doc, run)
    if run.format == "json":
        record = AugmentedSystemRecord.model_validate(system.to_dict())
        return system, record.model_dump_json(indent=2)
    return system, render_system(system)
