import json
from pathlib import Path
from typing import Callable, List, Optional

import click

from vie_solver import ENV
from vie_solver.config import reload_config
from vie_solver.errors import VieSolverError
from vie_solver.pipeline.pipeline_01_check import PIPELINE_01_CHECK
from vie_solver.pipeline.pipeline_02_show_system import PIPELINE_02_SHOW_SYSTEM
from vie_solver.pipeline.pipeline_03_solve import PIPELINE_03_SOLVE
from vie_solver.pipeline.pipeline_04_compare import PIPELINE_04_COMPARE
from vie_solver.pipeline.pipeline_05_residual import PIPELINE_05_RESIDUAL
from vie_solver.pipeline.run_config import load_document, resolve_run
from vie_solver.utils.json_schema import RECORDS
from vie_solver.utils.logger import error, info, set_verbose, success
from vie_solver.utils.status import get_progress_bar
from vie_solver.utils.utils import expand_inputs, write_output

STAGES = {
    "check": PIPELINE_01_CHECK,
    "show-system": PIPELINE_02_SHOW_SYSTEM,
    "solve": PIPELINE_03_SOLVE,
    "compare": PIPELINE_04_COMPARE,
    "residual": PIPELINE_05_RESIDUAL,
}
EXTENSIONS = {"text": "txt", "json": "json", "csv": "csv"}


def run_options(func: Callable) -> Callable:
    """Options shared by every equation subcommand"""
    options = [
        click.argument("files", nargs=-1, type=click.Path(exists=True, path_type=Path)),
        click.option("--equation", "-e", default=None, help='Inline equation, e.g. "y(t) = 1 - int(sin(y(s)), s=0..t)".'),
        click.option("--order", "-N", type=int, default=None, help="Highest retained power N."),
        click.option("--iters", type=int, default=None, help="Iteration budget (N + 4 when unset)."),
        click.option("--mode", type=click.Choice(["fixed_iters", "stabilize"]), default=None),
        click.option("--precision", type=int, default=None, help="Big-float digits (>= 32)."),
        click.option("--backend", type=click.Choice(["auto", "rational", "float"]), default=None),
        click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default=None),
        click.option("--places", type=int, default=None, help="Decimal places of rounded coefficients."),
        click.option("--reference", default=None, help="Closed-form solution in t."),
        click.option("--window", default=None, help="Comparison window a..b."),
        click.option("--samples", type=int, default=None, help="Number of comparison samples."),
        click.option("--oracle-h", "oracle_h", default=None, help="Trapezoid step of the oracle."),
        click.option("--out", "-o", type=click.Path(path_type=Path), default=None,
                     help="Write here instead of stdout (a directory when several files are given)."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _out_path(out: Optional[Path], label: str, fmt: str, batch: bool) -> Optional[Path]:
    if out is None or not batch:
        return out
    return out / f"{label}.{EXTENSIONS[fmt]}"


def run_stage(ctx: click.Context, command: str, files: List[Path], equation: Optional[str], **flags):
    """Run one stage over every input; each input is isolated from the others"""
    config = ctx.obj["config"]
    flags["format"] = flags.pop("fmt")
    inputs: List[Optional[Path]] = expand_inputs(files) if files else []
    if equation is not None:
        inputs.append(None)
    if not inputs:
        raise click.UsageError("give one or more .vie files, a directory, or --equation")

    batch = len(inputs) > 1
    exit_code = 0

    def one(path: Optional[Path]):
        nonlocal exit_code
        name = path.name if path is not None else "inline equation"
        try:
            doc = load_document(path, equation if path is None else None)
            run = resolve_run(command, config, doc, flags)
            _, text = STAGES[command](doc, run)
            target = _out_path(run.out, doc.label or "inline", run.format, batch)
            printed = write_output(text, target)
            if printed is not None:
                click.echo(printed)
            else:
                success(f"{name}: wrote {target}")
        except VieSolverError as exc:
            error(f"{name}: {exc.message}")
            exit_code = exit_code or exc.exit_code

    if batch:
        with get_progress_bar() as progress:
            task = progress.add_task(description=f"[cyan]{command}: {len(inputs)} equations", total=len(inputs))
            for path in inputs:
                one(path)
                progress.update(task, advance=1)
    else:
        one(inputs[0])
    ctx.exit(exit_code)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None,
              help="YAML/JSON file overriding vie_solver/config/default_config.yaml.")
@click.option("--verbose", "-v", is_flag=True, help="Debug lines and iteration progress on stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], verbose: bool):
    """Volterra integral equations of the second kind by polynomialization and Picard iteration."""
    set_verbose(verbose)
    ctx.ensure_object(dict)
    try:
        ctx.obj["config"] = reload_config(config_path)
    except VieSolverError as exc:
        error(exc.message)
        ctx.exit(exc.exit_code)


@cli.command()
@run_options
@click.pass_context
def check(ctx, files, equation, **flags):
    """Parse and report the phi / f(t) / k(s, y) split."""
    run_stage(ctx, "check", files, equation, **flags)


@cli.command("show-system")
@run_options
@click.pass_context
def show_system(ctx, files, equation, **flags):
    """Show the auxiliary variables and the augmented system."""
    run_stage(ctx, "show-system", files, equation, **flags)


@cli.command()
@run_options
@click.pass_context
def solve(ctx, files, equation, **flags):
    """Picard-iterate and print the y-series."""
    run_stage(ctx, "solve", files, equation, **flags)


@cli.command()
@run_options
@click.option("--grid-csv", "grid_csv", type=click.Path(path_type=Path), default=None,
              help="Also write the trapezoid grid as t,y rows (a directory when several files are given).")
@click.pass_context
def compare(ctx, files, equation, **flags):
    """Error profile against a closed form or the trapezoid oracle."""
    run_stage(ctx, "compare", files, equation, **flags)


@cli.command()
@run_options
@click.pass_context
def residual(ctx, files, equation, **flags):
    """Residual of every rule at the final iterate."""
    run_stage(ctx, "residual", files, equation, **flags)


@cli.command("export-schema")
@click.option("--out", "-o", type=click.Path(path_type=Path), default=ENV.SCHEMA_DIR,
              help="Directory for the JSON schema files.")
def export_schema(out: Path):
    """Write the JSON schema of every output record."""
    out.mkdir(parents=True, exist_ok=True)
    for name, model in RECORDS.items():
        path = out / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
    info(f"wrote {len(RECORDS)} schemas to {out}")


if __name__ == "__main__":
    cli()
