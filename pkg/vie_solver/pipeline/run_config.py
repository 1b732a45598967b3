'''Per-run settings, resolved as: command-line flag > .vie header > --config file > defaults.'''
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from vie_solver.coeff import Coefficient, MIN_FLOAT_PRECISION
from vie_solver.config import ConfigLoader
from vie_solver.errors import ConfigError, VieSolverError
from vie_solver.expr import Expr, VieDocument, parse_expr, parse_window, read_vie, read_vie_text


@dataclass
class RunConfig:
    command: str
    order: int
    iters: Optional[int]
    mode: str
    precision: int
    backend: str
    format: str
    places: int
    window: Tuple[Fraction, Fraction]
    samples: int
    oracle_h: Fraction
    oracle_precision: int
    oracle_max_sweeps: int
    oracle_damping: float
    practically_zero: float
    tolerance_shift: int
    variable_cap: int
    degree_cap: int
    reference_text: Optional[str] = None
    reference: Optional[Expr] = None
    out: Optional[Path] = None
    grid_csv: Optional[Path] = None

    @property
    def max_iters(self) -> int:
        return self.iters if self.iters is not None else self.order + 4


def load_document(path: Optional[Path] = None, equation: Optional[str] = None) -> VieDocument:
    """A .vie file, or inline equation text (which may carry headers too)"""
    if equation is not None:
        return read_vie_text(equation)
    if path is None:
        raise ConfigError("give a .vie file or --equation")
    return read_vie(path)


def _pick(flag: Any, header: Any, configured: Any) -> Any:
    if flag is not None:
        return flag
    if header is not None:
        return header
    return configured


def resolve_run(command: str, config: ConfigLoader, doc: VieDocument, flags: Dict[str, Any]) -> RunConfig:
    """
    Merge flags, headers and configuration into one RunConfig and check it

    Args:
        command: subcommand name
        config: loaded configuration
        doc: the equation document (headers)
        flags: command-line values, None where not given
    """
    window = flags.get("window")
    if isinstance(window, str):
        window = parse_window(window)
    if window is None:
        window = doc.window
    if window is None:
        start, end = config.get("compare", "window")
        window = (Fraction(str(start)), Fraction(str(end)))

    reference_text = _pick(flags.get("reference"), doc.reference_text, None)
    reference = doc.reference
    if flags.get("reference") is not None:
        try:
            reference = parse_expr(flags["reference"])
        except VieSolverError as exc:
            raise ConfigError(f"bad --reference expression: {exc.message}") from exc

    run = RunConfig(
        command=command,
        order=_pick(flags.get("order"), doc.order, config.get("series", "order")),
        iters=_pick(flags.get("iters"), doc.iters, config.get("picard", "max_iters")),
        mode=_pick(flags.get("mode"), doc.mode, config.get("picard", "mode")),
        precision=_pick(flags.get("precision"), doc.precision, config.get("coeff", "precision")),
        backend=_pick(flags.get("backend"), doc.backend, config.get("coeff", "backend")),
        format=_pick(flags.get("format"), None, config.get("output", "format")),
        places=_pick(flags.get("places"), None, config.get("output", "places")),
        window=window,
        samples=_pick(flags.get("samples"), None, config.get("compare", "samples")),
        oracle_h=Fraction(str(_pick(flags.get("oracle_h"), None, config.get("oracle", "step")))),
        oracle_precision=config.get("oracle", "precision"),
        oracle_max_sweeps=config.get("oracle", "max_sweeps"),
        oracle_damping=float(config.get("oracle", "damping")),
        practically_zero=float(config.get("compare", "practically_zero")),
        tolerance_shift=config.get("picard", "float_tolerance_shift", 4),
        variable_cap=config.get("polynomialize", "variable_cap"),
        degree_cap=config.get("polynomialize", "degree_cap"),
        reference_text=reference_text,
        reference=reference,
        out=flags.get("out"),
        grid_csv=flags.get("grid_csv"),
    )
    _validate(run, doc, config)
    return run


def _validate(run: RunConfig, doc: VieDocument, config: ConfigLoader):
    if run.order < 0:
        raise ConfigError(f"order must be >= 0, got {run.order}")
    if run.iters is not None and run.iters < 1:
        raise ConfigError(f"iters must be >= 1, got {run.iters}")
    if run.precision < MIN_FLOAT_PRECISION:
        raise ConfigError(f"precision must be >= {MIN_FLOAT_PRECISION} digits, got {run.precision}")
    if run.samples < 1:
        raise ConfigError("samples must be >= 1")
    if run.oracle_h <= 0:
        raise ConfigError("oracle step must be > 0")
    a = doc.equation.a.as_fraction()
    horizon = Fraction(str(config.get("compare", "horizon")))
    start, end = run.window
    if start < a or end > a + horizon or end <= start:
        raise ConfigError(
            f"window {float(start)}..{float(end)} must lie within [{float(a)}, {float(a + horizon)}]")


def sample_points(window: Tuple[Fraction, Fraction], samples: int):
    """`samples` equally spaced exact points from start to end"""
    start, end = window
    if samples == 1:
        return [end]
    return [start + (end - start) * i / (samples - 1) for i in range(samples)]


def fraction_text(q: Fraction) -> str:
    return Coefficient.rational(q).round_places(6).rstrip("0").rstrip(".") if q.denominator != 1 else str(q.numerator)
