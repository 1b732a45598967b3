'''Reader for .vie equation files

    # Example 4
    label: example-4
    order: 9
    iters: 10
    reference: 2*arccot(cot(0.5)*exp(t))
    y(t) = 1 - int(sin(y(s)), s=0..t)

Header lines ("key: value") may sit anywhere in the file; they are blanked
before parsing so that syntax errors keep their file line numbers.'''
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from vie_solver.errors import VieSolverError, VieSyntaxError
from vie_solver.expr.nodes import Equation, Expr
from vie_solver.expr.parser import parse, parse_expr

_HEADER = re.compile(r"^\s*([A-Za-z_]+)\s*:\s*(.*?)\s*$")
_WINDOW = re.compile(r"^\s*(-?\d+(?:\.\d+)?)\s*\.\.\s*(-?\d+(?:\.\d+)?)\s*$")

HEADER_KEYS = ("order", "iters", "precision", "label", "backend", "mode", "reference", "window")


@dataclass
class VieDocument:
    """A parsed .vie file: the equation plus its run metadata"""

    equation: Equation
    source: str
    path: Optional[Path] = None
    label: str = ""
    order: Optional[int] = None
    iters: Optional[int] = None
    precision: Optional[int] = None
    backend: Optional[str] = None
    mode: Optional[str] = None
    reference_text: Optional[str] = None
    reference: Optional[Expr] = None
    window: Optional[Tuple[Fraction, Fraction]] = None
    headers: Dict[str, str] = field(default_factory=dict)


def parse_window(text: str) -> Tuple[Fraction, Fraction]:
    """Read "a..b" into a pair of exact rationals"""
    match = _WINDOW.match(text)
    if match is None:
        raise VieSyntaxError(f"window must look like 0..1, got {text!r}")
    start, end = Fraction(match.group(1)), Fraction(match.group(2))
    if end <= start:
        raise VieSyntaxError(f"empty window {text!r}")
    return start, end


def _header_value(key: str, value: str, line: int):
    def positive_int(minimum: int):
        if not value.isdigit() or int(value) < minimum:
            raise VieSyntaxError(f"{key} must be an integer >= {minimum}, got {value!r}", line)
        return int(value)

    if key == "order":
        return positive_int(0)
    if key == "iters":
        return positive_int(1)
    if key == "precision":
        return positive_int(32)
    if key == "backend" and value not in ("rational", "float"):
        raise VieSyntaxError(f"backend must be rational or float, got {value!r}", line)
    if key == "mode" and value not in ("fixed_iters", "stabilize"):
        raise VieSyntaxError(f"mode must be fixed_iters or stabilize, got {value!r}", line)
    if key == "window":
        try:
            return parse_window(value)
        except VieSyntaxError as exc:
            raise VieSyntaxError(exc.message.removeprefix("syntax error: "), line) from exc
    return value


def read_vie_text(text: str, path: Optional[Path] = None) -> VieDocument:
    """Split headers from the equation text and parse both"""
    headers: Dict[str, str] = {}
    values: Dict[str, object] = {}
    body = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0]
        match = _HEADER.match(content)
        if match is None:
            body.append(line)
            continue
        key, value = match.group(1).lower(), match.group(2)
        if key not in HEADER_KEYS:
            raise VieSyntaxError(f"unknown header {key!r}", number)
        headers[key] = value
        values[key] = _header_value(key, value, number)
        body.append("")

    label = values.get("label") or (path.stem if path is not None else "")
    equation = parse("\n".join(body), label=label)

    reference = None
    if "reference" in values:
        try:
            reference = parse_expr(values["reference"])
        except VieSolverError as exc:
            raise VieSyntaxError(f"bad reference expression: {exc.message}") from exc

    return VieDocument(
        equation=equation,
        source=text,
        path=path,
        label=label,
        order=values.get("order"),
        iters=values.get("iters"),
        precision=values.get("precision"),
        backend=values.get("backend"),
        mode=values.get("mode"),
        reference_text=values.get("reference"),
        reference=reference,
        window=values.get("window"),
        headers=headers,
    )


def read_vie(path: Union[str, Path]) -> VieDocument:
    """
    Read a .vie file

    Args:
        path: file location

    Returns:
        VieDocument with the parsed equation and header metadata
    """
    path = Path(path)
    if not path.exists():
        raise VieSolverError(f"equation file not found: {path}")
    return read_vie_text(path.read_text(encoding="utf-8"), path)
