from pathlib import Path
from typing import List, Optional, Union


def list_vie_files(directory: Path) -> List[Path]:
    dir_path = Path(directory)

    files = sorted(f for f in dir_path.iterdir() if f.suffix.lower() == ".vie")

    return files


def expand_inputs(paths: List[Union[str, Path]]) -> List[Path]:
    """Files as given; directories contribute their .vie files"""
    out = []
    for p in map(Path, paths):
        out.extend(list_vie_files(p) if p.is_dir() else [p])
    return out


def write_output(text: str, out: Optional[Path] = None) -> Optional[str]:
    """Write to `out` (UTF-8) when given, else return the text for stdout"""
    if out is None:
        return text
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    return None
