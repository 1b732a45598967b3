from __future__ import annotations
from pathlib import Path

_root_path=Path(__file__).parent.parent.resolve()



class ENV:
    ROOT_DIR: Path=_root_path
    PACKAGE_DIR: Path=ROOT_DIR / "vie_solver"
    CONFIG_DIR: Path=PACKAGE_DIR / "config"
    SCHEMA_DIR: Path=PACKAGE_DIR / "schemas"
    DATA_DIR: Path=ROOT_DIR / "data"
    EQUATIONS_DIR: Path=DATA_DIR / "equations"
    OUTPUT_DIR: Path=DATA_DIR / "outputs"

ENV.DATA_DIR.mkdir(exist_ok=True, parents=True)
ENV.EQUATIONS_DIR.mkdir(exist_ok=True, parents=True)
ENV.OUTPUT_DIR.mkdir(exist_ok=True, parents=True)
