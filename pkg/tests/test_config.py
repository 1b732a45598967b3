from fractions import Fraction

import pytest
import yaml

from vie_solver.config import ConfigLoader, get_config, reload_config
from vie_solver.errors import ConfigError
from vie_solver.expr import read_vie_text
from vie_solver.pipeline.run_config import fraction_text, resolve_run, sample_points


def write(tmp_path, text, name="config.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults():
    config = ConfigLoader()
    assert config.get("series", "order") == 8
    assert config.get("coeff", "precision") == 64
    assert config.get("picard", "max_iters") is None
    assert set(config.get_section("oracle")) >= {"step", "precision", "max_sweeps", "damping"}


def test_partial_override(tmp_path):
    config = ConfigLoader(write(tmp_path, "coeff:\n  precision: 80\n"))
    assert config.get("coeff", "precision") == 80
    assert config.get("coeff", "backend") == "auto"


def test_json_config(tmp_path):
    config = ConfigLoader(write(tmp_path, '{"output": {"places": 7}}', "config.json"))
    assert config.get("output", "places") == 7


@pytest.mark.parametrize("text", [
    "coeff:\n  precision: 16\n",
    "picard:\n  mode: forever\n",
    "oracle:\n  damping: 0\n",
    "output:\n  format: xml\n",
    "oracle:\n  precision: 16\n",
    "compare:\n  horizon: 0\n",
])
def test_invalid_values(tmp_path, text):
    with pytest.raises(ConfigError):
        ConfigLoader(write(tmp_path, text))


def test_missing_file_and_format(tmp_path):
    with pytest.raises(ConfigError):
        ConfigLoader(tmp_path / "missing.yaml")
    with pytest.raises(ConfigError):
        ConfigLoader(write(tmp_path, "x", "config.toml"))


def test_save_and_reload(tmp_path):
    config = ConfigLoader(write(tmp_path, "series:\n  order: 5\n"))
    saved = tmp_path / "saved.yaml"
    config.save_config(saved)
    assert yaml.safe_load(saved.read_text(encoding="utf-8"))["series"]["order"] == 5
    assert reload_config(saved).get_all_config()["series"]["order"] == 5
    assert get_config() is get_config()
    reload_config()


def test_precedence(tmp_path):
    config = ConfigLoader(write(tmp_path, "series:\n  order: 3\npicard:\n  max_iters: 6\n"))
    doc = read_vie_text("order: 5\ny(t) = 1 + int(y(s), s=0..t)")
    run = resolve_run("solve", config, doc, {"order": None, "iters": 2})
    assert run.order == 5
    assert run.iters == 2
    assert resolve_run("solve", config, doc, {"order": 7}).order == 7
    assert resolve_run("solve", config, read_vie_text("y(t) = 1"), {}).max_iters == 6
    assert resolve_run("solve", ConfigLoader(), read_vie_text("order: 4\ny(t) = 1"), {}).max_iters == 8


def test_run_validation():
    config = ConfigLoader()
    doc = read_vie_text("y(t) = 1 + int(y(s), s=0..t)")
    with pytest.raises(ConfigError):
        resolve_run("solve", config, doc, {"order": -1})
    with pytest.raises(ConfigError):
        resolve_run("compare", config, doc, {"window": "0..5"})
    with pytest.raises(ConfigError):
        resolve_run("compare", config, doc, {"reference": "sin("})


def test_sample_points():
    assert sample_points((Fraction(0), Fraction(1)), 3) == [0, Fraction(1, 2), 1]
    assert sample_points((Fraction(0), Fraction(1)), 1) == [1]
    assert fraction_text(Fraction(1, 10)) == "0.1"
    assert fraction_text(Fraction(2)) == "2"
