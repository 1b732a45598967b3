import yaml
import json
from pathlib import Path
from typing import Dict, Any, Optional
from vie_solver import ENV
from vie_solver.errors import ConfigError

REQUIRED_SECTIONS = ['series', 'picard', 'coeff', 'polynomialize', 'oracle', 'compare', 'output']


class ConfigLoader:
    """Load and validate solver configuration"""

    def __init__(self, config_path: Optional[Path] = None):
        """
        Initialize config loader

        Args:
            config_path: Path to config file. If None, uses default_config.yaml.
                A user file only needs the keys it overrides.
        """
        default_path = ENV.CONFIG_DIR / "default_config.yaml"
        self.config_path = Path(config_path) if config_path is not None else default_path
        self.config = self._read(default_path)
        if self.config_path != default_path:
            self._merge(self.config, self._read(self.config_path))
        self._validate_config()

    def _read(self, path: Path) -> Dict[str, Any]:
        """Load configuration from a YAML or JSON file"""
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")

        with open(path, 'r', encoding='utf-8') as f:
            if path.suffix in ('.yaml', '.yml'):
                config = yaml.safe_load(f)
            elif path.suffix == '.json':
                config = json.load(f)
            else:
                raise ConfigError(f"Unsupported config format: {path.suffix}")

        return config or {}

    def _merge(self, base: Dict[str, Any], override: Dict[str, Any]):
        for key, value in override.items():
            if isinstance(value, dict) and isinstance(base.get(key), dict):
                self._merge(base[key], value)
            else:
                base[key] = value

    def _validate_config(self):
        """Validate configuration structure and values"""
        for section in REQUIRED_SECTIONS:
            if section not in self.config:
                raise ConfigError(f"Missing required config section: {section}")

        checks = [
            (self.get('series', 'order') >= 0, "series.order must be >= 0"),
            (self.get('coeff', 'precision') >= 32, "coeff.precision must be >= 32"),
            (self.get('coeff', 'backend') in ('auto', 'rational', 'float'),
             "coeff.backend must be one of auto, rational, float"),
            (self.get('picard', 'mode') in ('fixed_iters', 'stabilize'),
             "picard.mode must be fixed_iters or stabilize"),
            (self.get('picard', 'max_iters') is None or self.get('picard', 'max_iters') >= 1,
             "picard.max_iters must be >= 1"),
            (self.get('polynomialize', 'variable_cap') >= 1, "polynomialize.variable_cap must be >= 1"),
            (self.get('polynomialize', 'degree_cap') >= 1, "polynomialize.degree_cap must be >= 1"),
            (float(self.get('oracle', 'step')) > 0, "oracle.step must be > 0"),
            (self.get('oracle', 'precision') >= 32, "oracle.precision must be >= 32"),
            (self.get('oracle', 'max_sweeps') >= 1, "oracle.max_sweeps must be >= 1"),
            (0 < float(self.get('oracle', 'damping')) <= 1, "oracle.damping must be in (0, 1]"),
            (self.get('compare', 'samples') >= 1, "compare.samples must be >= 1"),
            (len(self.get('compare', 'window')) == 2, "compare.window must be [start, end]"),
            (float(self.get('compare', 'horizon')) > 0, "compare.horizon must be > 0"),
            (float(self.get('compare', 'practically_zero')) >= 0, "compare.practically_zero must be >= 0"),
            (self.get('output', 'places') >= 0, "output.places must be >= 0"),
            (self.get('output', 'format') in ('text', 'json', 'csv'),
             "output.format must be one of text, json, csv"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Get a single value from a section"""
        return self.config.get(section, {}).get(key, default)

    def get_section(self, section: str) -> Dict[str, Any]:
        """Get a whole section"""
        return self.config.get(section, {})

    def get_all_config(self) -> Dict[str, Any]:
        """Get complete configuration"""
        return self.config

    def save_config(self, output_path: Path):
        """Save current configuration to file"""
        with open(output_path, 'w', encoding='utf-8') as f:
            yaml.dump(self.config, f, default_flow_style=False)



_config_instance = None

def get_config(config_path: Path = None) -> ConfigLoader:
    """Get global config instance (singleton pattern)"""
    global _config_instance
    if _config_instance is None:
        _config_instance = ConfigLoader(config_path)
    return _config_instance

def reload_config(config_path: Path = None) -> ConfigLoader:
    """Reload configuration"""
    global _config_instance
    _config_instance = ConfigLoader(config_path)
    return _config_instance
