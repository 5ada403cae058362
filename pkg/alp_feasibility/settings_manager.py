"""
Settings Manager: one lookup for every tunable of the engine.

Precedence is environment > config.toml > built-in default. A setting
``[section] key`` can be overridden by the variable ALPFEAS_SECTION_KEY.
"""

import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

try:
    import tomllib  # Python 3.11+

    def _read_toml(path: Path) -> Dict[str, Any]:
        with open(path, "rb") as f:
            return tomllib.load(f)

except ImportError:
    import toml

    def _read_toml(path: Path) -> Dict[str, Any]:
        with open(path, "r", encoding="utf-8") as f:
            return toml.load(f)


ENV_PREFIX = "ALPFEAS_"


class SettingsManager:
    """TOML sections plus ALPFEAS_* environment overrides."""

    def __init__(self, config_path: str = "config.toml"):
        self.base_dir = Path(__file__).parent
        self._load_env()
        self.config_path = self._find(config_path)
        self._config = self._load_config()

    def _search_dirs(self) -> List[Path]:
        # package dir, repo root, then the caller's cwd
        return [self.base_dir, self.base_dir.parent, Path.cwd()]

    def _load_env(self):
        for directory in self._search_dirs():
            env_path = directory / ".env"
            if env_path.exists():
                load_dotenv(env_path, override=False)
                break

    def _find(self, name: str) -> Optional[str]:
        for directory in self._search_dirs():
            candidate = directory / name
            if candidate.exists():
                return str(candidate)
        return None

    def _load_config(self) -> Dict[str, Any]:
        """Parsed config file; a missing or malformed file yields {}."""
        if not self.config_path:
            return {}
        try:
            return _read_toml(Path(self.config_path))
        except Exception as e:
            # the rich logger sits above this module, so report on plain stderr
            print(f"warning: error loading {self.config_path}: {e}", file=sys.stderr)
            return {}

    @property
    def config(self) -> Dict[str, Any]:
        return self._config

    def get(self, key: str, default: Any = None) -> Any:
        return self._config.get(key, default)

    def get_nested(self, section: str, key: str, default: Any = None) -> Any:
        """Value of ``[section] key`` in the config file."""
        table = self._config.get(section)
        if not isinstance(table, dict):
            return default
        return table.get(key, default)

    def get_env(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return os.environ.get(key, default)

    @staticmethod
    def env_name(section: str, key: str) -> str:
        return f"{ENV_PREFIX}{section}_{key}".upper()

    def setting(self, section: str, key: str, default: Any = None) -> Any:
        """Environment override, else the config file, else ``default``.

        Environment values are strings; they are converted to the type of
        ``default`` when one is given.
        """
        raw = self.get_env(self.env_name(section, key))
        if raw is None or not raw.strip():
            return self.get_nested(section, key, default)
        if default is None or isinstance(default, str):
            return raw
        try:
            return type(default)(raw)
        except ValueError:
            print(f"warning: ignoring {self.env_name(section, key)}={raw!r}", file=sys.stderr)
            return self.get_nested(section, key, default)


# Singleton instance
settings = SettingsManager()
