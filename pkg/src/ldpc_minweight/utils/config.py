"""Configuration management for ldpc-minweight."""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, TypeVar

from ..errors import ConfigurationError

Number = TypeVar("Number", int, float)

# Try to load from .env if python-dotenv is available
try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass


@dataclass(frozen=True)
class CodePreset:
    """Operating point used for a database code when flags are omitted."""

    sigma: float
    max_iterations: int
    l_c: int


# Keyed by alist file stem.
PRESETS: dict[str, CodePreset] = {
    "96.33.964": CodePreset(sigma=0.70, max_iterations=5, l_c=100),
    "495.62.3.2915": CodePreset(sigma=0.44, max_iterations=4, l_c=100),
    "252.252.3.252": CodePreset(sigma=0.70, max_iterations=5, l_c=1000),
    "504.504.3.504": CodePreset(sigma=0.75, max_iterations=6, l_c=10000),
}


def _env_path(name: str) -> Optional[Path]:
    value = os.getenv(name)
    return Path(value).expanduser() if value else None


def _env_number(name: str, default: str, kind: Callable[[str], Number]) -> Number:
    value = os.getenv(name, default)
    try:
        return kind(value)
    except ValueError:
        raise ConfigurationError(f"{name}={value!r} is not a valid {kind.__name__}") from None


@dataclass
class Config:
    """Application configuration."""

    # Decoder and search defaults
    llr_clip: float = field(default_factory=lambda: _env_number("MINWEIGHT_LLR_CLIP", "50", float))
    keep_top: int = field(default_factory=lambda: _env_number("MINWEIGHT_KEEP_TOP", "1024", int))
    threads: int = field(default_factory=lambda: _env_number("MINWEIGHT_THREADS", "1", int))
    pattern_check: str = field(
        default_factory=lambda: os.getenv("MINWEIGHT_PATTERN_CHECK", "sample")
    )
    pattern_sample_rate: float = 0.01

    # Oracle limits
    max_dim: int = field(default_factory=lambda: _env_number("MINWEIGHT_MAX_DIM", "25", int))
    witness_cap: int = 4096

    # Directory holding the database alist files
    codes_dir: Optional[Path] = field(default_factory=lambda: _env_path("MINWEIGHT_CODES_DIR"))

    log_level: str = field(default_factory=lambda: os.getenv("MINWEIGHT_LOG_LEVEL", "WARNING"))

    def __post_init__(self):
        if self.pattern_check not in ("all", "sample", "off"):
            raise ConfigurationError(f"Unknown pattern check mode: {self.pattern_check}")

    def preset_for(self, code_path: Path) -> Optional[CodePreset]:
        """Preset for a code file, looked up by file stem."""
        return PRESETS.get(Path(code_path).stem)

    def resolve_code(self, name: str) -> Path:
        """Path as given if it exists, else the same name under ``codes_dir``."""
        path = Path(name)
        if path.exists() or self.codes_dir is None:
            return path
        candidate = self.codes_dir / path
        return candidate if candidate.exists() else path


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def set_config(config: Optional[Config]) -> None:
    """Set the global configuration instance; ``None`` reloads from the environment."""
    global _config
    _config = config
