"""Utility functions for ldpc-minweight."""

from .config import PRESETS, CodePreset, Config, get_config, set_config
from .logging import setup_logging, stderr_console

__all__ = [
    "PRESETS",
    "CodePreset",
    "Config",
    "get_config",
    "set_config",
    "setup_logging",
    "stderr_console",
]
