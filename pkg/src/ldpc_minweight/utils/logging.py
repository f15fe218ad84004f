"""Logging setup: rich-formatted records on standard error."""

import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

stderr_console = Console(stderr=True)


def setup_logging(level: Union[int, str] = "WARNING", console: Optional[Console] = None) -> None:
    """Route the package logger through a RichHandler; safe to call more than once."""
    logger = logging.getLogger("ldpc_minweight")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(
        console=console or stderr_console,
        show_path=False,
        markup=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(handler)
    logger.setLevel(level.upper() if isinstance(level, str) else level)
    logger.propagate = False
