"""CLI module for ldpc-minweight."""

from .main import app

__all__ = ["app"]
