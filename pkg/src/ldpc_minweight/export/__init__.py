"""Export functionality for ldpc-minweight."""

from .exporter import Exporter, ExportFormat, load_manifest

__all__ = ["Exporter", "ExportFormat", "load_manifest"]
