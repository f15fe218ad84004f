"""Export run manifests to JSON or CSV."""

import csv
from enum import Enum
from io import StringIO
from pathlib import Path
from typing import Optional

from ..errors import ContractViolation
from ..models.entities import RunManifest, SearchReport, TrialRecord

TRIAL_COLUMNS = list(TrialRecord.model_fields)


class ExportFormat(str, Enum):
    """Supported export formats."""

    JSON = "json"
    CSV = "csv"


class Exporter:
    """Serialize run manifests.

    JSON carries the whole manifest. CSV only carries the per-trial progress
    table of a search, since witnesses do not flatten into rows.
    """

    def export_manifest(
        self,
        manifest: RunManifest,
        format: ExportFormat = ExportFormat.JSON,
        output_path: Optional[Path] = None,
    ) -> str:
        """Export a run manifest.

        Args:
            manifest: The manifest to export
            format: Export format
            output_path: Optional path to save the file

        Returns:
            Formatted string output
        """
        if format == ExportFormat.JSON:
            output = self._to_json(manifest)
        elif format == ExportFormat.CSV:
            if not isinstance(manifest.result, SearchReport):
                raise ContractViolation(
                    f"CSV export only covers search runs, not {manifest.command}", exit_code=4
                )
            output = self._trials_to_csv(manifest.result.trials)
        else:
            raise ValueError(f"Unsupported format: {format}")

        if output_path:
            output_path.write_text(output, encoding="utf-8")

        return output

    def _to_json(self, manifest: RunManifest) -> str:
        return manifest.model_dump_json(indent=2) + "\n"

    def _trials_to_csv(self, trials: list[TrialRecord]) -> str:
        output = StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(TRIAL_COLUMNS)
        for record in trials:
            row = record.model_dump()
            writer.writerow(["" if row[c] is None else row[c] for c in TRIAL_COLUMNS])
        return output.getvalue()


def load_manifest(text: str) -> RunManifest:
    """Parse a JSON manifest written by :class:`Exporter`."""
    return RunManifest.model_validate_json(text)
