"""Tests for manifest serialization."""

import csv
import io
import json

import pytest
from pydantic import ValidationError

from ldpc_minweight.core.oracle import exhaustive_min_weight
from ldpc_minweight.core.search import run_search
from ldpc_minweight.errors import ContractViolation
from ldpc_minweight.export.exporter import TRIAL_COLUMNS, Exporter, ExportFormat, load_manifest
from ldpc_minweight.models.entities import (
    ChannelConfig,
    RunManifest,
    SearchConfig,
    SearchReport,
    WeightSpectrumSlice,
)


@pytest.fixture
def search_manifest(hamming) -> RunManifest:
    cfg = SearchConfig(l_c=8, channel=ChannelConfig(sigma=0.6, seed=2))
    return RunManifest(
        command="search",
        code_path="hamming74.alist",
        tool_version="0.1.0",
        config=cfg,
        result=run_search(hamming, cfg),
    )


def test_json_round_trip(search_manifest):
    text = Exporter().export_manifest(search_manifest, ExportFormat.JSON)
    assert load_manifest(text) == search_manifest


def test_oracle_manifest_round_trip(hamming):
    manifest = RunManifest(
        command="oracle",
        code_path="hamming74.alist",
        tool_version="0.1.0",
        result=exhaustive_min_weight(hamming),
    )
    again = load_manifest(Exporter().export_manifest(manifest))
    assert isinstance(again.result, WeightSpectrumSlice)
    assert again == manifest


def test_absent_optionals_serialize_as_null():
    cfg = SearchConfig(channel=ChannelConfig(sigma=1.0))
    report = SearchReport(config=cfg, n=7, m=3, rank=3, dimension=4)
    manifest = RunManifest(
        command="search", code_path="x.alist", tool_version="0.1.0", config=cfg, result=report
    )
    data = json.loads(Exporter().export_manifest(manifest))
    assert data["finished_at"] is None
    assert data["result"]["best_weight"] is None
    assert data["result"]["earliest_best_trial"] is None
    assert data["config"]["all_pairs_top"] is None


def test_witness_hex_length_matches_code_length(search_manifest):
    for witness in search_manifest.result.witnesses:
        assert len(witness.hex) == (witness.length + 3) // 4


def test_csv_progress_table(search_manifest, tmp_path):
    path = tmp_path / "trials.csv"
    text = Exporter().export_manifest(search_manifest, ExportFormat.CSV, path)
    assert path.read_text() == text
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == TRIAL_COLUMNS
    assert len(rows) == 1 + 8
    assert rows[1][0] == "1"


def test_csv_refused_for_oracle(hamming):
    manifest = RunManifest(
        command="oracle",
        code_path="hamming74.alist",
        tool_version="0.1.0",
        result=exhaustive_min_weight(hamming),
    )
    with pytest.raises(ContractViolation) as info:
        Exporter().export_manifest(manifest, ExportFormat.CSV)
    assert info.value.exit_code == 4


def test_spectrum_rejects_excess_witnesses():
    with pytest.raises(ValidationError):
        WeightSpectrumSlice(n=3, dimension=1, d_min=3, multiplicity=1, witnesses=["e", "e"])


def test_manifest_requires_code_path(search_manifest):
    with pytest.raises(ValidationError):
        RunManifest(
            command="search", code_path="", tool_version="0.1.0", result=search_manifest.result
        )
