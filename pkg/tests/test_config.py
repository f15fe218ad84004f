"""Tests for environment-driven configuration."""

from pathlib import Path

import pytest

from ldpc_minweight.errors import ConfigurationError
from ldpc_minweight.utils.config import Config, get_config, set_config


def test_defaults(monkeypatch):
    for name in ("MINWEIGHT_LLR_CLIP", "MINWEIGHT_KEEP_TOP", "MINWEIGHT_MAX_DIM"):
        monkeypatch.delenv(name, raising=False)
    cfg = Config()
    assert (cfg.llr_clip, cfg.keep_top, cfg.max_dim) == (50.0, 1024, 25)


def test_reads_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("MINWEIGHT_THREADS", "4")
    monkeypatch.setenv("MINWEIGHT_LLR_CLIP", "20.5")
    monkeypatch.setenv("MINWEIGHT_CODES_DIR", str(tmp_path))
    cfg = Config()
    assert cfg.threads == 4
    assert cfg.llr_clip == 20.5
    assert cfg.codes_dir == Path(tmp_path)


def test_malformed_integer_names_the_variable(monkeypatch):
    monkeypatch.setenv("MINWEIGHT_KEEP_TOP", "abc")
    with pytest.raises(ConfigurationError, match="MINWEIGHT_KEEP_TOP") as info:
        Config()
    assert info.value.exit_code == 4


def test_unknown_pattern_check(monkeypatch):
    monkeypatch.setenv("MINWEIGHT_PATTERN_CHECK", "sometimes")
    with pytest.raises(ConfigurationError):
        Config()


def test_resolve_code_falls_back_to_codes_dir(tmp_path):
    (tmp_path / "code.alist").write_text("")
    cfg = Config(codes_dir=tmp_path)
    assert cfg.resolve_code("code.alist") == tmp_path / "code.alist"
    assert cfg.resolve_code("missing.alist") == Path("missing.alist")


def test_preset_lookup_by_stem():
    cfg = Config()
    assert cfg.preset_for(Path("/data/96.33.964.alist")).sigma == 0.70
    assert cfg.preset_for(Path("hamming74.alist")) is None


def test_set_config_none_reloads():
    custom = Config(keep_top=3)
    set_config(custom)
    assert get_config() is custom
    set_config(None)
    assert get_config() is not custom
