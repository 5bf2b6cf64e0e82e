import json
import math
import sys

import pytest

from config.settings import AppConfig, MZVSettings, QSMSettings, load_repro_file, parse_float_list


def test_defaults(app_config):
    assert app_config.qsm.hbar == pytest.approx(1 / math.e)
    assert app_config.qsm.beta_grid == [2.0, 4.0, 8.0, 16.0, 30.0]
    assert app_config.output.format == "json"
    assert app_config.log_dir is None
    assert app_config.repro == {}


def test_environment_overrides(app_config, monkeypatch):
    monkeypatch.setenv("QSM_HBAR", "0.5")
    monkeypatch.setenv("QSM_BETA_GRID", "[3, 6]")
    monkeypatch.setenv("MULTI_DET_CAP", "50")
    monkeypatch.setenv("MZV_ALLOW_DIVERGENT", "yes")
    monkeypatch.setenv("OUTPUT_FORMAT", "CSV")
    config = AppConfig.from_env()
    assert config.qsm.hbar == 0.5
    assert config.qsm.beta_grid == [3.0, 6.0]
    assert config.multi.det_cap == 50
    assert config.mzv.allow_divergent is True
    assert config.output.format == "csv"


def test_malformed_values_fall_back_with_a_warning(app_config, monkeypatch, caplog):
    monkeypatch.setenv("QSM_NMAX", "lots")
    monkeypatch.setenv("QSM_BETA_GRID", "2,x")
    monkeypatch.setenv("LOG_LEVEL", "chatty")
    config = AppConfig.from_env()
    assert config.qsm.nmax == 200
    assert config.qsm.beta_grid == [2.0, 4.0, 8.0, 16.0, 30.0]
    assert config.log_level == "INFO"
    assert "Invalid QSM_NMAX value" in caplog.text


def test_out_of_range_values_are_rejected(app_config, monkeypatch):
    monkeypatch.setenv("QSM_HBAR", "1.5")
    with pytest.raises(ValueError, match="QSM_HBAR"):
        AppConfig.from_env()
    with pytest.raises(ValueError):
        MZVSettings(hmax=0).validate()
    with pytest.raises(ValueError):
        QSMSettings(beta_grid=[]).validate()


def test_unsupported_output_format(app_config, monkeypatch):
    monkeypatch.setenv("OUTPUT_FORMAT", "xml")
    with pytest.raises(ValueError, match="OUTPUT_FORMAT"):
        AppConfig.from_env()


def test_parse_float_list():
    assert parse_float_list("2,4.5") == [2.0, 4.5]
    assert parse_float_list("[]") == []


def test_repro_file_is_discovered_in_the_working_directory(app_config, tmp_path):
    (tmp_path / "repro.yaml").write_text("witt:\n  samples: 5\n  max_k: 2\nbraid:\n  samples: 3\n")
    config = AppConfig.from_env()
    assert config.repro_config_file.endswith("repro.yaml")
    assert config.suite_params("witt") == {"samples": 5, "max_k": 2}
    assert config.suite_params("qsm") == {}


def test_repro_file_from_environment(app_config, tmp_path, monkeypatch):
    path = tmp_path / "overrides.json"
    path.write_text(json.dumps({"algebra": {"K": 24}, "mzv": "not a mapping"}))
    monkeypatch.setenv("REPRO_CONFIG_FILE", str(path))
    config = AppConfig.from_env()
    assert config.suite_params("algebra") == {"K": 24}
    assert config.suite_params("mzv") == {}


def test_broken_or_missing_repro_files_give_defaults(tmp_path):
    assert load_repro_file(None) == {}
    assert load_repro_file(str(tmp_path / "absent.yaml")) == {}
    broken = tmp_path / "broken.yaml"
    broken.write_text("witt: [1, 2\n")
    assert load_repro_file(str(broken)) == {}
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]")
    assert load_repro_file(str(listing)) == {}


def test_yaml_repro_file_without_pyyaml_gives_defaults(tmp_path, monkeypatch):
    overrides = tmp_path / "repro.yaml"
    overrides.write_text("witt:\n  nmax: 12\n")
    monkeypatch.setitem(sys.modules, "yaml", None)
    assert load_repro_file(str(overrides)) == {}


def test_to_dict_is_json_serializable(app_config):
    data = app_config.to_dict()
    assert json.loads(json.dumps(data))["qsm"]["nmax"] == 200
