import pytest

from app.config import Config, load_config
from app.constants import (
    DEFAULT_ISO_LIST_CAP,
    DEFAULT_ORACLE_CAPS,
    SETTINGS_INT_KEYS,
    VALID_OUTPUT_FORMATS,
)


def test_defaults():
    config = Config({})

    assert config.iso_list_cap == DEFAULT_ISO_LIST_CAP
    assert config.hereditary_exhaustive_cap == 10
    assert config.edge_minimality_cap == 12
    assert config.jobs == 1
    assert config.output == "text"
    assert config.log_dir is None
    assert config.oracle_cap("weaksim_cap") == DEFAULT_ORACLE_CAPS["weaksim_cap"]


def test_load_config_without_file():
    assert load_config(None).settings == {}


def test_load_config_missing_file(tmp_path):
    with pytest.raises(SystemExit) as err:
        load_config(str(tmp_path / "missing.yaml"))

    assert err.value.code == 2


def test_load_config_invalid_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("oracle: [unclosed")

    with pytest.raises(SystemExit):
        load_config(str(path))


def test_load_config_empty_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")

    assert load_config(str(path)).settings == {}


@pytest.mark.parametrize("key", SETTINGS_INT_KEYS)
@pytest.mark.parametrize("value", [0, -3, "12", True, 1.5])
def test_validate_integers_rejects(key, value):
    validator = Config({key: value})

    with pytest.raises(SystemExit):
        validator.validate_integers()


@pytest.mark.parametrize("key", SETTINGS_INT_KEYS)
def test_validate_integers_accepts(key):
    assert Config({key: 3}).validate_integers()


@pytest.mark.parametrize("output", VALID_OUTPUT_FORMATS)
def test_validate_output_accepts(output):
    assert Config({"output": output}).validate_output()


def test_validate_output_rejects():
    with pytest.raises(SystemExit):
        Config({"output": "xml"}).validate_output()


@pytest.mark.parametrize(
    "oracle",
    [
        {"permutations_cap": 8},
        {"isometries_cap": 0},
        {"weaksim_cap": "7"},
        ["isometries_cap"],
    ],
)
def test_validate_oracle_caps_rejects(oracle):
    with pytest.raises(SystemExit):
        Config({"oracle": oracle}).validate_oracle_caps()


def test_oracle_cap_override():
    config = Config({"oracle": {"isometries_cap": 6}})

    assert config.validate_oracle_caps()
    assert config.oracle_cap("isometries_cap") == 6
    assert config.oracle_cap("ham_paths_cap") == 8


@pytest.mark.parametrize("seed", ["1", 1.0, False])
def test_validate_seed_rejects(seed):
    with pytest.raises(SystemExit):
        Config({"seed": seed}).validate_seed()


def test_seed_environment_override(monkeypatch):
    monkeypatch.setenv("ULTRA_SEED", "77")

    assert Config({"seed": 3}).seed == 77


def test_seed_environment_must_be_integer(monkeypatch):
    monkeypatch.setenv("ULTRA_SEED", "seven")

    with pytest.raises(SystemExit):
        Config({}).seed


def test_seed_from_settings(monkeypatch):
    monkeypatch.delenv("ULTRA_SEED", raising=False)

    assert Config({"seed": 3}).seed == 3
    assert Config({}).seed == 0


def test_validate_rejects_non_mapping():
    with pytest.raises(SystemExit):
        Config(["seed"]).validate()


def test_validate_logs_and_exits(mocker):
    log_error = mocker.patch("app.config.logger.error")

    with pytest.raises(SystemExit):
        Config({"jobs": 0}).validate()

    log_error.assert_called_once()
