import json

import pytest

from census.search import CensusKey
from utils.config import CACHE_DIR_ENV, ConfigError, ConfigManager, get_config_manager
from utils.naming import NamingManager, cache_file_name


def write_config(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_missing_file_creates_defaults(tmp_path):
    path = tmp_path / "sub" / "config.json"
    cm = ConfigManager(str(path))
    assert path.exists()
    assert cm.get_census_config()["cache_dir"] == "cache"
    assert cm.get_output_config()["default_format"] == "json"
    assert json.loads(path.read_text(encoding="utf-8"))["gamma"]["witness_search"] is True


def test_loaded_config_is_merged(tmp_path):
    cm = ConfigManager(write_config(tmp_path / "c.json", {"census": {"budget_nodes": 10}}))
    census = cm.get_census_config()
    assert census["budget_nodes"] == 10
    assert census["threads"] is None
    assert cm.get_logging_config()["level"] == "INFO"


@pytest.mark.parametrize("content", ["{not json", json.dumps({"census": {"threads": 0}}),
                                     json.dumps({"output": {"default_format": "xml"}})])
def test_invalid_file_falls_back(tmp_path, content):
    path = tmp_path / "c.json"
    path.write_text(content, encoding="utf-8")
    cm = ConfigManager(str(path))
    assert cm.get_census_config()["threads"] is None
    assert cm.get_output_config()["default_format"] == "json"


def test_env_overrides_cache_dir(tmp_path, monkeypatch):
    cm = ConfigManager(write_config(tmp_path / "c.json", {"census": {"cache_dir": "a"}}))
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "env"))
    assert cm.get_census_config()["cache_dir"] == str(tmp_path / "env")
    monkeypatch.delenv(CACHE_DIR_ENV)
    assert cm.get_census_config()["cache_dir"] == "a"


def test_update_config_validates(tmp_path):
    cm = ConfigManager(str(tmp_path / "c.json"))
    cm.update_config("census", {"threads": 4})
    assert cm.get_census_config()["threads"] == 4
    with pytest.raises(ConfigError):
        cm.update_config("census", {"threads": 0})
    assert cm.get_census_config()["threads"] == 4


def test_save_and_reload(tmp_path):
    path = str(tmp_path / "c.json")
    cm = ConfigManager(path)
    cm.update_config("gamma", {"witness_search": False})
    cm.save_current_config()
    cm.update_config("gamma", {"witness_search": True})
    cm.reload_config()
    assert cm.get_gamma_config()["witness_search"] is False


def test_singleton_per_path(tmp_path):
    a = get_config_manager(str(tmp_path / "a.json"))
    assert get_config_manager(str(tmp_path / "a.json")) is a
    assert get_config_manager(str(tmp_path / "b.json")) is not a


def test_naming(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    naming = NamingManager(ConfigManager(str(tmp_path / "c.json")))
    assert naming.cache_dir() == "cache"
    assert naming.cache_dir("/tmp/x") == "/tmp/x"
    assert naming.witness_path("out.json") == "out.json.witness.txt"
    assert cache_file_name(CensusKey(2, 4, 17, 5)) == "census_q2_d4_n17_k5_ginf.txt"
    assert cache_file_name(CensusKey(2, 4, 17, 5, 3)) == "census_q2_d4_n17_k5_g3.txt"


def test_ensure_directory(tmp_path):
    target = tmp_path / "x" / "y" / "f.txt"
    NamingManager.ensure_directory(str(target))
    assert target.parent.is_dir()
