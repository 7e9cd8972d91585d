import logging
import os

import pytest

from twistknot.config import DEFAULTS, ApiConfigSource, Config, ConfigSource, YmlFileConfigSource
from twistknot.exceptions import ConfigError, ConfigValueError, UnknownOptionError
from twistknot.search import CountedSet, SearchConfig


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for key in list(os.environ):
        if key.startswith("TKC_"):
            monkeypatch.delenv(key)


def test_defaults():
    config = Config(ApiConfigSource({}), use_envs=True)
    for name, value in DEFAULTS.items():
        assert config.get(name) == value


def test_unset_api_values_fall_through():
    config = Config(ApiConfigSource({"node_cap": None, "seed": 3}))
    assert config.get("node_cap") == DEFAULTS["node_cap"]
    assert config.get("seed") == 3


def test_environment(monkeypatch):
    monkeypatch.setenv("TKC_NODE_CAP", "50")
    monkeypatch.setenv("TKC_ALLOW_ADD_MOVES", "yes")
    config = Config(ApiConfigSource({}), use_envs=True)
    assert config.get("node_cap") == 50
    assert config.get("allow_add_moves") is True


def test_environment_is_ignored_unless_asked(monkeypatch):
    monkeypatch.setenv("TKC_NODE_CAP", "50")
    assert Config(ApiConfigSource({})).get("node_cap") == DEFAULTS["node_cap"]


def test_api_beats_environment(monkeypatch):
    monkeypatch.setenv("TKC_NODE_CAP", "50")
    assert Config(ApiConfigSource({"node_cap": 7}), use_envs=True).get("node_cap") == 7


@pytest.mark.parametrize("value", ["abc", "0"])
def test_invalid_environment(monkeypatch, value):
    monkeypatch.setenv("TKC_NODE_CAP", value)
    with pytest.raises(ConfigValueError):
        Config(ApiConfigSource({}), use_envs=True)


def test_yaml_file(tmp_path, monkeypatch, caplog):
    path = tmp_path / "tkc.yml"
    path.write_text("node_cap: 10\nfree_budget: 3\nformat: text\nbogus: 1\n")
    monkeypatch.setenv("TKC_FREE_BUDGET", "5")
    with caplog.at_level(logging.WARNING):
        config = Config(ApiConfigSource({"config_path": path}), use_envs=True)
    assert config.get("node_cap") == 10
    assert config.get("free_budget") == 5
    assert config.get("format") == "text"
    assert "Unknown option 'bogus'" in caplog.text


@pytest.mark.parametrize("content", ["- 1\n- 2\n", "node_cap: [1\n"])
def test_bad_yaml_file(tmp_path, content):
    path = tmp_path / "tkc.yml"
    path.write_text(content)
    with pytest.raises(ConfigError):
        YmlFileConfigSource(path)


def test_missing_yaml_file(tmp_path):
    with pytest.raises(ConfigError):
        YmlFileConfigSource(tmp_path / "missing.yml")


def test_invalid_values_are_reported(tmp_path):
    path = tmp_path / "tkc.yml"
    path.write_text("format: xml\n")
    with pytest.raises(ConfigValueError) as info:
        Config(ApiConfigSource({"config_path": str(path)}))
    assert "format" in str(info.value)


def test_get_and_set_nested_paths():
    source = ApiConfigSource({})
    source.set("search.depth", 2)
    assert source.get("search.depth") == 2
    assert source.get("search.width", None) is None
    with pytest.raises(UnknownOptionError):
        source.get("search.width")


def test_string_conversions():
    assert ConfigSource.str_to_bool(" On ") is True
    assert ConfigSource.str_to_bool("0") is False
    assert ConfigSource.str_to_int(" 12 ") == 12
    with pytest.raises(ValueError):
        ConfigSource.str_to_bool("maybe")


def test_search_config():
    config = Config(ApiConfigSource({"node_cap": 99, "free_budget": 2}))
    search = config.search_config(CountedSet.FORBIDDEN, max_counted=4)
    assert search == SearchConfig(counted_set=CountedSet.FORBIDDEN, max_counted=4, free_budget=2, node_cap=99)
    assert config.search_config().max_counted == DEFAULTS["max_counted"]
