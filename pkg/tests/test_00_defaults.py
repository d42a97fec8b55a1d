import importlib
import logging

import pytest

from cyquiver import settings
from cyquiver.settings import JobConfig, SUBCOMMANDS


def test_job_config_defaults():
    config = JobConfig("check")
    assert config.inputs == []
    assert config.d is None
    assert config.truncation == settings.CYQUIVER_TRUNCATION
    assert config.window == settings.CYQUIVER_WINDOW
    assert config.output is None
    assert isinstance(config.structured, bool)
    assert isinstance(config.verbose, bool)


def test_subcommands():
    assert SUBCOMMANDS == {
        "build-double",
        "from-ext",
        "ext-table",
        "check",
        "lift",
        "restrict",
        "gauge",
        "dgla",
        "products",
    }


@pytest.mark.parametrize(
    "kwargs",
    [
        {"subcommand": "nope"},
        {"subcommand": "check", "truncation": 2},
        {"subcommand": "dgla", "window": 0},
        {"subcommand": "lift", "d": 1},
    ],
)
def test_job_config_rejects(kwargs):
    with pytest.raises(ValueError):
        JobConfig(**kwargs)


def test_job_config_overrides():
    config = JobConfig("dgla", ["q.json"], d=4, truncation=5, window=3, structured=True)
    assert config.inputs == ["q.json"]
    assert (config.d, config.truncation, config.window, config.structured) == (4, 5, 3, True)


def test_env_defaults(monkeypatch):
    monkeypatch.setenv("CYQUIVER_TRUNCATION", "11")
    monkeypatch.setenv("CYQUIVER_WINDOW", "not a number")
    monkeypatch.setenv("CYQUIVER_STRUCTURED", "yes")
    monkeypatch.setenv("CYQUIVER_VERBOSE", "0")
    try:
        reloaded = importlib.reload(settings)
        assert reloaded.CYQUIVER_TRUNCATION == 11
        assert reloaded.CYQUIVER_WINDOW == 6
        assert reloaded.CYQUIVER_STRUCTURED is True
        assert reloaded.CYQUIVER_VERBOSE is False
    finally:
        monkeypatch.undo()
        importlib.reload(settings)


def test_verbose_enables_info_logging(monkeypatch):
    calls = []
    monkeypatch.setattr(logging, "basicConfig", lambda **kwargs: calls.append(kwargs))
    JobConfig("check", verbose=True)
    assert calls == [{"level": logging.INFO}]
