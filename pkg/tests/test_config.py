import pytest
from sympy import QQ

from superjacobi.config import DEFAULT_RETRY_T, get_settings

VARIABLES = ("SUPERJACOBI_RETRY_T", "SUPERJACOBI_MAX_SIZE", "SUPERJACOBI_SEED", "SUPERJACOBI_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in VARIABLES:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    settings = get_settings()
    assert settings.retry_t == (QQ(1, 2), QQ(5, 3), QQ(7, 11), QQ(13, 7))
    assert settings.max_size == 4
    assert settings.seed == 0
    assert settings.log_level == "WARNING"
    assert DEFAULT_RETRY_T.startswith("1/2")


def test_overrides(monkeypatch):
    monkeypatch.setenv("SUPERJACOBI_RETRY_T", "3, -1/4")
    monkeypatch.setenv("SUPERJACOBI_MAX_SIZE", "6")
    monkeypatch.setenv("SUPERJACOBI_SEED", "42")
    monkeypatch.setenv("SUPERJACOBI_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.retry_t == (QQ(3), QQ(-1, 4))
    assert settings.max_size == 6
    assert settings.seed == 42
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name, value",
    [
        ("SUPERJACOBI_RETRY_T", "1/0"),
        ("SUPERJACOBI_RETRY_T", " , "),
        ("SUPERJACOBI_MAX_SIZE", "four"),
        ("SUPERJACOBI_MAX_SIZE", "-1"),
        ("SUPERJACOBI_LOG_LEVEL", "LOUD"),
    ],
)
def test_malformed_values_point_at_env_example(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError) as excinfo:
        get_settings()
    assert ".env.example" in str(excinfo.value)
