import pytest

from pyadams.common_config import SessionConfig, config_update, window_parse
from pyadams.common_errors import ConfigError


def test_defaults():
    cfg = SessionConfig()
    assert cfg.config == (3, 4, 4)
    assert cfg.window == (-1, 1)

    cfg = SessionConfig(p=5)
    assert (cfg.period, cfg.twist_weight) == (8, 8)
    assert SessionConfig(p=5, period=3).config == (5, 3, 8)


def test_describe():
    cfg = SessionConfig(p=3, window=[-2, 2], depth=6)
    assert cfg.window == (-2, 2)
    assert cfg.describe() == "p=3 N=4 w=4 window=-2:2 max_rank=2 depth=6 family=default"


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(p=2),
        dict(p=9),
        dict(period=0),
        dict(depth=0),
        dict(max_rank=0),
        dict(window=(1, 0)),
        dict(family_kind="all"),
    ],
)
def test_invalid(kwargs):
    with pytest.raises(ConfigError):
        SessionConfig(**kwargs)


def test_update_is_a_copy():
    cfg = SessionConfig()
    other = config_update(cfg, depth=7)
    assert other.depth == 7
    assert cfg.depth == 4


def test_window_parse():
    assert window_parse("-2:3") == (-2, 3)
    with pytest.raises(ConfigError):
        window_parse("2")
    with pytest.raises(ConfigError):
        window_parse("a:b")
