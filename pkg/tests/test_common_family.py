import pytest

from pyadams.common_config import SessionConfig
from pyadams.common_errors import ConfigError
from pyadams.common_family import (
    detection_family,
    family_from_config,
    family_reordered,
    family_widened,
)


def test_default_family_order():
    family = detection_family(3)
    names = [name for name, _ in family.members]
    assert names[:3] == ["L_0", "L_-1", "L_1"]
    assert names[3:] == ["E(0,-1)", "E(0,1)", "E(-1,0)", "E(-1,1)", "E(1,0)", "E(1,-1)"]
    assert len(family) == 9


def test_descriptor_is_deterministic():
    a = detection_family(5, window=(-2, 1), kind="lines")
    b = detection_family(5, window=(-2, 1), kind="lines")
    assert a.descriptor == b.descriptor
    assert a.descriptor == "lines[-2..1] max_rank=2: L_0, L_-1, L_1, L_-2"


def test_lines_only():
    assert len(detection_family(3, max_rank=1)) == 3
    assert len(detection_family(3, window=(0, 0))) == 1


def test_family_errors():
    with pytest.raises(ConfigError):
        detection_family(3, window=(2, 1))
    with pytest.raises(ConfigError):
        detection_family(3, max_rank=0)
    with pytest.raises(ConfigError):
        detection_family(3, kind="huge")
    with pytest.raises(ConfigError):
        detection_family(4)


def test_from_config_and_variants():
    cfg = SessionConfig(p=3, window=(-2, 2), family_kind="lines")
    family = family_from_config(cfg)
    assert family.window == (-2, 2)
    assert len(family) == 5

    reordered = family_reordered(family)
    assert [name for name, _ in reordered.members] == list(reversed([name for name, _ in family.members]))
    assert reordered.kind == "lines-reversed"

    assert family_widened(family).window == (-4, 4)
    assert family_widened(reordered, by=1).window == (-3, 3)
    assert family_widened(reordered, by=1).kind == "lines"
    assert family_widened(detection_family(3, window=(0, 0))).window == (-1, 1)
