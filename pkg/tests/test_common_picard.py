from pathlib import Path

import pytest

from pyadams.common_config import SessionConfig, config_update
from pyadams.common_errors import ValidationError
from pyadams.common_io import load_object
from pyadams.common_monoid import unit_monoid, unit_shift
from pyadams.common_periodic import periodic_twist, periodify
from pyadams.common_picard import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    certify_inverse_pair,
    group_law_table,
    identify_shift,
)

DATA = Path(__file__).resolve().parent.parent / "data"
CFG = SessionConfig(p=3)


@pytest.mark.parametrize("p", [3, 5])
def test_identify_shift(p):
    cfg = SessionConfig(p=p)
    N = cfg.period
    for i in range(-2 * N, 2 * N + 1):
        assert identify_shift(unit_shift(cfg, i), cfg) == i


def test_identify_shift_rejects_other_lines():
    #: T ℙ𝓘 has the homology L_1 in degree 0, and 4 does not divide 1
    assert identify_shift(periodic_twist(unit_monoid(CFG), 1), CFG) is None
    Z = periodify(load_object(DATA / "zp0.json", CFG), CFG.period, CFG.twist_weight)
    assert identify_shift(Z, CFG) is None


def test_certify_data_pair():
    C = load_object(DATA / "pi_shift2.json", CFG)
    D = load_object(DATA / "pi_shift-2.json", CFG)
    cert = certify_inverse_pair(C, D, CFG)
    assert cert.verdict == CERTIFIED
    assert cert.certified_p
    assert cert.shift == 0
    assert cert.homology == cert.unit_homology
    assert cert.flags == ()


def test_certify_refutes():
    C = load_object(DATA / "pi_shift2.json", CFG)
    cert = certify_inverse_pair(C, C, CFG)
    assert cert.verdict == REFUTED
    assert cert.shift == 4


def test_certify_inconclusive():
    cfg = config_update(CFG, depth=1)
    C = load_object(DATA / "pi_shift2.json", cfg)
    Z = periodify(load_object(DATA / "zp0.json", cfg), cfg.period, cfg.twist_weight)
    cert = certify_inverse_pair(C, Z, cfg)
    assert cert.verdict == INCONCLUSIVE
    assert "truncated" in cert.flags


@pytest.mark.parametrize("p", [3, 5])
def test_group_law(p):
    table = group_law_table(SessionConfig(p=p), bound=3)
    assert len(table.laws) == 49
    assert [row.i for row in table.inverses] == list(range(-3, 4))
    assert table.holds_p


def test_picard_needs_periodic_input():
    with pytest.raises(ValidationError):
        identify_shift(load_object(DATA / "zp0.json", CFG), CFG)


def test_identify_shift_without_twist():
    #: with w = 0 only L_0 can occur, and the shift is known modulo N
    cfg = SessionConfig(p=3, twist_weight=0)
    assert identify_shift(unit_monoid(cfg), cfg) == 0
    assert identify_shift(unit_shift(cfg, 1), cfg) == 1
    assert identify_shift(periodic_twist(unit_monoid(cfg), 1), cfg) is None

    cert = certify_inverse_pair(unit_shift(cfg, 1), unit_shift(cfg, -1), cfg)
    assert cert.verdict == CERTIFIED
    assert cert.shift == 0
