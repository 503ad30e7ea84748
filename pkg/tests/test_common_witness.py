import pytest

from pyadams.common_config import SessionConfig
from pyadams.common_witness import (
    witness_periodify_quasi_iso,
    witness_pushout_product,
    witness_quasi_not_relative,
    witness_suite,
)


@pytest.mark.parametrize("p", [3, 5])
def test_witness_suite(p):
    res = witness_suite(SessionConfig(p=p))
    assert list(res.witnesses.keys()) == ["a", "b", "c"]
    assert all(w.reproduced_p for w in res.witnesses.values())
    assert res.config.startswith(f"p={p} ")


def test_witness_suite_parallel():
    res = witness_suite(SessionConfig(p=3, parallel=True))
    assert [w.name for w in res.witnesses.values()] == [
        "quasi-iso that is not a relative equivalence",
        "injective pushout-product failure",
        "periodification preserves a quasi-iso",
    ]


def test_quasi_not_relative():
    report = witness_quasi_not_relative(SessionConfig(p=3))
    assert report.quasi_iso_p
    assert not report.relative_equivalence_p
    #: every member but L_0 sees H_0 = Z/p on one side only
    assert "L_0" not in report.failing_members
    assert "L_1" in report.failing_members


def test_pushout_product_witness():
    report = witness_pushout_product(SessionConfig(p=3))
    assert report.f_mono_p
    assert report.g_mono_p
    assert report.corner_map_zero_p
    assert not report.corner_mono_p
    assert report.kernel[0] == "(Z/3, psi=1)"


def test_periodify_witness():
    report = witness_periodify_quasi_iso(SessionConfig(p=5))
    assert report.quasi_iso_p
    assert report.reproduced_p
