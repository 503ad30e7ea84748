import numpy
import pytest

from pyadams.common_adams import cyclic_adams, line
from pyadams.common_complex import chain_identity, chain_map, complex_sum, disk_complex
from pyadams.common_errors import NotDualisableError
from pyadams.common_family import detection_family
from pyadams.common_homotopy import (
    hom_complex,
    is_injective_cofibration,
    is_injective_weak_equivalence,
    is_quasi_iso,
    is_relative_equivalence,
    is_relative_fibration,
    quasi_iso_report,
    window_stability,
)
from pyadams.common_module import FgModule, free_module
from pyadams.common_random import random_bounded_complex, random_chain_map
from pyadams.common_resolution import resolve
from pyadams.common_witness import cyclic_resolution, quotient_map

P = 3


def test_hom_complex():
    X = cyclic_resolution(P)
    H = hom_complex(line(P, 0), X)
    assert H.level(0) == free_module(P)
    assert H.homology()[0] == FgModule(P, 0, (1,))
    assert H.homology()[1].zero_p()

    #: no maps between lines of different weights
    H = hom_complex(line(P, 1), X)
    assert all(M.zero_p() for M in H.homology().values())

    with pytest.raises(NotDualisableError):
        hom_complex(cyclic_adams(P, 1), X)


def test_quotient_is_quasi_iso():
    q = quotient_map(P)
    assert is_quasi_iso(q)
    assert is_injective_weak_equivalence(q)
    assert not is_injective_cofibration(q)
    report = quasi_iso_report(q)
    assert report.verdict
    assert report.failing_degrees == []


@pytest.mark.parametrize("j", [j for j in range(-5, 6) if j != 0])
def test_quotient_is_not_relative(j):
    q = quotient_map(P)
    family = detection_family(P, window=(j, j), kind="lines")
    report = is_relative_equivalence(q, family)
    assert not report.verdict
    assert report.family == family.descriptor
    assert report.members[0].failing_degrees == [0]


def test_quotient_is_relative_for_the_unit():
    #: Hom(L_0, q) is [Z --p--> Z] → Z/p
    family = detection_family(P, window=(0, 0), kind="lines")
    assert is_relative_equivalence(quotient_map(P), family).verdict
    assert is_relative_fibration(quotient_map(P), family).verdict

    family = detection_family(P, window=(0, 1), kind="lines")
    assert not is_relative_fibration(quotient_map(P), family).verdict


def test_window_stability():
    family = detection_family(P, window=(0, 0), kind="lines")
    report = window_stability(quotient_map(P), family)
    assert report.verdict
    assert not report.widened_verdict
    assert not report.stable_p
    assert report.widened_family.startswith("lines[-1..1]")


def test_quasi_iso_failure_degrees():
    X = cyclic_resolution(P)
    D = disk_complex(line(P, 0), 3)
    S = complex_sum([X, D])
    assert is_quasi_iso(S.inj[0])
    assert is_injective_cofibration(S.inj[0])

    #: p·id on [L_0 --p--> L_0] is zero on H_0 = Z/p
    g = chain_map(X, X, {n: h.scale(P) for n, h in chain_identity(X).components})
    report = quasi_iso_report(g)
    assert not report.verdict
    assert report.failing_degrees == [0]


def test_relative_equivalence_is_a_quasi_iso():
    family = detection_family(P, window=(-2, 2), kind="lines")
    rng = numpy.random.default_rng(11)
    checked = 0

    maps = [random_chain_map(rng, P) for _ in range(200)]
    for _ in range(10):
        X = random_bounded_complex(rng, P, max_cells=2)
        maps.append(resolve(X, "quasi", family, depth=3).augmentation)

    for f in maps:
        if is_relative_equivalence(f, family).verdict:
            assert is_quasi_iso(f)
            checked += 1
    assert checked > 0
