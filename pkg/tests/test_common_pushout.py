import itertools

import pytest

from pyadams.common_adams import cyclic_adams, line
from pyadams.common_cofibration import check_cofibration
from pyadams.common_complex import concentrated
from pyadams.common_config import SessionConfig
from pyadams.common_errors import ValidationError
from pyadams.common_family import detection_family
from pyadams.common_homotopy import is_quasi_iso
from pyadams.common_periodic import (
    periodic_generating_acyclic_cofibration,
    periodic_generating_cofibration,
    periodic_zero,
    periodic_zero_map,
    periodify,
)
from pyadams.common_pushout import (
    corner_kernel,
    pushout_product,
    pushout_product_report,
    pushout_square_p,
)
from pyadams.common_witness import multiplication_by_p, quotient_map

CFG = SessionConfig(p=3)
P, N, W = CFG.config


def _zero_into_zp():
    X = periodify(concentrated(cyclic_adams(P, 1), 0), N, W)
    return periodic_zero_map(periodic_zero(*CFG.config), X)


def test_corner_of_multiplication_by_p():
    problem = pushout_product(multiplication_by_p(CFG), _zero_into_zp())
    assert pushout_square_p(problem)
    assert problem.corner_map.zero_p()
    kernel = corner_kernel(problem)
    assert str(kernel[0]) == "(Z/3, psi=1)"
    assert all(K.zero_p() for K in kernel[1:])

    report = pushout_product_report(problem)
    assert not report.mono_p
    assert not report.quasi_iso_p
    assert report.failing_degrees == [0]


def test_pushout_product_needs_periodic_maps():
    with pytest.raises(ValidationError):
        pushout_product(quotient_map(P), _zero_into_zp())


def test_generating_pushout_product():
    i = periodic_generating_cofibration(line(P, 0), 1, N, W)
    problem = pushout_product(i, i)
    assert pushout_square_p(problem)

    family = detection_family(P, window=(-2, 2), kind="lines")
    report = pushout_product_report(problem, family)
    assert report.mono_p
    assert report.cofibration_p
    assert report.family == family.descriptor


@pytest.mark.parametrize("j", range(-2, 3))
def test_acyclic_pushout_products_are_quasi_isos(j):
    for n, m in itertools.product(range(-2, 3), repeat=2):
        k = periodic_generating_acyclic_cofibration(line(P, j), n, N, W)
        f = periodic_generating_cofibration(line(P, 0), m, N, W)
        problem = pushout_product(k, f)
        assert is_quasi_iso(problem.corner_map), (j, n, m)


def test_cofibration_pushout_products_are_cofibrations():
    family = detection_family(P, window=(-2, 2), kind="lines")
    for j, n, m in itertools.product((-1, 0, 1), (0, 1), (0, 1)):
        f = periodic_generating_cofibration(line(P, j), n, N, W)
        g = periodic_generating_cofibration(line(P, 0), m, N, W)
        report = check_cofibration(pushout_product(f, g).corner_map, family)
        assert report.verdict, (j, n, m, report.reason)
