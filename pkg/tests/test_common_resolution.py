import numpy
import pytest

from pyadams.common_adams import adams_isomorphic_p, cyclic_adams, line
from pyadams.common_complex import concentrated
from pyadams.common_config import SessionConfig
from pyadams.common_errors import ResolutionError, ValidationError
from pyadams.common_family import detection_family
from pyadams.common_homotopy import is_quasi_iso
from pyadams.common_module import FgModule, free_module
from pyadams.common_monoid import unit_monoid
from pyadams.common_periodic import periodic_complex, periodic_homology, periodify
from pyadams.common_random import random_bounded_complex
from pyadams.common_resolution import (
    derived_tensor,
    ext_relative,
    homology_tables_isomorphic_p,
    resolution_independence,
    resolve,
)
from pyadams.common_scalar import valuation

CFG = SessionConfig(p=3)
P, N, W = CFG.config
FAMILY = detection_family(P)
LINES = detection_family(P, kind="lines")


def _zp(p=P):
    return cyclic_adams(p, 1)


def test_resolve_cyclic():
    R = resolve(_zp(), "quasi", FAMILY, depth=4)
    assert not R.truncated_p
    assert R.covered_p
    assert R.flags == []

    Q = R.complex
    assert Q.support == (0, 1)
    assert Q.level(0) == line(P, 0)
    assert Q.level(1) == line(P, 0)
    assert valuation(Q.diff(1).entries[0, 0], P) == 1
    assert is_quasi_iso(R.augmentation)


def test_resolve_truncated():
    R = resolve(_zp(), "quasi", FAMILY, depth=1)
    assert R.truncated_p
    assert R.flags == ["truncated"]
    assert R.complex.support == (0,)


def test_resolve_cofibrant_is_identity():
    L = concentrated(line(P, 1), 2)
    R = resolve(L, "quasi", FAMILY)
    assert R.complex == L
    assert R.augmentation.components[0][0] == 2


def test_resolve_relative_mode():
    R = resolve(_zp(), "relative", LINES, depth=3)
    #: every line maps onto Z/p, and none of these maps factors through another line
    assert R.complex.level(0).n_gens == 3


def test_resolve_errors():
    with pytest.raises(ValidationError):
        resolve(_zp(), "sideways", FAMILY)
    with pytest.raises(ValidationError):
        resolve(_zp(), "quasi", None)
    with pytest.raises(ValidationError):
        resolve(_zp(), "quasi", FAMILY, depth=0)

    X = periodify(concentrated(_zp(), 0), N, W)
    bare = periodic_complex(P, N, W, X.levels, X.diffs, X.wrap)
    with pytest.raises(ResolutionError):
        resolve(bare, "quasi", FAMILY)


def test_resolve_periodification():
    X = periodify(concentrated(_zp(), 0), N, W)
    R = resolve(X, "quasi", FAMILY)
    assert not R.truncated_p
    assert R.complex.levels[0] == line(P, 0)
    assert R.complex.levels[1] == line(P, 0)
    assert is_quasi_iso(R.augmentation)

    U = unit_monoid(CFG)
    assert resolve(U, "quasi", FAMILY).complex == U


def test_tor():
    res = derived_tensor(_zp(), _zp(), FAMILY, depth=4)
    H = dict(res.homology)
    assert H[0].underlying == FgModule(P, 0, (1,))
    assert H[1].underlying == FgModule(P, 0, (1,))
    assert H[2].zero_p()
    assert not res.truncated_p


def test_derived_tensor_with_the_unit():
    X = periodify(concentrated(_zp(), 0), N, W)
    res = derived_tensor(unit_monoid(CFG), X, FAMILY, depth=4)
    H = periodic_homology(X)
    assert [n for n, _ in res.homology] == list(range(N))
    for (_, A), B in zip(res.homology, H):
        assert adams_isomorphic_p(A, B)


def test_derived_tensor_truncation_flag():
    res = derived_tensor(_zp(), _zp(), FAMILY, depth=1)
    assert res.truncated_p
    assert res.flags == ["truncated"]


def test_parallel_derived_tensor():
    cfg = SessionConfig(p=P, parallel=True)
    a = derived_tensor(_zp(), _zp(), FAMILY, 4, cfg)
    b = derived_tensor(_zp(), _zp(), FAMILY, 4)
    assert homology_tables_isomorphic_p(a.homology, b.homology)


def test_resolution_independence():
    res = resolution_independence(_zp(), _zp(), LINES, depth=4)
    assert res.independent_p
    assert dict(res.checks) == {"reordered": True, "widened": True, "deeper": True}
    assert set(res.variant_homology) == {"reordered", "widened", "deeper"}
    assert not res.truncated_p


def test_resolution_independence_random():
    family = detection_family(P, window=(-2, 2), kind="lines")
    rng = numpy.random.default_rng(8)
    for k in range(50):
        X, Y = (
            random_bounded_complex(rng, P, degrees=(-1, 1), max_cells=2, window=(-1, 1), max_exponent=2)
            for _ in range(2)
        )
        res = resolution_independence(X, Y, family, depth=5)
        assert not res.truncated_p, k
        assert res.independent_p, (k, dict(res.checks))


def test_ext():
    res = ext_relative(_zp(), _zp(), FAMILY, s_max=2)
    assert res.ext[0] == FgModule(P, 0, (1,))
    assert res.ext[1] == FgModule(P, 0, (1,))
    assert res.ext[2].zero_p()
    assert not res.truncated_p

    res = ext_relative(line(P, 0), line(P, 0), FAMILY, s_max=1)
    assert res.ext[0] == free_module(P)
    assert res.ext[1].zero_p()

    #: Hom(L_0, L_1) vanishes
    res = ext_relative(line(P, 0), line(P, 1), FAMILY, s_max=0)
    assert res.ext[0].zero_p()


def test_ext_p5():
    fam = detection_family(5)
    res = ext_relative(_zp(5), _zp(5), fam, s_max=1)
    assert res.ext == [FgModule(5, 0, (1,)), FgModule(5, 0, (1,))]
