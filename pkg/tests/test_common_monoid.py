import numpy
import pytest
from sympy import ImmutableMatrix, Rational

from pyadams.common_adams import adams_identity, adams_isomorphic_p, cyclic_adams, line, twist_map
from pyadams.common_complex import bounded_complex, complex_homology, complex_sum, tensor_complexes
from pyadams.common_config import SessionConfig
from pyadams.common_errors import ValidationError
from pyadams.common_module import FgModule
from pyadams.common_monoid import (
    from_module,
    module_equivalence,
    monoid_multiplication,
    periodic_action,
    pi_action,
    pi_module,
    tensor_over_unit,
    tensor_over_unit_maps,
    to_module,
    unit_inclusion,
    unit_monoid,
    unit_shift,
)
from pyadams.common_periodic import (
    periodic_complex,
    periodic_homology,
    periodic_identity,
    periodic_twist,
    periodify,
    validate_periodic_map,
)
from pyadams.common_random import random_bounded_complex

CFG = SessionConfig(p=3)
P, N, W = CFG.config


def test_unit_monoid():
    U = unit_monoid(CFG)
    assert U.level(0) == line(P, 0)
    assert U.level(N) == line(P, -W)
    assert U.level(-N) == line(P, W)
    assert all(U.diff(m).zero_p() for m in range(-N, 2 * N))

    eta = unit_inclusion(CFG)
    assert eta.source.support == (0,)
    assert eta.target == U


def test_unit_shift():
    assert unit_shift(CFG, 0) == unit_monoid(CFG)
    assert unit_shift(CFG, N) == periodic_twist(unit_monoid(CFG), W)
    S = unit_shift(CFG, 1)
    assert S.levels[1] == line(P, 0)
    assert S.levels[0].zero_p()


def test_monoid_multiplication():
    mu = monoid_multiplication(CFG)
    assert validate_periodic_map(mu).valid_p
    assert mu.target == unit_monoid(CFG)
    assert all(f.entries == ImmutableMatrix.eye(f.source.n_gens) for f in mu.components)


def test_tensor_over_unit_of_shifts():
    #: ℙ𝓘[i] ⊗ ℙ𝓘[j] has its homology in degree i + j
    T = tensor_over_unit(unit_shift(CFG, 1), unit_shift(CFG, 2))
    H = periodic_homology(T)
    assert [n for n, M in enumerate(H) if not M.zero_p()] == [3]
    assert adams_isomorphic_p(H[3], line(P, 0))


def _sample():
    L = line(P, 0)
    M = bounded_complex(P, {1: L, 0: L, -2: cyclic_adams(P, 2)}, {1: [[P]]})
    #: rebuilt without a source so that equality is on the window alone
    X = periodify(M, N, W)
    return periodic_complex(P, N, W, X.levels, X.diffs, X.wrap)


def test_module_round_trip():
    X = _sample()
    mod = to_module(X)
    assert list(mod.degrees) == list(range(-N, 2 * N))
    assert from_module(mod) == X
    assert module_equivalence("from_module", module_equivalence("to_module", X)) == X

    with pytest.raises(ValidationError):
        module_equivalence("sideways", X)


def test_pi_module_checks_unitality():
    mod = to_module(_sample())
    phi_up = dict(mod.phi[1])
    phi_up[0] = phi_up[0].scale(2)
    with pytest.raises(ValidationError):
        pi_module(P, N, W, mod.levels, mod.diffs, {1: phi_up, -1: mod.phi[-1]})


def test_pi_action():
    mod = to_module(_sample())
    act = pi_action(mod)
    assert act[(0, 1)] == adams_identity(mod.levels[1])
    assert act[(1, 0)] == mod.phi[1][0]
    assert (-1, -N) not in act

    #: φ(1)_0 ∘ T^{-w} φ(−1)_N is the identity on Z_N
    assert act[(1, 0)] @ twist_map(act[(-1, N)], -W) == adams_identity(mod.levels[N])


def test_pi_module_checks_the_chain_condition():
    mod = to_module(_sample())
    #: unital still, but d_{1+N} φ(1)_1 = 2 φ(1)_0 T d_1 with d_1 = p ≠ 0
    phi_up = dict(mod.phi[1])
    phi_down = dict(mod.phi[-1])
    phi_up[1] = phi_up[1].scale(2)
    phi_down[1 + N] = phi_down[1 + N].scale(Rational(1, 2))
    with pytest.raises(ValidationError, match="chain map"):
        pi_module(P, N, W, mod.levels, mod.diffs, {1: phi_up, -1: phi_down})


@pytest.mark.parametrize("period", [3, 4, 5])
def test_unit_acting_on_itself(period):
    cfg = SessionConfig(p=P, period=period)
    U = unit_monoid(cfg)
    mu = monoid_multiplication(cfg)
    assert periodic_action(U) == mu

    X = periodify(_cells(), period, cfg.twist_weight)
    a = periodic_action(X)
    assert validate_periodic_map(a).valid_p
    #: a ∘ (μ ⊗ 1) = a ∘ (1 ⊗ a)
    lhs = a @ tensor_over_unit_maps(mu, periodic_identity(X))
    rhs = a @ tensor_over_unit_maps(periodic_identity(U), a)
    assert lhs.components == rhs.components


def _cells():
    """[L_0 --p--> L_0] in degrees 3→2, 2→1 and 1→0, summed: d_1, d_2 and d_3 are all nonzero."""
    L = line(P, 0)
    cells = [bounded_complex(P, {n: L, n - 1: L}, {n: [[P]]}) for n in (3, 2, 1)]
    return complex_sum(cells).complex


def test_tensor_signs_in_consecutive_degrees():
    C = _cells()
    assert all(not C.diff(n).zero_p() for n in (1, 2, 3))
    T = tensor_complexes(C, C)
    assert all(not T.diff(n).zero_p() for n in range(1, 7))
    #: H(C) is Z/p in degrees 0, 1, 2; by Künneth H_1 = (H_0 ⊗ H_1)^2 ⊕ Tor(H_0, H_0)
    H = complex_homology(T)
    assert str(H[0]) == "(Z/3, psi=1)"
    assert H[1].underlying == FgModule(P, 0, (1, 1, 1))


@pytest.mark.parametrize("period", [3, 5])
def test_tensor_over_unit_odd_period(period):
    cfg = SessionConfig(p=P, period=period)
    N_, W_ = cfg.period, cfg.twist_weight
    C = _cells()
    L = line(P, 1)
    D = bounded_complex(P, {0: L, -1: L}, {0: [[P]]})

    PC, PD = periodify(C, N_, W_), periodify(D, N_, W_)
    #: D wraps across the window boundary, C fills a whole period with nonzero differentials
    T = tensor_over_unit(PC, PD)
    assert T.period == N_

    expected = periodic_homology(periodify(tensor_complexes(C, D), N_, W_))
    for A, B in zip(periodic_homology(T), expected):
        assert adams_isomorphic_p(A, B)

    S = tensor_over_unit(unit_shift(cfg, 1), unit_shift(cfg, period - 2))
    H = periodic_homology(S)
    assert [n for n, M in enumerate(H) if not M.zero_p()] == [period - 1]


@pytest.mark.parametrize("period", [3, 4, 5])
def test_periodification_is_monoidal(period):
    #: ℙC ⊗_{ℙ𝓘} ℙD ≅ ℙ(C ⊗ D) on homology
    rng = numpy.random.default_rng(period)
    W_ = 2 * P - 2
    for _ in range(10):
        C = random_bounded_complex(rng, P, degrees=(-1, 2), max_cells=2, max_exponent=2)
        D = random_bounded_complex(rng, P, degrees=(-1, 2), max_cells=2, max_exponent=2)
        lhs = periodic_homology(tensor_over_unit(periodify(C, period, W_), periodify(D, period, W_)))
        rhs = periodic_homology(periodify(tensor_complexes(C, D), period, W_))
        for A, B in zip(lhs, rhs):
            assert adams_isomorphic_p(A, B)
