"""
The monoid ℙ𝓘, ℙ𝓘-modules, and the tensor product over ℙ𝓘.

In the unrolled ℙ𝓘 the line L_{-kw} sits in degree kN and every differential
vanishes.
"""
from dataclasses import dataclass
from typing import Dict

from pyadams.common_adams import (
    AdamsMap,
    adams_identity,
    adams_sum,
    block_map,
    smash,
    smash_maps,
    twist,
    twist_map,
    unit,
)
from pyadams.common_complex import concentrated, sign_of
from pyadams.common_config import SessionConfig
from pyadams.common_errors import ValidationError
from pyadams.common_periodic import (
    config_check,
    periodic_complex,
    periodic_map,
    periodic_shift,
    periodify,
    unrolled_chain_map,
)


##
def unit_monoid(cfg):
    """ℙ𝓘 = ℙ(𝓘 concentrated in degree 0)."""
    return periodify(concentrated(unit(cfg.p), 0), cfg.period, cfg.twist_weight)


def unit_inclusion(cfg):
    """𝓘 → Uℙ𝓘, the identity onto the k = 0 summand."""
    P = unit_monoid(cfg)
    I = P.source
    return unrolled_chain_map(I, P, {0: adams_identity(unit(cfg.p))})


def unit_shift(cfg, i):
    """ℙ𝓘[i]."""
    return periodic_shift(unit_monoid(cfg), i)


def monoid_multiplication(cfg):
    """ℙ𝓘 ⊗_{ℙ𝓘} ℙ𝓘 → ℙ𝓘, L_{-kw} ∧ L_0 → L_{-kw} on each level."""
    P = unit_monoid(cfg)
    T = tensor_over_unit(P, P)
    return periodic_map(
        T,
        P,
        [AdamsMap(T.levels[n], P.levels[n], adams_identity(P.levels[n]).entries) for n in range(P.period)],
    )


##
def tensor_level(X, Y, m):
    """
    The pieces X_a ∧ Y_{m-a} (0 ≤ a < N, both sides nonzero) of degree m of
    X ⊗_{ℙ𝓘} Y, with their sum.
    """
    pieces = [
        a
        for a in range(X.period)
        if not X.levels[a].zero_p() and not Y.level(m - a).zero_p()
    ]
    summands = [smash(X.levels[a], Y.level(m - a)) for a in pieces]
    return pieces, adams_sum(summands, p=X.p)


def tensor_over_unit(X, Y):
    """
    X ⊗_{ℙ𝓘} Y with window level n = ⊕_{0≤a<N} X_a ∧ Y_{n-a}.

    On the piece a the differential is dx ⊗ 1 + (−1)^a 1 ⊗ dy. For a = 0 the
    term dx ⊗ 1 goes through the wrap of X into the piece N−1, using
    T^w X_{N-1} ∧ Y_b = X_{N-1} ∧ T^w Y_b. On the wrap of the product the
    target piece a' carries the sign (−1)^{N a'}.
    """
    config_check(X, Y)
    p, N, w = X.config

    data = {m: tensor_level(X, Y, m) for m in range(-1, N)}

    def window_map(n):
        src_pieces, src = data[n]
        tgt_pieces, tgt = data[n - 1]
        index = {a: i for i, a in enumerate(tgt_pieces)}

        blocks = {}

        def add(t, s, entries):
            prev = blocks.get((t, s))
            blocks[(t, s)] = entries if prev is None else prev + entries

        for s, a in enumerate(src_pieces):
            b = n - a
            if a in index:
                term = smash_maps(adams_identity(X.levels[a]), Y.diff(b)).entries
                add(index[a], s, term * sign_of(a))

            if a >= 1 and (a - 1) in index:
                term = smash_maps(X.diffs[a - 1], adams_identity(Y.level(b))).entries
                add(index[a - 1], s, term)
            elif a == 0 and (N - 1) in index:
                term = smash_maps(X.wrap, adams_identity(Y.level(b))).entries
                add(index[N - 1], s, term)

        if n == 0:
            for (t, s), entries in list(blocks.items()):
                blocks[(t, s)] = entries * sign_of(N * tgt_pieces[t])

        return block_map(src, tgt, blocks)

    levels = [data[n][1].module for n in range(N)]
    diffs = [window_map(n) for n in range(1, N)]
    wrap = window_map(0)
    return periodic_complex(p, N, w, levels, diffs, wrap)


def tensor_over_unit_maps(f, g):
    """f ⊗_{ℙ𝓘} g, blockwise f_a ∧ g_{n-a}."""
    X, Y = f.source, g.source
    X2, Y2 = f.target, g.target
    source = tensor_over_unit(X, Y)
    target = tensor_over_unit(X2, Y2)

    components = []
    for n in range(source.period):
        src_pieces, src = tensor_level(X, Y, n)
        tgt_pieces, tgt = tensor_level(X2, Y2, n)
        index = {a: i for i, a in enumerate(tgt_pieces)}
        blocks = {
            (index[a], s): smash_maps(f.components[a], g.component(n - a))
            for s, a in enumerate(src_pieces)
            if a in index
        }
        components.append(block_map(src, tgt, blocks))

    return periodic_map(source, target, components, check=False)


##
@dataclass(frozen=True)
class PIModule:
    """
    A complex Z in C(𝓑) on the degrees −N ≤ m < 2N with the action isomorphisms
    φ(1)_n: T^{-w} Z_n → Z_{n+N} and φ(−1)_n: T^w Z_n → Z_{n-N}.
    """

    p: int
    period: int
    twist_weight: int
    levels: Dict[int, object]
    diffs: Dict[int, AdamsMap]
    phi: Dict[int, Dict[int, AdamsMap]]

    @property
    def degrees(self):
        return range(-self.period, 2 * self.period)

    def level(self, m):
        return self.levels[m]

    def diff(self, m):
        return self.diffs[m]


def pi_module(p, period, twist_weight, levels, diffs, phi):
    """Builds a PIModule, checking that its action is associative and a chain map."""
    mod = PIModule(p, period, twist_weight, dict(levels), dict(diffs), {k: dict(v) for k, v in phi.items()})
    pi_module_check(mod)
    return mod


def pi_action(mod):
    """
    The components of the action a: ℙ𝓘 ⊗ Z → Z. On L_{-kw} ∧ Z_n = T^{-kw} Z_n
    (k in {−1, 0, 1}) it is φ(k)_n: T^{-kw} Z_n → Z_{n+kN}, with φ(0) the
    identity. Keyed by (k, n).
    """
    act = {(0, n): adams_identity(mod.levels[n]) for n in mod.degrees}
    for k in (1, -1):
        act.update(((k, n), f) for n, f in mod.phi[k].items())
    return act


def pi_module_check(mod):
    """
    The action of `pi_action` must be
    associative, a ∘ (μ ⊗ 1) = a ∘ (1 ⊗ a) on L_{-kw} ∧ L_{-lw} ∧ Z_n whenever
    k, l and k + l lie in {−1, 0, 1} (for k + l = 0 this is unitality), and a
    chain map, d φ(k)_n = (−1)^{kN} φ(k)_{n-1} T^{-kw} d_n.
    """
    N, w = mod.period, mod.twist_weight
    act = pi_action(mod)
    cfg = SessionConfig(p=mod.p, period=N, twist_weight=w)
    #: μ: L_{-kw} ∧ L_{-lw} → L_{-(k+l)w}, the same scalar in every degree
    mu = monoid_multiplication(cfg).components[0].entries[0, 0]

    pairs = [(k, l) for k in (-1, 0, 1) for l in (-1, 0, 1) if abs(k + l) <= 1]
    for k, l in pairs:
        for n in mod.degrees:
            keys = [(k + l, n), (l, n), (k, n + l * N)]
            if not all(key in act for key in keys):
                continue
            lhs = act[(k + l, n)].scale(mu)
            rhs = act[(k, n + l * N)] @ twist_map(act[(l, n)], -k * w)
            if lhs != rhs:
                raise ValidationError(
                    f"the action is not associative: (k, l) = ({k}, {l}) fails at degree {n}"
                )

    for (k, n), f in act.items():
        if k == 0 or (k, n - 1) not in act or n not in mod.diffs or (n + k * N) not in mod.diffs:
            continue
        lhs = mod.diffs[n + k * N] @ f
        rhs = (act[(k, n - 1)] @ twist_map(mod.diffs[n], -k * w)).scale(sign_of(k * N))
        if lhs != rhs:
            raise ValidationError(
                f"the action is not a chain map: phi({k}) fails at degree {n}"
            )


def to_module(X):
    """Equips the unrolled X with the action of ℙ𝓘 (φ(±1) are identities)."""
    N, w = X.period, X.twist_weight
    degrees = range(-N, 2 * N)
    levels = {m: X.level(m) for m in degrees}
    diffs = {m: X.diff(m) for m in degrees if m > -N}

    phi_up = {
        n: AdamsMap(twist(X.level(n), -w), X.level(n + N), adams_identity(X.level(n + N)).entries)
        for n in range(-N, N)
    }
    phi_down = {
        n: AdamsMap(twist(X.level(n), w), X.level(n - N), adams_identity(X.level(n - N)).entries)
        for n in range(0, 2 * N)
    }
    return pi_module(X.p, N, w, levels, diffs, {1: phi_up, -1: phi_down})


def periodic_action(X):
    """a: ℙ𝓘 ⊗_{ℙ𝓘} X → X. The product is X level by level, so a is the identity."""
    cfg = SessionConfig(p=X.p, period=X.period, twist_weight=X.twist_weight)
    T = tensor_over_unit(unit_monoid(cfg), X)
    return periodic_map(
        T,
        X,
        [AdamsMap(T.levels[n], X.levels[n], adams_identity(X.levels[n]).entries) for n in range(X.period)],
    )


def from_module(mod):
    """
    The PeriodicComplex on the window 0..N−1 of `mod`, with wrap
    T^w φ(1)_{−1} ∘ d_0.
    """
    N, w = mod.period, mod.twist_weight
    levels = [mod.levels[n] for n in range(N)]
    diffs = [mod.diffs[n] for n in range(1, N)]
    wrap = twist_map(mod.phi[1][-1], w) @ mod.diffs[0]
    return periodic_complex(mod.p, N, w, levels, diffs, wrap)


def module_equivalence(direction, X):
    if direction == "to_module":
        return to_module(X)
    if direction == "from_module":
        return from_module(X)
    raise ValidationError(f"unknown direction: {direction!r}")


##
