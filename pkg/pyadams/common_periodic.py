"""
Quasi-periodic chain complexes: one window of N levels plus a wrap map.

The unrolled complex has X_{n+kN} = T^{-kw} X_n and
d_{n+kN} = (−1)^{kN} T^{-kw} D_n, where D_n (1 ≤ n < N) are the window
differentials and D_0 is the wrap X_0 → T^w X_{N-1}. The structure
isomorphism α is the identity in this representation, so X[N] = T^w X on the
nose.
"""
import threading
from dataclasses import dataclass, field
from typing import Optional, Tuple

from pyadams.common_adams import (
    AdamsMap,
    AdamsModule,
    adams_cokernel,
    adams_homology_data,
    adams_identity,
    adams_sum,
    adams_zero,
    block_map,
    homology_map,
    twist,
    twist_map,
    zero_adams,
)
from pyadams.common_complex import (
    BoundedComplex,
    chain_condition_check,
    generating_acyclic_cofibration,
    generating_cofibration,
    shift_complex,
    sign_of,
    twist_complex,
)
from pyadams.common_dict import simple_obj
from pyadams.common_errors import (
    ConfigurationMismatchError,
    NotAComplexError,
    ValidationError,
)
from pyadams.common_scalar import prime_check


##
@dataclass(frozen=True)
class PeriodicComplex:
    p: int
    period: int
    twist_weight: int
    levels: Tuple[AdamsModule, ...]
    diffs: Tuple[AdamsMap, ...]
    wrap: AdamsMap
    source: Optional[BoundedComplex] = field(default=None, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)
    _cache_lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False)

    @property
    def config(self):
        return (self.p, self.period, self.twist_weight)

    def window_diff(self, n):
        """D_n for 0 ≤ n < N (D_0 is the wrap)."""
        if n == 0:
            return self.wrap
        return self.diffs[n - 1]

    def _cached(self, key, compute):
        #: shared by the worker threads of derived_tensor and group_law_table
        with self._cache_lock:
            res = self._cache.get(key)
        if res is None:
            res = compute()
            with self._cache_lock:
                res = self._cache.setdefault(key, res)
        return res

    def level(self, m):
        def compute():
            k, n = divmod(m, self.period)
            return twist(self.levels[n], -k * self.twist_weight)

        return self._cached(("level", m), compute)

    def diff(self, m):
        """d_m: X_m → X_{m-1} of the unrolled complex."""

        def compute():
            k, n = divmod(m, self.period)
            res = twist_map(self.window_diff(n), -k * self.twist_weight)
            if (k * self.period) % 2:
                res = -res
            return res

        return self._cached(("diff", m), compute)

    def zero_p(self):
        return all(M.zero_p() for M in self.levels)


def periodic_complex(p, period, twist_weight, levels, diffs, wrap, source=None):
    """
    Builds and checks a PeriodicComplex. `diffs` lists D_1..D_{N-1}; maps may
    be AdamsMaps or entries matrices.

    Raises NotAComplexError (with the degree) when d∘d ≠ 0 anywhere in the
    unrolled complex.
    """
    prime_check(p)
    if period < 1:
        raise ValidationError(f"period must be at least 1, got {period}")

    levels = tuple(levels)
    diffs = list(diffs)
    if len(levels) != period:
        raise ValidationError(f"expected {period} window levels, got {len(levels)}")
    if len(diffs) != period - 1:
        raise ValidationError(f"expected {period - 1} window differentials, got {len(diffs)}")

    def as_map(d, source, target, name):
        if isinstance(d, AdamsMap):
            if d.source != source or d.target != target:
                raise ValidationError(f"{name} has the wrong source or target")
            return d
        return AdamsMap(source, target, d)

    diffs = tuple(
        as_map(d, levels[n], levels[n - 1], f"d_{n}")
        for n, d in enumerate(diffs, start=1)
    )
    wrap = as_map(wrap, levels[0], twist(levels[-1], twist_weight), "the wrap")

    X = PeriodicComplex(
        p=p,
        period=period,
        twist_weight=twist_weight,
        levels=levels,
        diffs=diffs,
        wrap=wrap,
        source=source,
    )
    periodic_check(X)
    return X


def periodic_check(X):
    """d_{m-1} ∘ d_m = 0 for m = 1..N covers every residue class."""
    for m in range(1, X.period + 1):
        if not (X.diff(m - 1) @ X.diff(m)).zero_p():
            raise NotAComplexError(f"d_{m - 1} ∘ d_{m} != 0", degree=m)


def periodic_zero(p, period, twist_weight):
    Z = zero_adams(p)
    return periodic_complex(
        p,
        period,
        twist_weight,
        [Z] * period,
        [adams_zero(Z, Z)] * (period - 1),
        adams_zero(Z, Z),
    )


def config_check(*objects):
    configs = {x.config for x in objects}
    if len(configs) > 1:
        raise ConfigurationMismatchError(
            f"configuration mismatch (p, N, w): {sorted(configs)}"
        )


def unrolled_window(X, lo, hi):
    """The brutal truncation of the unrolled X to degrees lo..hi."""
    levels = {m: X.level(m) for m in range(lo, hi + 1)}
    levels = {m: M for m, M in levels.items() if not M.zero_p()}
    diffs = {
        m: X.diff(m)
        for m in range(lo + 1, hi + 1)
        if not X.diff(m).zero_p()
    }
    return BoundedComplex(
        p=X.p,
        levels=tuple(sorted(levels.items(), key=lambda t: t[0])),
        diffs=tuple(sorted(diffs.items(), key=lambda t: t[0])),
    )


##
@dataclass(frozen=True)
class PeriodicMap:
    source: PeriodicComplex
    target: PeriodicComplex
    components: Tuple[AdamsMap, ...]

    @property
    def p(self):
        return self.source.p

    @property
    def period(self):
        return self.source.period

    def component(self, m):
        k, n = divmod(m, self.period)
        return twist_map(self.components[n], -k * self.source.twist_weight)

    def __matmul__(self, other):
        if other.target != self.source:
            raise ValidationError("cannot compose periodic maps: middle complexes differ")
        return PeriodicMap(
            other.source,
            self.target,
            tuple(f @ g for f, g in zip(self.components, other.components)),
        )

    def __add__(self, other):
        return PeriodicMap(
            self.source,
            self.target,
            tuple(f + g for f, g in zip(self.components, other.components)),
        )

    def scale(self, c):
        return PeriodicMap(self.source, self.target, tuple(f.scale(c) for f in self.components))

    def zero_p(self):
        return all(f.zero_p() for f in self.components)


def periodic_map(source, target, components, check=True):
    """
    Builds a PeriodicMap from its window components (AdamsMaps or entries).
    With `check`, invalid maps raise ValidationError naming the degree.
    """
    config_check(source, target)
    components = list(components)
    if len(components) != source.period:
        raise ValidationError(
            f"expected {source.period} window components, got {len(components)}"
        )

    maps = []
    for n, f in enumerate(components):
        if isinstance(f, AdamsMap):
            if f.source != source.levels[n] or f.target != target.levels[n]:
                raise ValidationError(f"component {n} has the wrong source or target")
        else:
            f = AdamsMap(source.levels[n], target.levels[n], f)
        maps.append(f)

    res = PeriodicMap(source, target, tuple(maps))
    if check:
        report = validate_periodic_map(res)
        if not report.valid_p:
            first = report.failures[0]
            raise ValidationError(
                f"not a periodic chain map at degree {first.degree}: {first.reason}"
            )
    return res


def validate_periodic_map(f):
    """
    Checks the chain condition inside the window and the wrap square
    wrap_Y ∘ f_0 = T^w f_{N-1} ∘ wrap_X. Report-style: never raises on a
    failing square.
    """
    X, Y = f.source, f.target
    N, w = X.period, X.twist_weight
    failures = []

    for n in range(1, N):
        if Y.window_diff(n) @ f.components[n] != f.components[n - 1] @ X.window_diff(n):
            failures.append(simple_obj(degree=n, reason="d∘f != f∘d"))

    if Y.wrap @ f.components[0] != twist_map(f.components[-1], w) @ X.wrap:
        failures.append(simple_obj(degree=0, reason="the wrap square does not commute"))

    return simple_obj(
        valid_p=not failures,
        failures=tuple(failures),
        config=simple_obj(p=X.p, period=N, twist_weight=w),
    )


def periodic_identity(X):
    return PeriodicMap(X, X, tuple(adams_identity(M) for M in X.levels))


def periodic_zero_map(X, Y):
    config_check(X, Y)
    return PeriodicMap(
        X,
        Y,
        tuple(adams_zero(M, N) for M, N in zip(X.levels, Y.levels)),
    )


##
def periodic_shift(X, m):
    """X[m]_j = X_{j-m} with differential (−1)^m d."""
    if m == 0:
        return X
    N = X.period
    sign = sign_of(m)

    levels = [X.level(j - m) for j in range(N)]
    diffs = [X.diff(j - m).scale(sign) for j in range(1, N)]
    last = X.level(N - 1 - m)
    wrap = AdamsMap(
        levels[0],
        twist(last, X.twist_weight),
        X.diff(-m).entries * sign,
    )
    return _keep_source(
        periodic_complex(X.p, N, X.twist_weight, levels, diffs, wrap),
        X.source,
        lambda M: shift_complex(M, m),
    )


def periodic_twist(X, k):
    if k == 0:
        return X
    return _keep_source(
        periodic_complex(
            X.p,
            X.period,
            X.twist_weight,
            [twist(M, k) for M in X.levels],
            [twist_map(d, k) for d in X.diffs],
            twist_map(X.wrap, k),
        ),
        X.source,
        lambda M: twist_complex(M, k),
    )


def _keep_source(res, source, fn):
    """
    Returns ℙ(fn(source)) when it equals `res`, so that shifts and twists of
    a periodification still remember a bounded source.
    """
    if source is None:
        return res
    candidate = periodify(fn(source), res.period, res.twist_weight)
    return candidate if candidate == res else res


def periodic_map_shift(f, m):
    N = f.period
    source, target = periodic_shift(f.source, m), periodic_shift(f.target, m)
    return periodic_map(
        source,
        target,
        [f.component(j - m) for j in range(N)],
        check=False,
    )


##
def periodify_level(M, n, period, twist_weight):
    """
    (ℙM)_n = ⊕_k T^{kw} M_{n+kN} over the nonzero summands, ascending k.
    """
    ks = sorted({(m - n) // period for m in M.support if (m - n) % period == 0})
    summands = [twist(M.level(n + k * period), k * twist_weight) for k in ks]
    return ks, adams_sum(summands, p=M.p)


def periodify(M, period, twist_weight):
    """ℙM for a bounded complex M; the result remembers M as its `source`."""
    if not isinstance(M, BoundedComplex):
        raise ValidationError("periodify needs a bounded complex")

    N, w = period, twist_weight
    data = [periodify_level(M, n, N, w) for n in range(N)]

    def window_map(n):
        """D_n on the summand of index k: (−1)^{kN} T^{kw} d_{n+kN}."""
        src_ks, src = data[n]
        tgt_n = (n - 1) % N
        shift = 1 if n == 0 else 0
        tgt_ks, tgt = data[tgt_n]
        if shift:
            tgt = adams_sum(
                [twist(S, w) for S in _summands(tgt)],
                p=M.p,
            )
        index = {k: i for i, k in enumerate(tgt_ks)}

        blocks = {}
        for s, k in enumerate(src_ks):
            target_k = k - shift
            if target_k not in index:
                continue
            d = twist_map(M.diff(n + k * N), k * w)
            if (k * N) % 2:
                d = -d
            blocks[(index[target_k], s)] = d.entries
        return block_map(src, tgt, blocks)

    levels = [S.module for _, S in data]
    diffs = [window_map(n) for n in range(1, N)]
    wrap = window_map(0)
    return periodic_complex(M.p, N, w, levels, diffs, wrap, source=M)


def _summands(sum_data):
    return [inj.source for inj in sum_data.inj]


def coperiodify(M, period, twist_weight):
    """
    ℝM = ∏_k T^{kw} M[−kN]. For bounded M each degreewise product is a finite
    sum, so the window agrees with ℙM.
    """
    if not isinstance(M, BoundedComplex):
        raise ValidationError("coperiodify needs a bounded complex; unbounded input has infinite products")
    return periodify(M, period, twist_weight)


def periodify_map(f, period, twist_weight):
    """ℙf: block diagonal T^{kw} f_{n+kN} on matching summands."""
    N, w = period, twist_weight
    source = periodify(f.source, N, w)
    target = periodify(f.target, N, w)

    components = []
    for n in range(N):
        src_ks, src = periodify_level(f.source, n, N, w)
        tgt_ks, tgt = periodify_level(f.target, n, N, w)
        index = {k: i for i, k in enumerate(tgt_ks)}
        blocks = {
            (index[k], s): twist_map(f.component(n + k * N), k * w).entries
            for s, k in enumerate(src_ks)
            if k in index
        }
        components.append(block_map(src, tgt, blocks))

    return periodic_map(source, target, components, check=False)


def periodic_generating_cofibration(P, n, period, twist_weight):
    """ℙ(S^{n-1} P → D^n P), a member of ℙI."""
    return periodify_map(generating_cofibration(P, n), period, twist_weight)


def periodic_generating_acyclic_cofibration(P, n, period, twist_weight):
    """ℙ(0 → D^n P), a member of ℙJ."""
    return periodify_map(generating_acyclic_cofibration(P, n), period, twist_weight)


def generating_sets(family, degrees, period, twist_weight):
    """
    ℙI and ℙJ restricted to the members of `family` and the given degrees,
    as lists of (name, PeriodicMap).
    """
    I, J = [], []
    for name, P in family.members:
        for n in degrees:
            I.append((f"S^{n - 1} {name} -> D^{n} {name}", periodic_generating_cofibration(P, n, period, twist_weight)))
            J.append((f"0 -> D^{n} {name}", periodic_generating_acyclic_cofibration(P, n, period, twist_weight)))
    return simple_obj(I=I, J=J)


##
@dataclass(frozen=True)
class UnrolledChainMap:
    """A chain map from a bounded complex into the unrolled periodic complex."""

    source: BoundedComplex
    target: PeriodicComplex
    components: Tuple[Tuple[int, AdamsMap], ...] = ()

    def component(self, n):
        for m, g in self.components:
            if m == n:
                return g
        return adams_zero(self.source.level(n), self.target.level(n))


def unrolled_chain_map(source, target, components, check=True):
    stored = []
    for n in sorted(components):
        g = components[n]
        if not isinstance(g, AdamsMap):
            g = AdamsMap(source.level(n), target.level(n), g)
        elif g.source != source.level(n) or g.target != target.level(n):
            raise ValidationError(f"component {n} has the wrong source or target")
        if not g.zero_p():
            stored.append((n, g))

    res = UnrolledChainMap(source, target, tuple(stored))
    if check:
        chain_condition_check(res)
    return res


def adjunction_transpose(direction, f, *, period=None, twist_weight=None, target=None):
    """
    The bijection Hom(ℙM, X) ≅ Hom(M, UX).

    "flatten": a PeriodicMap ℙM → X (ℙM must remember M) to the chain map
    M → UX of its k = 0 summand blocks.
    "extend": an UnrolledChainMap g: M → UX to the PeriodicMap whose window
    component n is the block row of T^{kw} g_{n+kN}.
    """
    if direction == "flatten":
        return flatten(f)
    if direction == "extend":
        return extend(f)
    raise ValidationError(f"unknown transpose direction: {direction!r}")


def flatten(F):
    M = F.source.source
    if M is None:
        raise ValidationError("flatten needs a map out of a periodification")

    X = F.target
    N, w = X.period, X.twist_weight
    components = {}
    for m in M.support:
        k, n = divmod(m, N)
        ks, S = periodify_level(M, n, N, w)
        block = F.components[n] @ S.inj[ks.index(k)]
        components[m] = AdamsMap(M.level(m), X.level(m), block.entries)

    return unrolled_chain_map(M, X, components, check=False)


def extend(g):
    M, X = g.source, g.target
    N, w = X.period, X.twist_weight
    source = periodify(M, N, w)

    components = []
    for n in range(N):
        ks, S = periodify_level(M, n, N, w)
        tgt = adams_sum([X.levels[n]], p=X.p)
        blocks = {
            (0, s): g.component(n + k * N).entries
            for s, k in enumerate(ks)
        }
        row = block_map(S, tgt, blocks)
        components.append(AdamsMap(source.levels[n], X.levels[n], row.entries))

    return periodic_map(source, X, components, check=False)


##
def periodic_homology_data(X, n):
    return adams_homology_data(X.diff(n + 1), X.diff(n), degree=n)


def periodic_homology(X):
    """[H_0, ..., H_{N-1}] of the unrolled complex."""
    return [periodic_homology_data(X, n).module for n in range(X.period)]


def periodic_homology_maps(f):
    return [
        homology_map(
            periodic_homology_data(f.source, n),
            periodic_homology_data(f.target, n),
            f.components[n],
        )
        for n in range(f.period)
    ]


##
def periodic_sum(complexes):
    """⊕ of periodic complexes, with injections and projections."""
    complexes = list(complexes)
    config_check(*complexes)
    X0 = complexes[0]
    p, N, w = X0.config

    sums = [adams_sum([X.levels[n] for X in complexes], p=p) for n in range(N)]
    wrap_target = adams_sum([twist(X.levels[-1], w) for X in complexes], p=p)

    diffs = [
        block_map(sums[n], sums[n - 1], {(i, i): X.diffs[n - 1] for i, X in enumerate(complexes)})
        for n in range(1, N)
    ]
    wrap = block_map(sums[0], wrap_target, {(i, i): X.wrap for i, X in enumerate(complexes)})
    S = periodic_complex(p, N, w, [s.module for s in sums], diffs, wrap)

    inj = [
        PeriodicMap(X, S, tuple(sums[n].inj[i] for n in range(N)))
        for i, X in enumerate(complexes)
    ]
    proj = [
        PeriodicMap(S, X, tuple(sums[n].proj[i] for n in range(N)))
        for i, X in enumerate(complexes)
    ]
    return simple_obj(complex=S, inj=inj, proj=proj)


def complex_cokernel(f):
    """Degreewise cokernel of a PeriodicMap with the induced Ψ, d and wrap."""
    Y = f.target
    p, N, w = Y.config
    cokers = [adams_cokernel(g) for g in f.components]
    levels = [c.module for c in cokers]

    diffs = [
        AdamsMap(
            levels[n],
            levels[n - 1],
            cokers[n - 1].proj.entries * Y.diffs[n - 1].entries * cokers[n].lift,
        )
        for n in range(1, N)
    ]
    wrap = AdamsMap(
        levels[0],
        twist(levels[-1], w),
        cokers[-1].proj.entries * Y.wrap.entries * cokers[0].lift,
    )
    C = periodic_complex(p, N, w, levels, diffs, wrap)
    proj = PeriodicMap(Y, C, tuple(AdamsMap(Y.levels[n], levels[n], cokers[n].proj.entries) for n in range(N)))
    return simple_obj(complex=C, proj=proj, lifts=[c.lift for c in cokers])


def cokernel_induced_map(source_coker, target_coker, g):
    """The map on cokernels induced by g between the targets."""
    C1, C2 = source_coker.complex, target_coker.complex
    components = [
        AdamsMap(
            C1.levels[n],
            C2.levels[n],
            target_coker.proj.components[n].entries * g.components[n].entries * source_coker.lifts[n],
        )
        for n in range(C1.period)
    ]
    return PeriodicMap(C1, C2, tuple(components))


##
def periodic_summary(X):
    return simple_obj(
        p=X.p,
        period=X.period,
        twist_weight=X.twist_weight,
        levels=[str(M) for M in X.levels],
    )


##
