"""
Bounded chain complexes of Adams modules and chain maps between them.

Differentials lower degree: d_n: X_n → X_{n-1}. Only nonzero levels and
nonzero differentials are stored.
"""
from dataclasses import dataclass
from typing import Tuple

from pyadams.common_adams import (
    AdamsMap,
    AdamsModule,
    adams_homology_data,
    adams_identity,
    adams_sum,
    adams_zero,
    block_map,
    homology_map,
    smash,
    smash_maps,
    twist,
    twist_map,
    zero_adams,
)
from pyadams.common_dict import simple_obj
from pyadams.common_errors import (
    ConfigurationMismatchError,
    NotAComplexError,
    ValidationError,
)


##
@dataclass(frozen=True)
class BoundedComplex:
    p: int
    levels: Tuple[Tuple[int, AdamsModule], ...] = ()
    diffs: Tuple[Tuple[int, AdamsMap], ...] = ()

    def level(self, n):
        for m, M in self.levels:
            if m == n:
                return M
        return zero_adams(self.p)

    def diff(self, n):
        """d_n: X_n → X_{n-1}"""
        for m, d in self.diffs:
            if m == n:
                return d
        return adams_zero(self.level(n), self.level(n - 1))

    @property
    def support(self):
        return tuple(n for n, _ in self.levels)

    @property
    def degree_range(self):
        """(lowest, highest) nonzero degree, or None for the zero complex."""
        if not self.levels:
            return None
        return self.levels[0][0], self.levels[-1][0]

    def zero_p(self):
        return not self.levels


def bounded_complex(p, levels, diffs=None):
    """
    Builds a BoundedComplex from dicts {degree: AdamsModule} and
    {degree: AdamsMap or entries}; missing differentials are zero.

    Raises NotAComplexError (with the degree) when d∘d ≠ 0.
    """
    diffs = dict(diffs or {})
    levels = {n: M for n, M in levels.items() if not M.zero_p()}
    for M in levels.values():
        if M.p != p:
            raise ConfigurationMismatchError(f"module over p={M.p} in a complex over p={p}")

    def level(n):
        return levels.get(n) or zero_adams(p)

    stored = []
    for n in sorted(diffs):
        d = diffs[n]
        if not isinstance(d, AdamsMap):
            d = AdamsMap(level(n), level(n - 1), d)
        elif d.source != level(n) or d.target != level(n - 1):
            raise ValidationError(f"differential d_{n} does not go from level {n} to level {n - 1}")
        if not d.zero_p():
            stored.append((n, d))

    X = BoundedComplex(
        p=p,
        levels=tuple(sorted(levels.items(), key=lambda t: t[0])),
        diffs=tuple(stored),
    )
    complex_check(X)
    return X


def complex_check(X):
    for n, d in X.diffs:
        if not (X.diff(n - 1) @ d).zero_p():
            raise NotAComplexError(f"d_{n - 1} ∘ d_{n} != 0", degree=n)


def zero_complex(p):
    return BoundedComplex(p=p)


def concentrated(M, n=0):
    """M as a complex concentrated in degree n."""
    return bounded_complex(M.p, {n: M})


##
@dataclass(frozen=True)
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    components: Tuple[Tuple[int, AdamsMap], ...] = ()

    def component(self, n):
        for m, f in self.components:
            if m == n:
                return f
        return adams_zero(self.source.level(n), self.target.level(n))

    @property
    def p(self):
        return self.source.p

    def degrees(self):
        """Degrees where either side is nonzero."""
        return sorted(set(self.source.support) | set(self.target.support))

    def __matmul__(self, other):
        if other.target != self.source:
            raise ValidationError("cannot compose chain maps: middle complexes differ")
        degrees = set(other.source.support) & set(self.target.support)
        return chain_map(
            other.source,
            self.target,
            {n: self.component(n) @ other.component(n) for n in degrees},
            check=False,
        )

    def zero_p(self):
        return not self.components


def chain_map(source, target, components, check=True):
    """
    Builds a ChainMap from {degree: AdamsMap or entries}. With `check`, the
    chain condition d∘f = f∘d is verified in every degree.
    """
    stored = []
    for n in sorted(components):
        f = components[n]
        if not isinstance(f, AdamsMap):
            f = AdamsMap(source.level(n), target.level(n), f)
        elif f.source != source.level(n) or f.target != target.level(n):
            raise ValidationError(f"component {n} has the wrong source or target")
        if not f.zero_p():
            stored.append((n, f))

    res = ChainMap(source=source, target=target, components=tuple(stored))
    if check:
        chain_condition_check(res)
    return res


def chain_condition_failures(f):
    """Degrees where d∘f != f∘d. Works for any map out of a bounded complex."""
    bad = []
    X, Y = f.source, f.target
    degrees = set(X.support) | {n + 1 for n in X.support}
    for n in sorted(degrees):
        lhs = Y.diff(n) @ f.component(n)
        rhs = f.component(n - 1) @ X.diff(n)
        if lhs != rhs:
            bad.append(n)
    return bad


def chain_condition_check(f):
    bad = chain_condition_failures(f)
    if bad:
        raise ValidationError(f"not a chain map: d∘f != f∘d at degree {bad[0]}")


def chain_map_report(f):
    """The chain condition as a report; never raises on a failing degree."""
    failures = tuple(simple_obj(degree=n, reason="d∘f != f∘d") for n in chain_condition_failures(f))
    return simple_obj(valid_p=not failures, failures=failures)


def chain_identity(X):
    return chain_map(X, X, {n: adams_identity(M) for n, M in X.levels}, check=False)


def chain_zero(X, Y):
    return ChainMap(source=X, target=Y)


##
def shift_complex(X, m):
    """
    X[m]: (X[m])_n = X_{n-m} with differential (−1)^m d.

    Periodic complexes are shifted by their own rule.
    """
    if not isinstance(X, BoundedComplex):
        from pyadams.common_periodic import periodic_shift

        return periodic_shift(X, m)

    if m == 0:
        return X
    sign = -1 if m % 2 else 1
    return bounded_complex(
        X.p,
        {n + m: M for n, M in X.levels},
        {n + m: d.scale(sign) for n, d in X.diffs},
    )


def shift_chain_map(f, m):
    return chain_map(
        shift_complex(f.source, m),
        shift_complex(f.target, m),
        {n + m: g for n, g in f.components},
        check=False,
    )


def twist_complex(X, k):
    """T^k applied levelwise."""
    if not isinstance(X, BoundedComplex):
        from pyadams.common_periodic import periodic_twist

        return periodic_twist(X, k)

    return bounded_complex(
        X.p,
        {n: twist(M, k) for n, M in X.levels},
        {n: twist_map(d, k) for n, d in X.diffs},
    )


def twist_chain_map(f, k):
    return chain_map(
        twist_complex(f.source, k),
        twist_complex(f.target, k),
        {n: twist_map(g, k) for n, g in f.components},
        check=False,
    )


##
def tensor_level(X, Y, n):
    """
    (X ⊗ Y)_n = ⊕_{a+b=n} X_a ∧ Y_b over the nonzero pairs, in ascending a.
    """
    pairs = [
        (a, n - a)
        for a in X.support
        if not Y.level(n - a).zero_p()
    ]
    summands = [smash(X.level(a), Y.level(b)) for a, b in pairs]
    return pairs, adams_sum(summands, p=X.p)


def tensor_complexes(X, Y):
    """X ⊗ Y with d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy."""
    if X.p != Y.p:
        raise ConfigurationMismatchError(f"p={X.p} vs p={Y.p}")
    p = X.p
    if X.zero_p() or Y.zero_p():
        return zero_complex(p)

    lo = X.degree_range[0] + Y.degree_range[0]
    hi = X.degree_range[1] + Y.degree_range[1]
    data = {n: tensor_level(X, Y, n) for n in range(lo - 1, hi + 1)}

    levels = {n: data[n][1].module for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src_pairs, src = data[n]
        tgt_pairs, tgt = data[n - 1]
        index = {pair: i for i, pair in enumerate(tgt_pairs)}
        blocks = {}
        for s, (a, b) in enumerate(src_pairs):
            x_id = adams_identity(X.level(a))
            y_id = adams_identity(Y.level(b))
            if (a - 1, b) in index:
                blocks[(index[(a - 1, b)], s)] = smash_maps(X.diff(a), y_id)
            if (a, b - 1) in index:
                term = smash_maps(x_id, Y.diff(b))
                blocks[(index[(a, b - 1)], s)] = term.scale(-1) if a % 2 else term
        diffs[n] = block_map(src, tgt, blocks)

    return bounded_complex(p, levels, diffs)


def tensor_chain_maps(f, g):
    """f ⊗ g, blockwise f_a ∧ g_b."""
    X, Y = f.source, g.source
    X2, Y2 = f.target, g.target
    source = tensor_complexes(X, Y)
    target = tensor_complexes(X2, Y2)

    components = {}
    for n in source.support:
        src_pairs, src = tensor_level(X, Y, n)
        tgt_pairs, tgt = tensor_level(X2, Y2, n)
        index = {pair: i for i, pair in enumerate(tgt_pairs)}
        blocks = {
            (index[(a, b)], s): smash_maps(f.component(a), g.component(b))
            for s, (a, b) in enumerate(src_pairs)
            if (a, b) in index
        }
        components[n] = block_map(src, tgt, blocks)

    return chain_map(source, target, components, check=False)


##
def homology_data_at(X, n):
    return adams_homology_data(X.diff(n + 1), X.diff(n), degree=n)


def complex_homology(X, degrees=None):
    """{n: H_n(X)} over `degrees` (default: the support)."""
    if degrees is None:
        degrees = X.support
    return {n: homology_data_at(X, n).module for n in degrees}


def chain_homology_maps(f, degrees=None):
    """{n: H_n(f)} as AdamsMaps."""
    if degrees is None:
        degrees = f.degrees()
    return {
        n: homology_map(homology_data_at(f.source, n), homology_data_at(f.target, n), f.component(n))
        for n in degrees
    }


##
def sphere_complex(P, n):
    """S^n P: P concentrated in degree n."""
    return concentrated(P, n)


def disk_complex(P, n):
    """D^n P: P in degrees n and n−1 with identity differential."""
    return bounded_complex(P.p, {n: P, n - 1: P}, {n: adams_identity(P)})


def generating_cofibration(P, n):
    """S^{n-1} P → D^n P."""
    S, D = sphere_complex(P, n - 1), disk_complex(P, n)
    return chain_map(S, D, {n - 1: adams_identity(P)})


def generating_acyclic_cofibration(P, n):
    """0 → D^n P."""
    return chain_zero(zero_complex(P.p), disk_complex(P, n))


##
def complex_sum(complexes):
    """⊕ of bounded complexes, with injections and projections as chain maps."""
    complexes = list(complexes)
    p = complexes[0].p
    degrees = sorted({n for X in complexes for n in X.support})

    sums = {n: adams_sum([X.level(n) for X in complexes], p=p) for n in degrees}
    levels = {n: S.module for n, S in sums.items()}
    diffs = {
        n: block_map(sums[n], sums[n - 1], {(i, i): X.diff(n) for i, X in enumerate(complexes)})
        for n in degrees
        if n - 1 in sums
    }
    S = bounded_complex(p, levels, diffs)

    inj = [
        chain_map(X, S, {n: AdamsMap(X.level(n), S.level(n), sums[n].inj[i].entries) for n in X.support}, check=False)
        for i, X in enumerate(complexes)
    ]
    proj = [
        chain_map(S, X, {n: AdamsMap(S.level(n), X.level(n), sums[n].proj[i].entries) for n in X.support}, check=False)
        for i, X in enumerate(complexes)
    ]
    return simple_obj(complex=S, inj=inj, proj=proj)


##
def sign_of(exponent):
    return -1 if exponent % 2 else 1


def summary(X):
    return simple_obj(
        support=list(X.support),
        levels={n: str(M) for n, M in X.levels},
    )


##
