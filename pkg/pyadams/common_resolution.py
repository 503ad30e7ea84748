"""
Cofibrant replacements built from detection-family members, and the derived
functors computed from them: the derived tensor product over ℙ𝓘 and relative
Ext.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from pyadams.common_adams import (
    AdamsMap,
    AdamsModule,
    adams_isomorphic_p,
    adams_kernel,
    adams_sum,
    adams_zero,
    block_map,
    hom_coords,
    hom_group,
    zero_adams,
)
from pyadams.common_cofibration import is_cofibrant
from pyadams.common_complex import (
    BoundedComplex,
    ChainMap,
    bounded_complex,
    chain_identity,
    chain_zero,
    complex_homology,
    concentrated,
    tensor_complexes,
    zero_complex,
)
from pyadams.common_dict import simple_obj, simple_obj_update
from pyadams.common_errors import ResolutionError, ValidationError
from pyadams.common_family import family_reordered, family_widened
from pyadams.common_icecream import ic
from pyadams.common_module import (
    MatrixMap,
    homology_data,
    mat_hstack,
    mat_zero_p,
    mat_zeros,
    module_solve,
    surjective_p,
)
from pyadams.common_monoid import tensor_over_unit
from pyadams.common_periodic import (
    PeriodicComplex,
    periodic_homology,
    periodic_identity,
    periodify,
    periodify_map,
)

MODES = ("quasi", "relative")


##
@dataclass(frozen=True)
class Resolution:
    """
    A complex of finite sums of family members with an augmentation to the
    resolved object. `truncated_p` is set when the construction stopped at
    `depth` with something left to kill; `covered_p` is unset when a quasi
    mode cover was not surjective on underlying modules.
    """

    complex: object
    augmentation: object
    mode: str
    depth: int
    family: str
    truncated_p: bool = False
    covered_p: bool = True

    @property
    def flags(self):
        res = []
        if self.truncated_p:
            res.append("truncated")
        if not self.covered_p:
            res.append("uncovered")
        return res


def mode_check(mode):
    if mode not in MODES:
        raise ValidationError(f"unknown resolution mode {mode!r} (expected one of {MODES})")


##
class _HomCache:
    """hom_group between family members, computed once per pair of names."""

    def __init__(self):
        self.groups = {}

    def get(self, name_P, P, name_Q, Q):
        key = (name_P, name_Q)
        if key not in self.groups:
            self.groups[key] = hom_group(P, Q)
        return self.groups[key]


def _in_span(M, columns, rhs):
    if not columns:
        return mat_zero_p(rhs)
    generators = mat_hstack(*columns)
    return module_solve(M, generators, rhs) is not None


def cover(K, family, mode, cache=None):
    """
    A greedy cover C → K by family members, one summand per useful generator
    of hom_group(P, K) in member order.

    In quasi mode a generator is useful when it enlarges the underlying image.
    In relative mode it is useful when it is not already in the image of
    Hom(P, C) → Hom(P, K).

    Returns a record with `module` (C), `map` (C → K), `names` and
    `covered_p` (surjectivity on underlying modules).
    """
    if cache is None:
        cache = _HomCache()
    p = K.p
    chosen = []

    if not K.zero_p():
        for name, P in family.members:
            hg = hom_group(P, K)
            for h in hg.generators:
                if h.zero_p():
                    continue
                if mode == "quasi":
                    span = [c.entries for _, _, c in chosen]
                    useful = any(
                        not _in_span(K.underlying, span, h.entries[:, k])
                        for k in range(P.n_gens)
                    )
                else:
                    images = [
                        hom_coords(hg, c @ g)
                        for name_Q, Q, c in chosen
                        for g in cache.get(name, P, name_Q, Q).generators
                    ]
                    useful = not _in_span(hg.module, images, hom_coords(hg, h))
                if useful:
                    chosen.append((name, P, h))

    if not chosen:
        Z = zero_adams(p)
        return simple_obj(
            module=Z,
            map=adams_zero(Z, K),
            names=[],
            covered_p=K.zero_p(),
        )

    S = adams_sum([P for _, P, _ in chosen], p=p)
    entries = mat_zeros(K.n_gens, S.module.n_gens)
    for (_, _, h), proj in zip(chosen, S.proj):
        entries = entries + h.entries * proj.entries
    c = AdamsMap(S.module, K, entries)

    ic("cover", str(K), [name for name, _, _ in chosen])
    return simple_obj(
        module=S.module,
        map=c,
        names=[name for name, _, _ in chosen],
        covered_p=surjective_p(c.map),
    )


##
def _relative_cycles(P_prev, d_prev, eps_prev, X, n):
    """
    K_n = {(z, x) : z a cycle of P_{n-1}, x in X_n, ε(z) = d x}, with its
    maps to P_{n-1} and X_n.
    """
    Z = adams_kernel(d_prev)
    S = adams_sum([Z.module, X.level(n)], p=X.p)
    T = adams_sum([X.level(n - 1)], p=X.p)
    Phi = block_map(S, T, {(0, 0): eps_prev @ Z.incl, (0, 1): -X.diff(n)})
    K = adams_kernel(Phi)

    to_P = Z.incl @ S.proj[0] @ K.incl
    to_X = S.proj[1] @ K.incl
    return simple_obj(module=K.module, to_P=to_P, to_X=to_X)


def resolve_bounded(X, mode, family, depth):
    """
    Builds P → X degree by degree from the bottom of X. In degree n the cover
    of K_n supplies P_n, its differential and the augmentation; levels are
    built on lo..lo+depth−1 and a nonzero K in the next degree marks the
    result truncated.
    """
    mode_check(mode)
    p = X.p
    if X.zero_p():
        Z = zero_complex(p)
        return Resolution(Z, chain_zero(Z, X), mode, depth, family.descriptor)

    if is_cofibrant(X, family).verdict:
        return Resolution(X, chain_identity(X), mode, depth, family.descriptor)

    lo, hi = X.degree_range
    cache = _HomCache()
    zero = zero_adams(p)

    levels, diffs, eps = {}, {}, {}
    P_prev, d_prev, eps_prev = zero, adams_zero(zero, zero), adams_zero(zero, X.level(lo - 1))
    truncated_p, covered_p = False, True

    for n in range(lo, lo + depth + 1):
        K = _relative_cycles(P_prev, d_prev, eps_prev, X, n)
        if K.module.zero_p() and n > hi:
            break
        if n == lo + depth:
            truncated_p = not K.module.zero_p()
            break

        c = cover(K.module, family, mode, cache)
        if mode == "quasi" and not c.covered_p:
            covered_p = False

        P_n = c.module
        d_n = K.to_P @ c.map
        eps_n = K.to_X @ c.map
        ic(n, str(P_n), c.names)

        levels[n] = P_n
        diffs[n] = d_n
        eps[n] = eps_n
        P_prev, d_prev, eps_prev = P_n, d_n, eps_n

    P = _bounded_from(p, levels, diffs)
    augmentation = ChainMap(
        source=P,
        target=X,
        components=tuple(
            (n, AdamsMap(P.level(n), X.level(n), e.entries))
            for n, e in sorted(eps.items())
            if not P.level(n).zero_p() and not e.zero_p()
        ),
    )
    return Resolution(
        complex=P,
        augmentation=augmentation,
        mode=mode,
        depth=depth,
        family=family.descriptor,
        truncated_p=truncated_p,
        covered_p=covered_p,
    )


def _bounded_from(p, levels, diffs):
    """The complex of the constructed levels; d_n into the zero level below lo is dropped."""
    kept = {n: M for n, M in levels.items() if not M.zero_p()}

    def level(n):
        return kept.get(n) or zero_adams(p)

    stored = {
        n: AdamsMap(level(n), level(n - 1), d.entries)
        for n, d in diffs.items()
        if n in kept and (n - 1) in kept
    }
    return bounded_complex(p, kept, stored)


def resolve(X, mode="quasi", family=None, depth=4):
    """
    A Resolution of X (an AdamsModule, a BoundedComplex or a PeriodicComplex).

    A periodic X is its own resolution when 0 → X is a cofibration; one that
    remembers its bounded source is resolved as ℙ of the source's
    resolution. Anything else raises ResolutionError.
    """
    mode_check(mode)
    if family is None:
        raise ValidationError("resolve needs a detection family")
    if depth < 1:
        raise ValidationError(f"depth must be at least 1, got {depth}")

    if isinstance(X, AdamsModule):
        X = concentrated(X, 0)
    if isinstance(X, BoundedComplex):
        return resolve_bounded(X, mode, family, depth)

    if is_cofibrant(X, family).verdict:
        return Resolution(X, periodic_identity(X), mode, depth, family.descriptor)
    if X.source is not None:
        R = resolve_bounded(X.source, mode, family, depth)
        N, w = X.period, X.twist_weight
        return Resolution(
            complex=periodify(R.complex, N, w),
            augmentation=periodify_map(R.augmentation, N, w),
            mode=mode,
            depth=depth,
            family=family.descriptor,
            truncated_p=R.truncated_p,
            covered_p=R.covered_p,
        )
    raise ResolutionError(
        "no cofibrant replacement: the complex is not cofibrant for the family and is not a periodification"
    )


##
def _as_periodic(X, period, twist_weight):
    if isinstance(X, PeriodicComplex):
        return X
    return periodify(X, period, twist_weight)


def derived_tensor(X, Y, family, depth, cfg=None, mode="quasi"):
    """
    H_* of QX ⊗_{ℙ𝓘} QY over the window, for resolutions Q in `mode`.

    Bounded inputs are tensored in C(𝓑) instead (with `tensor_complexes`);
    their homology is reported on the support of the product. The report
    carries the union of both truncation flags.
    """
    jobs = [(X, mode, family, depth), (Y, mode, family, depth)]
    if cfg is not None and cfg.parallel:
        with ThreadPoolExecutor(max_workers=2) as executor:
            RX, RY = executor.map(lambda args: resolve(*args), jobs)
    else:
        RX, RY = [resolve(*args) for args in jobs]

    if isinstance(RX.complex, BoundedComplex) and isinstance(RY.complex, BoundedComplex):
        T = tensor_complexes(RX.complex, RY.complex)
        homology = complex_homology(T)
        homology = [(n, H) for n, H in sorted(homology.items())]
    else:
        like = RX.complex if isinstance(RX.complex, PeriodicComplex) else RY.complex
        N, w = like.period, like.twist_weight
        T = tensor_over_unit(_as_periodic(RX.complex, N, w), _as_periodic(RY.complex, N, w))
        homology = list(enumerate(periodic_homology(T)))

    flags = sorted(set(RX.flags) | set(RY.flags))
    return simple_obj(
        homology=homology,
        complex=T,
        family=family.descriptor,
        mode=mode,
        depth=depth,
        truncated_p="truncated" in flags,
        flags=flags,
    )


def homology_tables_isomorphic_p(A, B):
    """Degreewise AdamsModule isomorphism of two homology tables."""
    a = {n: H for n, H in A if not H.zero_p()}
    b = {n: H for n, H in B if not H.zero_p()}
    if set(a) != set(b):
        return False
    return all(adams_isomorphic_p(a[n], b[n]) for n in a)


def resolution_independence(X, Y, family, depth, cfg=None, mode="quasi"):
    """
    Recomputes derived_tensor with the family reversed, with its window grown
    by 2 on each side, and with depth + 2, and compares each homology table
    with the base one. The record is the base result with the comparisons
    added.
    """
    base = derived_tensor(X, Y, family, depth, cfg, mode)
    variants = {
        "reordered": derived_tensor(X, Y, family_reordered(family), depth, cfg, mode),
        "widened": derived_tensor(X, Y, family_widened(family, by=2), depth, cfg, mode),
        "deeper": derived_tensor(X, Y, family, depth + 2, cfg, mode),
    }
    checks = {
        name: homology_tables_isomorphic_p(base.homology, res.homology)
        for name, res in variants.items()
    }
    return simple_obj_update(
        base,
        independent_p=all(checks.values()),
        checks=simple_obj(**checks),
        variant_homology=simple_obj(**{name: res.homology for name, res in variants.items()}),
    )


##
def ext_relative(M, N, family, s_max, mode="quasi", depth=None):
    """
    Ext^s(M, N) for 0 ≤ s ≤ s_max: the cohomology of Hom_𝓑(P, N) for a
    resolution P → M in `mode`, with Ext^s in cohomological degree s coming
    from P_s.
    """
    mode_check(mode)
    if depth is None:
        depth = s_max + 2
    R = resolve(M, mode, family, depth)
    P = R.complex

    groups = {s: hom_group(P.level(s), N) for s in range(-1, s_max + 2)}

    def coboundary(s):
        """δ^s: Hom(P_s, N) → Hom(P_{s+1}, N), f ↦ f ∘ d_{s+1}."""
        src, tgt = groups[s], groups[s + 1]
        d = P.diff(s + 1)
        cols = [hom_coords(tgt, g @ d) for g in src.generators]
        return MatrixMap(
            src.module,
            tgt.module,
            mat_hstack(mat_zeros(tgt.module.n_gens, 0), *cols),
        )

    values = []
    for s in range(0, s_max + 1):
        data = homology_data(coboundary(s - 1), coboundary(s), degree=s)
        values.append(data.module)

    return simple_obj(
        ext=values,
        mode=mode,
        family=family.descriptor,
        truncated_p=R.truncated_p,
        covered_p=R.covered_p,
        resolution=R,
    )


##
