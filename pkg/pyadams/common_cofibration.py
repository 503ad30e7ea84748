"""
Cofibrations of the relative (family-detected) structure: degreewise split
monomorphisms whose cokernel is built from family members by cells attached
in a well-founded order.
"""
import itertools
from graphlib import CycleError, TopologicalSorter

from pyadams.common_adams import (
    adams_cokernel,
    adams_identity,
    adams_kernel,
    adams_zero,
    hom_group,
    twist,
    weights_of,
)
from pyadams.common_complex import BoundedComplex, chain_zero, zero_complex
from pyadams.common_dict import simple_obj
from pyadams.common_icecream import ic
from pyadams.common_module import (
    HomModule,
    injective_p,
    mat_hstack,
    mat_zero_p,
    mat_zeros,
    module_solve,
)
from pyadams.common_periodic import periodic_zero, periodic_zero_map
from pyadams.common_snf import matrix_inverse


##
def retraction(i):
    """
    An equivariant r with r ∘ i = id, solved over the generators of
    Hom_𝓑(target, source); None when i does not split.
    """
    A, B = i.source, i.target
    if A.zero_p():
        return adams_zero(B, A)
    if not injective_p(i.map):
        return None

    hg = hom_group(B, A)
    if not hg.generators:
        return None

    hm = HomModule(A.underlying, A.underlying)
    cols = [hm.coords((g @ i).entries) for g in hg.generators]
    rhs = hm.coords(adams_identity(A).entries)
    coeffs = module_solve(hm.module, mat_hstack(*cols), rhs)
    if coeffs is None:
        return None

    r = adams_zero(B, A)
    for c, g in zip(coeffs, hg.generators):
        if c != 0:
            r = r + g.scale(c)
    return r


def _candidates(gens, max_exhaustive=6, max_size=3):
    if len(gens) <= max_exhaustive:
        for size in range(1, min(len(gens), max_size) + 1):
            yield from itertools.combinations(gens, size)
    else:
        for g in gens:
            yield (g,)
        yield tuple(gens)


def split_off(P, C):
    """A split monomorphism P → C with its retraction, or None."""
    gens = hom_group(P, C).generators
    for combo in _candidates(gens):
        i = combo[0]
        for g in combo[1:]:
            i = i + g
        r = retraction(i)
        if r is not None:
            return i, r
    return None


def cell_candidates(C, family, twist_weight=None):
    """
    The family members, followed (for a periodic level, where a cell may sit
    in the window as T^{kw} P) by the twists T^{kw} P whose weights occur in C.
    """
    res = list(family.members)
    if not twist_weight or C.underlying.torsion:
        return res

    weights = set(weights_of(C))
    for name, P in family.members:
        ks = sorted(
            {(c - a) // twist_weight for c in weights for a in weights_of(P) if (c - a) % twist_weight == 0}
        )
        res.extend((f"T^{k * twist_weight} {name}", twist(P, k * twist_weight)) for k in ks if k != 0)
    return res


def decompose(C, family, twist_weight=None):
    """
    Writes C as a direct sum of cells by splitting them off greedily in the
    order of `cell_candidates`. Returns the cells as (name, inclusion into C)
    or None.
    """
    candidates = cell_candidates(C, family, twist_weight)
    cells = []
    rest, rest_incl = C, adams_identity(C)
    while not rest.zero_p():
        for name, P in candidates:
            found = split_off(P, rest)
            if found is None:
                continue
            i, r = found
            cells.append((name, rest_incl @ i))
            ker = adams_kernel(r)
            rest, rest_incl = ker.module, rest_incl @ ker.incl
            break
        else:
            ic("no member splits off", str(rest))
            return None
    return cells


def cell_projections(C, cells):
    """Entries of the projections of C onto each cell (rows of the inverse basis)."""
    n = C.n_gens
    basis = mat_hstack(mat_zeros(n, 0), *[incl.entries for _, incl in cells])
    inv = matrix_inverse(basis, C.p)
    res = []
    row = 0
    for _, incl in cells:
        k = incl.source.n_gens
        res.append(inv[row : row + k, :])
        row += k
    return res


##
def _degrees(f):
    if isinstance(f.source, BoundedComplex):
        return sorted(set(f.source.support) | set(f.target.support))
    return list(range(f.period))


def check_cofibration(f, family):
    """
    Certifies f as a relative cofibration: every level splits
    equivariantly, every cokernel level decomposes into family members, and
    the graph of nonzero cell-to-cell differentials (wrap included) is
    acyclic. The topological order of that graph is the cell filtration.
    """
    Y = f.target
    periodic_p = not isinstance(Y, BoundedComplex)
    degrees = _degrees(f)
    report = dict(family=family.descriptor, split_p=False, cells=None, order=None, reason=None)

    retractions = {}
    for n in degrees:
        r = retraction(f.component(n))
        if r is None:
            report.update(verdict=False, reason=f"degree {n} is not a split monomorphism")
            return simple_obj(**report)
        retractions[n] = r
    report.update(split_p=True)

    cokers = {n: adams_cokernel(f.component(n)) for n in degrees}
    cells = {}
    for n in degrees:
        found = decompose(cokers[n].module, family, Y.twist_weight if periodic_p else None)
        if found is None:
            report.update(
                verdict=False,
                reason=f"the cokernel in degree {n} ({cokers[n].module}) does not decompose into family members",
            )
            return simple_obj(**report)
        cells[n] = found
    report.update(cells=[(n, name) for n in degrees for name, _ in cells[n]])

    projections = {n: cell_projections(cokers[n].module, cells[n]) for n in degrees}

    def differential(n):
        """(source degree, target degree, entries) of d on the cokernel, or None."""
        if periodic_p:
            m = (n - 1) % Y.period
            d = Y.window_diff(n)
        else:
            m = n - 1
            if m not in cokers:
                return None
            d = Y.diff(n)
        return m, cokers[m].proj.entries * d.entries * cokers[n].lift

    graph = {}
    for n in degrees:
        for i, _ in enumerate(cells[n]):
            graph.setdefault((n, i), set())
        found = differential(n)
        if found is None:
            continue
        m, d = found
        for i, (_, incl) in enumerate(cells[n]):
            for j, proj in enumerate(projections[m]):
                if not mat_zero_p(proj * d * incl.entries):
                    graph[(n, i)].add((m, j))

    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError as e:
        report.update(verdict=False, reason=f"the cell graph has a cycle: {e.args[1]}")
        return simple_obj(**report)

    report.update(
        verdict=True,
        order=[(n, cells[n][i][0]) for n, i in order],
    )
    return simple_obj(**report)


def is_cofibrant(X, family):
    """Checks 0 → X."""
    if isinstance(X, BoundedComplex):
        f = chain_zero(zero_complex(X.p), X)
    else:
        f = periodic_zero_map(periodic_zero(*X.config), X)
    return check_cofibration(f, family)


def split_certificate(f, family):
    """The equivariant retractions alone, degree by degree."""
    return {n: retraction(f.component(n)) is not None for n in _degrees(f)}


##
