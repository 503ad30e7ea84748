"""
Hom-complexes out of dualisable modules, and the predicates built on them:
quasi-isomorphisms, relative (family-detected) equivalences and fibrations,
and the injective cofibrations and weak equivalences.
"""
from dataclasses import dataclass
from typing import Dict, Tuple

from pyadams.common_adams import dualisable_check, hom_coords, hom_group, is_iso_map
from pyadams.common_complex import BoundedComplex, chain_homology_maps
from pyadams.common_dict import simple_obj
from pyadams.common_family import family_widened
from pyadams.common_icecream import ic
from pyadams.common_module import (
    MatrixMap,
    homology_data,
    induced_homology_map,
    injective_p,
    iso_p,
    mat_hstack,
    mat_zeros,
    surjective_p,
)
from pyadams.common_periodic import PeriodicComplex, periodic_homology_maps


##
@dataclass(frozen=True)
class HomComplex:
    """
    Hom_𝓑(P, X_n) for lo−1 ≤ n ≤ hi+1 with the differentials induced by d_X.
    Homology is reported on lo..hi.
    """

    P: object
    degree_range: Tuple[int, int]
    groups: Dict[int, object]
    diffs: Dict[int, MatrixMap]

    def level(self, n):
        return self.groups[n].module

    def diff(self, n):
        return self.diffs[n]

    def homology_data(self, n):
        return homology_data(self.diffs[n + 1], self.diffs[n], degree=n)

    def homology(self):
        lo, hi = self.degree_range
        return {n: self.homology_data(n).module for n in range(lo, hi + 1)}


def default_degree_range(X):
    if isinstance(X, PeriodicComplex):
        return (-X.period, X.period)
    if X.zero_p():
        return (0, 0)
    return X.degree_range


def map_degree_range(f):
    """The default degree range of a map: the union of both supports."""
    if isinstance(f.source, PeriodicComplex):
        return default_degree_range(f.source)
    degrees = set(f.source.support) | set(f.target.support)
    if not degrees:
        return (0, 0)
    return (min(degrees), max(degrees))


def hom_complex(P, X, degree_range=None):
    """
    The chain complex Hom_𝓑(P, X), computed levelwise by `hom_group`. P must
    be dualisable.
    """
    dualisable_check(P)
    if degree_range is None:
        degree_range = default_degree_range(X)
    lo, hi = degree_range

    groups = {n: hom_group(P, X.level(n)) for n in range(lo - 1, hi + 2)}
    diffs = {}
    for n in range(lo, hi + 2):
        src, tgt = groups[n], groups[n - 1]
        d = X.diff(n)
        cols = [hom_coords(tgt, d @ g) for g in src.generators]
        entries = mat_hstack(mat_zeros(tgt.module.n_gens, 0), *cols)
        diffs[n] = MatrixMap(src.module, tgt.module, entries)

    return HomComplex(P=P, degree_range=(lo, hi), groups=groups, diffs=diffs)


def hom_complex_map(P, f, degree_range=None):
    """Hom(P, f): Hom(P, X) → Hom(P, Y) as levelwise MatrixMaps."""
    if degree_range is None:
        degree_range = map_degree_range(f)
    source = hom_complex(P, f.source, degree_range)
    target = hom_complex(P, f.target, degree_range)

    lo, hi = degree_range
    components = {}
    for n in range(lo - 1, hi + 2):
        src, tgt = source.groups[n], target.groups[n]
        g = f.component(n)
        cols = [hom_coords(tgt, g @ h) for h in src.generators]
        entries = mat_hstack(mat_zeros(tgt.module.n_gens, 0), *cols)
        components[n] = MatrixMap(src.module, tgt.module, entries)

    return simple_obj(source=source, target=target, components=components)


##
def homology_isos(f):
    """{degree: whether H_n(f) is an isomorphism}."""
    if isinstance(f.source, BoundedComplex):
        maps = chain_homology_maps(f, degrees=_bounded_degrees(f))
        return {n: is_iso_map(h) for n, h in maps.items()}
    return {n: is_iso_map(h) for n, h in enumerate(periodic_homology_maps(f))}


def _bounded_degrees(f):
    degrees = set(f.source.support) | set(f.target.support)
    return sorted(degrees | {n + 1 for n in degrees} | {n - 1 for n in degrees})


def is_quasi_iso(f):
    return all(homology_isos(f).values())


def quasi_iso_report(f):
    isos = homology_isos(f)
    return simple_obj(
        verdict=all(isos.values()),
        failing_degrees=[n for n, ok in isos.items() if not ok],
    )


##
def is_relative_equivalence(f, family, degree_range=None):
    """
    Whether Hom(P, f) is a quasi-isomorphism for every member P of `family`
    on `degree_range`. The verdict is relative to the family, which the report
    names.
    """
    if degree_range is None:
        degree_range = map_degree_range(f)
    lo, hi = degree_range

    members = []
    for name, P in family.members:
        hm = hom_complex_map(P, f, degree_range)
        failing = []
        for n in range(lo, hi + 1):
            src = hm.source.homology_data(n)
            tgt = hm.target.homology_data(n)
            if not iso_p(induced_homology_map(src, tgt, hm.components[n])):
                failing.append(n)
        ic(name, failing)
        members.append(simple_obj(name=name, quasi_iso_p=not failing, failing_degrees=failing))

    return simple_obj(
        verdict=all(m.quasi_iso_p for m in members),
        family=family.descriptor,
        degree_range=list(degree_range),
        members=members,
    )


def is_relative_fibration(f, family, degree_range=None):
    """Whether Hom(P, f) is surjective in each degree, for P in `family`."""
    if degree_range is None:
        degree_range = map_degree_range(f)
    lo, hi = degree_range

    members = []
    for name, P in family.members:
        hm = hom_complex_map(P, f, degree_range)
        failing = [n for n in range(lo, hi + 1) if not surjective_p(hm.components[n])]
        members.append(simple_obj(name=name, surjective_p=not failing, failing_degrees=failing))

    return simple_obj(
        verdict=all(m.surjective_p for m in members),
        family=family.descriptor,
        degree_range=list(degree_range),
        members=members,
    )


def _map_degrees(f):
    if isinstance(f.source, BoundedComplex):
        return sorted(set(f.source.support))
    return range(f.period)


def is_injective_cofibration(f):
    """Degreewise monomorphism."""
    return all(injective_p(f.component(n).map) for n in _map_degrees(f))


def is_injective_weak_equivalence(f):
    return is_quasi_iso(f)


def window_stability(f, family, degree_range=None):
    """
    Recomputes `is_relative_equivalence` on the family with a doubled window
    and reports whether the verdict moved.
    """
    base = is_relative_equivalence(f, family, degree_range)
    wider = family_widened(family)
    widened = is_relative_equivalence(f, wider, degree_range)
    return simple_obj(
        stable_p=base.verdict == widened.verdict,
        verdict=base.verdict,
        widened_verdict=widened.verdict,
        family=base.family,
        widened_family=widened.family,
    )


##
