"""
Random desk-scale objects for property tests. Every generator takes a
`numpy.random.Generator` (use `numpy.random.default_rng(seed)`), so runs
are reproducible.

Complexes are direct sums of random cells: spheres of lines, spheres of
torsion lines `(Z/p^e, psi = g^{j(p-1)})`, and two-term complexes
`L_j --p^e--> L_j`. Sums of cells are complexes by construction.
"""
import numpy

from pyadams.common_adams import cyclic_adams, line
from pyadams.common_complex import (
    bounded_complex,
    chain_map,
    complex_sum,
    concentrated,
    disk_complex,
    sphere_complex,
)
from pyadams.common_family import detection_family
from pyadams.common_periodic import flatten, periodify_map
from pyadams.common_resolution import resolve
from pyadams.common_scalar import twist_scalar


##
def random_weight(rng: numpy.random.Generator, window=(-2, 2)):
    lo, hi = window
    return int(rng.integers(lo, hi, endpoint=True))


def random_line(rng, p, window=(-2, 2)):
    return line(p, random_weight(rng, window))


def random_torsion_line(rng, p, window=(-2, 2), max_exponent=3):
    """(Z/p^e, psi = g^{j(p-1)}) with 1 ≤ e ≤ max_exponent."""
    e = int(rng.integers(1, max_exponent, endpoint=True))
    return cyclic_adams(p, e, psi=twist_scalar(p, random_weight(rng, window)))


def random_cell(rng, p, n, window=(-2, 2), max_exponent=3):
    """A sphere of a (torsion) line in degree n, or L_j --p^e--> L_j in degrees n, n-1."""
    kind = rng.integers(3)
    if kind == 0:
        return sphere_complex(random_line(rng, p, window), n)
    if kind == 1:
        return sphere_complex(random_torsion_line(rng, p, window, max_exponent), n)

    L = random_line(rng, p, window)
    e = int(rng.integers(0, max_exponent, endpoint=True))
    return bounded_complex(p, {n: L, n - 1: L}, {n: [[p**e]]})


def random_bounded_complex(rng, p, degrees=(-3, 3), max_cells=3, window=(-2, 2), max_exponent=3):
    """A sum of 1 to `max_cells` random cells with top degrees in `degrees`."""
    lo, hi = degrees
    count = int(rng.integers(1, max_cells, endpoint=True))
    cells = [
        random_cell(rng, p, int(rng.integers(lo + 1, hi, endpoint=True)), window, max_exponent)
        for _ in range(count)
    ]
    return complex_sum(cells).complex


##
def random_quotient_map(rng, p, degrees=(-3, 3), window=(-2, 2), max_exponent=3):
    """
    q: [L_j --p^e--> L_j] → (Z/p^e, psi = g^{j(p-1)}), the complex in degrees
    n and n − 1. A quasi-isomorphism that does not split.
    """
    lo, hi = degrees
    n = int(rng.integers(lo + 1, hi, endpoint=True))
    j = random_weight(rng, window)
    e = int(rng.integers(1, max_exponent, endpoint=True))
    L = line(p, j)
    X = bounded_complex(p, {n: L, n - 1: L}, {n: [[p**e]]})
    Y = concentrated(cyclic_adams(p, e, psi=twist_scalar(p, j)), n - 1)
    return chain_map(X, Y, {n - 1: [[1]]})


def random_quasi_iso(rng, p, **kwargs):
    """
    A quasi-isomorphism between random complexes, one of:
    the projection X ⊕ D^n L → X or the inclusion X → X ⊕ D^n L of a
    contractible disk; a `random_quotient_map` followed by such an inclusion;
    the augmentation of a quasi resolution of a random complex.
    """
    lo, hi = kwargs.get("degrees", (-3, 3))
    window = kwargs.get("window", (-2, 2))

    def disk():
        return disk_complex(random_line(rng, p, window), int(rng.integers(lo + 1, hi, endpoint=True)))

    kind = rng.integers(4)
    if kind == 2:
        q = random_quotient_map(rng, p, (lo, hi), window, kwargs.get("max_exponent", 3))
        return complex_sum([q.target, disk()]).inj[0] @ q
    if kind == 3:
        X = random_bounded_complex(rng, p, **kwargs)
        family = detection_family(p, window=window, kind="lines")
        return resolve(X, "quasi", family, depth=hi - lo + 3).augmentation

    X = random_bounded_complex(rng, p, **kwargs)
    S = complex_sum([X, disk()])
    if kind:
        return S.proj[0]
    return S.inj[0]


def random_chain_map(rng, p, **kwargs):
    """
    A chain map between random complexes: a projection or inclusion of a sum
    of two random complexes, scaled by p^e.
    """
    X = random_bounded_complex(rng, p, **kwargs)
    Y = random_bounded_complex(rng, p, **kwargs)
    S = complex_sum([X, Y])
    f = S.proj[0] if rng.integers(2) else S.inj[0]
    e = int(rng.integers(0, 2, endpoint=True))
    return chain_map(f.source, f.target, {n: g.scale(p**e) for n, g in f.components}, check=False)


def random_unrolled_map(rng, p, period, twist_weight, **kwargs):
    """
    A chain map M → UX, obtained by flattening the periodification of a
    random chain map.
    """
    f = random_chain_map(rng, p, **kwargs)
    return flatten(periodify_map(f, period, twist_weight))


##
