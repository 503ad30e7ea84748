"""
Pushout-products of maps of periodic complexes over ℙ𝓘.
"""
from dataclasses import dataclass

from pyadams.common_adams import AdamsMap, adams_kernel
from pyadams.common_cofibration import check_cofibration
from pyadams.common_dict import simple_obj
from pyadams.common_errors import ValidationError
from pyadams.common_homotopy import (
    is_injective_cofibration,
    quasi_iso_report,
)
from pyadams.common_monoid import tensor_over_unit_maps
from pyadams.common_periodic import (
    PeriodicComplex,
    PeriodicMap,
    complex_cokernel,
    config_check,
    periodic_identity,
    periodic_map,
    periodic_sum,
)


##
@dataclass(frozen=True)
class PushoutProductProblem:
    """
    f: U → V and g: W → X with the corner (V⊗W) ⊔_{U⊗W} (U⊗X) and the map
    f □ g from it to V⊗X.
    """

    f: PeriodicMap
    g: PeriodicMap
    corner: PeriodicComplex
    corner_map: PeriodicMap
    legs: tuple


def pushout_product(f, g):
    """
    Computes the corner as the cokernel of (f⊗1, −1⊗g): U⊗W → V⊗W ⊕ U⊗X and
    f □ g as the map induced by (1⊗g, f⊗1) on it.
    """
    for h in (f, g):
        if not isinstance(h, PeriodicMap):
            raise ValidationError("pushout_product needs maps of periodic complexes")
    config_check(f.source, g.source)

    U, V = f.source, f.target
    W, X = g.source, g.target
    f_W = tensor_over_unit_maps(f, periodic_identity(W))
    U_g = tensor_over_unit_maps(periodic_identity(U), g)
    V_g = tensor_over_unit_maps(periodic_identity(V), g)
    f_X = tensor_over_unit_maps(f, periodic_identity(X))

    S = periodic_sum([f_W.target, U_g.target])
    alpha = S.inj[0] @ f_W + (S.inj[1] @ U_g).scale(-1)
    coker = complex_cokernel(alpha)
    Q = coker.complex

    beta = V_g @ S.proj[0] + f_X @ S.proj[1]
    T = beta.target
    components = [
        AdamsMap(Q.levels[n], T.levels[n], beta.components[n].entries * coker.lifts[n])
        for n in range(Q.period)
    ]
    corner_map = periodic_map(Q, T, components)

    legs = (
        PeriodicMap(V_g.source, Q, tuple(coker.proj.components[n] @ S.inj[0].components[n] for n in range(Q.period))),
        PeriodicMap(U_g.target, Q, tuple(coker.proj.components[n] @ S.inj[1].components[n] for n in range(Q.period))),
    )
    return PushoutProductProblem(f=f, g=g, corner=Q, corner_map=corner_map, legs=legs)


def pushout_square_p(problem):
    """The two legs of the corner agree on U⊗W."""
    f, g = problem.f, problem.g
    f_W = tensor_over_unit_maps(f, periodic_identity(g.source))
    U_g = tensor_over_unit_maps(periodic_identity(f.source), g)
    left, right = problem.legs
    return (left @ f_W) == (right @ U_g)


def corner_kernel(problem):
    """The degreewise kernel modules of f □ g on the window."""
    return [adams_kernel(h).module for h in problem.corner_map.components]


def pushout_product_report(problem, family=None):
    """Mono, quasi-iso and (given a family) relative cofibration verdicts."""
    quasi = quasi_iso_report(problem.corner_map)
    res = dict(
        corner=[str(M) for M in problem.corner.levels],
        target=[str(M) for M in problem.corner_map.target.levels],
        mono_p=is_injective_cofibration(problem.corner_map),
        kernel=[str(M) for M in corner_kernel(problem)],
        quasi_iso_p=quasi.verdict,
        failing_degrees=quasi.failing_degrees,
    )
    if family is not None:
        cof = check_cofibration(problem.corner_map, family)
        res.update(cofibration_p=cof.verdict, cofibration=cof, family=family.descriptor)
    return simple_obj(**res)


##
