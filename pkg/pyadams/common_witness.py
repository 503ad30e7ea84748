"""
Three reproducible witnesses separating the homotopy notions:

- (a) a quasi-isomorphism that is not a relative equivalence;
- (b) a pushout-product of injective cofibrations that is not a monomorphism;
- (c) periodification preserving a nontrivial quasi-isomorphism.
"""
from concurrent.futures import ThreadPoolExecutor

from pyadams.common_adams import cyclic_adams, unit
from pyadams.common_complex import bounded_complex, chain_map, concentrated
from pyadams.common_dict import simple_obj
from pyadams.common_errors import WitnessFailure
from pyadams.common_family import family_from_config
from pyadams.common_homotopy import (
    is_injective_cofibration,
    is_quasi_iso,
    is_relative_equivalence,
)
from pyadams.common_icecream import ic
from pyadams.common_monoid import unit_monoid
from pyadams.common_periodic import (
    periodic_identity,
    periodic_zero,
    periodic_zero_map,
    periodify,
    periodify_map,
)
from pyadams.common_pushout import corner_kernel, pushout_product


##
def cyclic_resolution(p):
    """[L_0 --p--> L_0] in degrees 1 and 0."""
    L = unit(p)
    return bounded_complex(p, {1: L, 0: L}, {1: [[p]]})


def quotient_map(p):
    """q: [L_0 --p--> L_0] → (Z/p, psi=1) in degree 0."""
    X = cyclic_resolution(p)
    Y = concentrated(cyclic_adams(p, 1), 0)
    return chain_map(X, Y, {0: [[1]]})


def multiplication_by_p(cfg):
    """p·: ℙ𝓘 → ℙ𝓘."""
    P = unit_monoid(cfg)
    return periodic_identity(P).scale(cfg.p)


##
def witness_quasi_not_relative(cfg):
    family = family_from_config(cfg)
    q = quotient_map(cfg.p)
    quasi_p = is_quasi_iso(q)
    rel = is_relative_equivalence(q, family)
    failing = [m.name for m in rel.members if not m.quasi_iso_p]
    return simple_obj(
        name="quasi-iso that is not a relative equivalence",
        map="q: [L_0 --p--> L_0] -> (Z/p, psi=1)(0)",
        quasi_iso_p=quasi_p,
        relative_equivalence_p=rel.verdict,
        failing_members=failing,
        family=rel.family,
        reproduced_p=quasi_p and not rel.verdict,
    )


def witness_pushout_product(cfg):
    f = multiplication_by_p(cfg)
    X = periodify(concentrated(cyclic_adams(cfg.p, 1), 0), cfg.period, cfg.twist_weight)
    g = periodic_zero_map(periodic_zero(*cfg.config), X)
    problem = pushout_product(f, g)

    mono_p = is_injective_cofibration(problem.corner_map)
    kernel = [str(K) for K in corner_kernel(problem)]
    return simple_obj(
        name="injective pushout-product failure",
        f="p: PI -> PI (a monomorphism standing in for I ⊗ Q, which is not finitely generated)",
        g="0 -> P(Z/p, psi=1)",
        f_mono_p=is_injective_cofibration(f),
        g_mono_p=is_injective_cofibration(g),
        corner_map_zero_p=problem.corner_map.zero_p(),
        corner_mono_p=mono_p,
        kernel=kernel,
        reproduced_p=problem.corner_map.zero_p() and not mono_p,
    )


def witness_periodify_quasi_iso(cfg):
    q = quotient_map(cfg.p)
    Pq = periodify_map(q, cfg.period, cfg.twist_weight)
    quasi_p = is_quasi_iso(Pq)
    return simple_obj(
        name="periodification preserves a quasi-iso",
        map="P(q)",
        quasi_iso_p=quasi_p,
        reproduced_p=is_quasi_iso(q) and quasi_p,
    )


WITNESSES = (
    ("a", witness_quasi_not_relative),
    ("b", witness_pushout_product),
    ("c", witness_periodify_quasi_iso),
)


def witness_suite(cfg):
    """
    Runs the witnesses (in parallel with cfg.parallel) and returns their
    reports in fixed order. Raises WitnessFailure when one does not
    reproduce.
    """
    if cfg.parallel:
        with ThreadPoolExecutor() as executor:
            reports = list(executor.map(lambda item: item[1](cfg), WITNESSES))
    else:
        reports = [fn(cfg) for _, fn in WITNESSES]

    res = dict(zip([key for key, _ in WITNESSES], reports))
    for key, report in res.items():
        ic(key, report.reproduced_p)
        if not report.reproduced_p:
            raise WitnessFailure(f"witness ({key}) did not reproduce: {report.name}")

    return simple_obj(config=cfg.describe(), witnesses=simple_obj(**res))


##
