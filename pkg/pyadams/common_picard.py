"""
Certification of ⊗-inverse pairs of periodic complexes through their derived
tensor product, and recognition of the shifts ℙ𝓘[i].
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Tuple

from tqdm import tqdm

from pyadams.common_dict import simple_obj
from pyadams.common_errors import ValidationError
from pyadams.common_family import family_from_config
from pyadams.common_icecream import ic
from pyadams.common_monoid import unit_monoid, unit_shift
from pyadams.common_periodic import PeriodicComplex, config_check, periodic_homology
from pyadams.common_resolution import derived_tensor, homology_tables_isomorphic_p
from pyadams.common_scalar import weight_of_eigenvalue

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


##
@dataclass(frozen=True)
class PicardCertificate:
    verdict: str
    homology: Tuple[str, ...]
    unit_homology: Tuple[str, ...]
    shift: Optional[int]
    family: str
    flags: Tuple[str, ...] = field(default=())

    @property
    def certified_p(self):
        return self.verdict == CERTIFIED


def periodic_only(*objects):
    for X in objects:
        if not isinstance(X, PeriodicComplex):
            raise ValidationError(f"expected a periodic complex, got {type(X).__name__}")


def identify_shift(C, cfg):
    """
    The i with H_*(C) ≅ H_*(ℙ𝓘[i]), or None.

    H_*(ℙ𝓘[i]) is a single line: L_{-kw} in window degree n0 where
    i = n0 − kN. So C qualifies when exactly one window degree n0 carries
    homology, that homology is a line L_j, and w divides j.
    """
    periodic_only(C)
    config_check(C, cfg)
    return shift_of_homology(periodic_homology(C), cfg)


def shift_of_homology(homology, cfg):
    nonzero = [(n, H) for n, H in enumerate(homology) if not H.zero_p()]
    if len(nonzero) != 1:
        return None

    n0, H = nonzero[0]
    U = H.underlying
    if U.torsion or U.free_rank != 1:
        return None

    j = weight_of_eigenvalue(H.psi.entries[0, 0], cfg.p)
    if j is None:
        return None
    if cfg.twist_weight == 0:
        #: no twist on wrapping, so only L_0 occurs and the shift is n0 modulo N
        return n0 if j == 0 else None
    if j % cfg.twist_weight:
        return None
    k = -j // cfg.twist_weight
    return n0 - k * cfg.period


def certify_inverse_pair(C, D, cfg, family=None):
    """
    Compares H_*(C ⊗^L D) with H_*(ℙ𝓘) degree by degree.

    "certified" needs an exact isomorphism in every window degree and no
    truncation; a mismatch of untruncated homology is "refuted"; anything
    truncated is "inconclusive".
    """
    periodic_only(C, D)
    config_check(C, D, cfg)
    if family is None:
        family = family_from_config(cfg)

    res = derived_tensor(C, D, family, cfg.depth, cfg)
    unit_homology = list(enumerate(periodic_homology(unit_monoid(cfg))))
    iso_p = homology_tables_isomorphic_p(res.homology, unit_homology)

    if res.truncated_p:
        verdict = INCONCLUSIVE
    elif iso_p:
        verdict = CERTIFIED
    else:
        verdict = REFUTED

    shift = shift_of_homology([H for _, H in res.homology], cfg)
    ic(verdict, shift)
    return PicardCertificate(
        verdict=verdict,
        homology=tuple(str(H) for _, H in res.homology),
        unit_homology=tuple(str(H) for _, H in unit_homology),
        shift=shift,
        family=family.descriptor,
        flags=tuple(res.flags),
    )


##
def group_law_table(cfg, bound=3, *, progress=False):
    """
    For |i|, |j| ≤ bound: whether ℙ𝓘[i] ⊗^L ℙ𝓘[j] has the homology of
    ℙ𝓘[i+j], and whether (ℙ𝓘[i], ℙ𝓘[−i]) certifies. Jobs fan out to a
    thread pool with cfg.parallel; the rows keep the job order.
    """
    family = family_from_config(cfg)
    pairs = [(i, j) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)]

    def law(pair):
        i, j = pair
        res = derived_tensor(unit_shift(cfg, i), unit_shift(cfg, j), family, cfg.depth, cfg)
        expected = list(enumerate(periodic_homology(unit_shift(cfg, i + j))))
        return simple_obj(
            i=i,
            j=j,
            matches_p=homology_tables_isomorphic_p(res.homology, expected),
            flags=res.flags,
        )

    def inverse(i):
        cert = certify_inverse_pair(unit_shift(cfg, i), unit_shift(cfg, -i), cfg, family)
        return simple_obj(i=i, verdict=cert.verdict, shift=cert.shift)

    with tqdm(total=len(pairs) + 2 * bound + 1, disable=not progress, desc="group law") as bar:

        def tracked(fn):
            def run(arg):
                res = fn(arg)
                bar.update(1)
                return res

            return run

        if cfg.parallel:
            with ThreadPoolExecutor() as executor:
                laws = list(executor.map(tracked(law), pairs))
                inverses = list(executor.map(tracked(inverse), range(-bound, bound + 1)))
        else:
            laws = [tracked(law)(pair) for pair in pairs]
            inverses = [tracked(inverse)(i) for i in range(-bound, bound + 1)]

    return simple_obj(
        config=cfg.describe(),
        family=family.descriptor,
        laws=laws,
        inverses=inverses,
        holds_p=all(row.matches_p for row in laws) and all(row.verdict == CERTIFIED for row in inverses),
    )


##
