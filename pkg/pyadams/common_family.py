"""
Detection families: finite lists of dualisable Adams modules through which
relative epimorphisms, equivalences and resolutions are tested.
"""
from dataclasses import dataclass, field
from typing import Tuple

from pyadams.common_adams import AdamsModule, adams_module, line
from pyadams.common_errors import ConfigError
from pyadams.common_module import FgModule
from pyadams.common_scalar import prime_check, twist_scalar


##
@dataclass(frozen=True)
class DetectionFamily:
    p: int
    window: Tuple[int, int]
    max_rank: int
    members: Tuple[Tuple[str, AdamsModule], ...] = field(repr=False)
    kind: str = "default"

    @property
    def descriptor(self):
        """A deterministic one-line description echoed in every report."""
        names = ", ".join(name for name, _ in self.members)
        lo, hi = self.window
        return f"{self.kind}[{lo}..{hi}] max_rank={self.max_rank}: {names}"

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def extension_module(p, a, b):
    """The non-split extension Ψ = [[g^{a(p-1)}, 1], [0, g^{b(p-1)}]] of L_a by L_b."""
    return adams_module(
        FgModule(p, 2),
        [[twist_scalar(p, a), 1], [0, twist_scalar(p, b)]],
    )


def detection_family(p, window=(-1, 1), max_rank=2, kind="default"):
    """
    The lines L_j for j in the window, nearest to weight 0 first (L_0, L_-1,
    L_1, ...), followed (when max_rank ≥ 2 and kind is
    "default") by the extensions E(a, b) for a ≠ b in the window.
    """
    prime_check(p)
    lo, hi = window
    if lo > hi:
        raise ConfigError(f"empty window: {lo}:{hi}")
    if max_rank < 1:
        raise ConfigError(f"max_rank must be at least 1, got {max_rank}")
    if kind not in ("default", "lines"):
        raise ConfigError(f"unknown family kind: {kind!r}")

    weights = sorted(range(lo, hi + 1), key=lambda j: (abs(j), j))
    members = [(f"L_{j}", line(p, j)) for j in weights]
    if kind == "default" and max_rank >= 2:
        members.extend(
            (f"E({a},{b})", extension_module(p, a, b))
            for a in weights
            for b in weights
            if a != b
        )

    return DetectionFamily(
        p=p,
        window=(lo, hi),
        max_rank=max_rank,
        members=tuple(members),
        kind=kind,
    )


def family_from_config(cfg):
    return detection_family(
        cfg.p,
        window=cfg.window,
        max_rank=cfg.max_rank,
        kind=cfg.family_kind,
    )


def family_reordered(family):
    """The same members in reverse order."""
    return DetectionFamily(
        p=family.p,
        window=family.window,
        max_rank=family.max_rank,
        members=tuple(reversed(family.members)),
        kind=f"{family.kind}-reversed",
    )


def family_widened(family, by=None):
    """
    The family on a larger window: grown by `by` on each side, or doubled
    when `by` is None.
    """
    lo, hi = family.window
    if by is None:
        lo, hi = min(2 * lo, lo - 1), max(2 * hi, hi + 1)
    else:
        lo, hi = lo - by, hi + by

    kind = family.kind.removesuffix("-reversed")
    return detection_family(family.p, window=(lo, hi), max_rank=family.max_rank, kind=kind)


##
