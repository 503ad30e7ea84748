from dataclasses import dataclass, replace
from typing import Optional, Tuple

from pyadams.common_errors import ConfigError
from pyadams.common_scalar import prime_check


##
@dataclass(frozen=True)
class SessionConfig:
    """
    Everything a computation depends on besides its inputs.

    `period` and `twist_weight` default to 2p − 2. `window` is the weight
    interval of the detection family (inclusive); `max_rank` 1 means lines
    only.
    """

    p: int = 3
    period: Optional[int] = None
    twist_weight: Optional[int] = None
    window: Tuple[int, int] = (-1, 1)
    max_rank: int = 2
    depth: int = 4
    family_kind: str = "default"
    parallel: bool = False

    def __post_init__(self):
        prime_check(self.p)
        if self.period is None:
            object.__setattr__(self, "period", 2 * self.p - 2)
        if self.twist_weight is None:
            object.__setattr__(self, "twist_weight", 2 * self.p - 2)
        object.__setattr__(self, "window", tuple(self.window))

        if self.period < 1:
            raise ConfigError(f"period must be at least 1, got {self.period}")
        if self.depth < 1:
            raise ConfigError(f"depth must be at least 1, got {self.depth}")
        if self.max_rank < 1:
            raise ConfigError(f"max_rank must be at least 1, got {self.max_rank}")
        lo, hi = self.window
        if lo > hi:
            raise ConfigError(f"empty window {lo}:{hi}")
        if self.family_kind not in ("default", "lines"):
            raise ConfigError(f"unknown family kind {self.family_kind!r}")

    @property
    def config(self):
        """(p, N, w), comparable with PeriodicComplex.config."""
        return (self.p, self.period, self.twist_weight)

    def describe(self):
        lo, hi = self.window
        return (
            f"p={self.p} N={self.period} w={self.twist_weight} "
            f"window={lo}:{hi} max_rank={self.max_rank} depth={self.depth} family={self.family_kind}"
        )


def config_update(cfg, **kwargs):
    return replace(cfg, **kwargs)


def window_parse(text):
    """'LO:HI' → (LO, HI)"""
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"malformed window {text!r} (expected LO:HI)")


##
