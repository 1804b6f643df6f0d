"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .measure import Ordering
from .tonality import KS_MAX, KS_MIN

ALGORITHMS = ("pse", "ps13b")


@dataclass(frozen=True)
class SpellerConfig:
    """Knobs for a spelling run.

    ks_min..ks_max bound the key signatures considered; margin widens the
    set of global key candidates kept after the first pass; ordering picks
    how refined weights compare; algorithm selects the exhaustive search
    (pse) or the deterministic variant (ps13b).
    """

    ks_min: int = KS_MIN
    ks_max: int = KS_MAX
    margin: float = 0.2
    ordering: Ordering = Ordering.SUM
    algorithm: str = "pse"

    def __post_init__(self) -> None:
        if not KS_MIN <= self.ks_min <= self.ks_max <= KS_MAX:
            raise ValueError(
                f"signature range {self.ks_min}..{self.ks_max} "
                f"must lie within {KS_MIN}..{KS_MAX}"
            )
        if self.margin < 0:
            raise ValueError(f"margin must not be negative: {self.margin}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


def parse_ks_range(text: str) -> tuple[int, int]:
    """Parse 'lo..hi' into a signature range."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"signature range must look like -7..7, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"signature range must use integers, got {text!r}") from None
