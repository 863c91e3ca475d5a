"""Reproducible inverse-transform sampling.

Uniform draws come from numpy's PCG64 (a frozen, documented 64-bit
generator, so identical seeds give identical samples on every platform)
and are mapped through the closed-form quantile.
"""

from dataclasses import dataclass, field

import numpy as np

from .distributions import HewParams, hew_quantile


@dataclass(frozen=True)
class Sample:
    """Ascending batch of positive observations plus provenance."""

    values: np.ndarray
    seed: int | None = None
    source: str = "simulated"  # or "file"

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("sample needs at least 2 values")
        if np.any(v <= 0):
            raise ValueError("sample values must be strictly positive")
        if np.any(np.diff(v) < 0):
            v = np.sort(v)
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return int(self.values.size)


def sample_hew(p: HewParams, n: int, seed: int) -> Sample:
    """n sorted HEW draws; bit-identical for identical (p, n, seed)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(n)
    # keep u strictly inside (0,1); rng.random() can return 0.0
    u = np.clip(u, 1e-16, 1.0 - 1e-16)
    x = hew_quantile(p, u)
    return Sample(values=np.sort(x), seed=int(seed), source="simulated")
