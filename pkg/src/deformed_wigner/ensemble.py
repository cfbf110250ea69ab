"""Wigner matrices, uniform sphere vectors and rank-one deformed samples.

Every random draw is tied to a ``(master_seed, trial_index)`` pair: the
per-trial generator is built from a :class:`numpy.random.SeedSequence`
keyed on both integers, so trials are independent of each other and of
the order in which they are evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "EntryDist",
    "EnsembleConfig",
    "DeformedSample",
    "trial_rng",
    "sample_wigner",
    "sample_sphere",
    "deform",
    "sample_deformed",
]

# Stream tags keep the matrix and the signal vector on disjoint streams.
_WIGNER_STREAM = 0
_SPHERE_STREAM = 1


class EntryDist(str, Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


@dataclass(frozen=True)
class EnsembleConfig:
    """Parameters of the deformed ensemble ``B = A + theta * u u^T``.

    Parameters
    ----------
    n : int
        Matrix dimension, at least 2.
    theta : float
        Non-negative signal strength.
    entry_dist : EntryDist or str
        Law of the unscaled Wigner entries.
    master_seed : int
        Unsigned 64-bit seed from which every trial stream is derived.
    """

    n: int
    theta: float = 0.0
    entry_dist: EntryDist = EntryDist.GAUSSIAN
    master_seed: int = 0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        theta = float(self.theta)
        if not np.isfinite(theta) or theta < 0:
            raise ValueError(f"theta must be finite and >= 0, got {self.theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "entry_dist", EntryDist(self.entry_dist))
        seed = int(self.master_seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"master_seed must fit in 64 unsigned bits, got {seed}")
        object.__setattr__(self, "master_seed", seed)


@dataclass(frozen=True)
class DeformedSample:
    b: np.ndarray
    u: np.ndarray
    trial_index: int


def trial_rng(master_seed: int, trial_index: int, stream: int = 0) -> np.random.Generator:
    """Generator for one trial; a pure function of its three integer keys."""
    if trial_index < 0:
        raise ValueError("trial_index must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([master_seed, trial_index, stream]))


def _entries(rng: np.random.Generator, dist: EntryDist, size) -> np.ndarray:
    if dist is EntryDist.GAUSSIAN:
        return rng.standard_normal(size)
    return rng.choice(np.array([-1.0, 1.0]), size=size)


def sample_wigner(config: EnsembleConfig, trial_index: int) -> np.ndarray:
    """Draw ``A = W / sqrt(N)`` for one trial.

    Off-diagonal entries (i < j) and diagonal entries are independent with
    mean 0 and variance 1/N; the lower triangle mirrors the upper one, so
    the result is exactly symmetric.
    """
    n = config.n
    rng = trial_rng(config.master_seed, trial_index, _WIGNER_STREAM)
    iu = np.triu_indices(n)
    a = np.zeros((n, n))
    a[iu] = _entries(rng, config.entry_dist, iu[0].size) / np.sqrt(n)
    a = a + np.triu(a, 1).T
    return a


def sample_sphere(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Uniform point(s) on the unit sphere in R^n.

    A normalised vector of i.i.d. standard normals. With ``size`` given,
    returns a ``(size, n)`` array of independent rows.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    shape = (n,) if size is None else (size, n)
    g = rng.standard_normal(shape)
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def deform(a: np.ndarray, u: np.ndarray, theta: float) -> np.ndarray:
    """Return ``a + theta * u u^T``; symmetric whenever ``a`` is."""
    return a + theta * np.outer(u, u)


def sample_deformed(config: EnsembleConfig, trial_index: int) -> DeformedSample:
    a = sample_wigner(config, trial_index)
    u = sample_sphere(config.n, trial_rng(config.master_seed, trial_index, _SPHERE_STREAM))
    return DeformedSample(b=deform(a, u, config.theta), u=u, trial_index=trial_index)
