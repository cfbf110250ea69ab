"""Seeded, parallel Monte Carlo experiments over the deformed ensemble.

Each trial is a pure function of ``(config, trial_index)``. Workers only
compute per-trial partial results; the merge runs sequentially in
trial-index order, so the output does not depend on the worker count.
BLAS is pinned to one thread per trial for the same reason.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np
from threadpoolctl import threadpool_limits

from . import combinatorics, laws, spectral
from .ensemble import EnsembleConfig, sample_deformed

__all__ = [
    "THREADS_ENV",
    "PARSEVAL_TOL",
    "TrialError",
    "ExperimentSpec",
    "OverlapProfile",
    "QuadraticFormRow",
    "EnergyRow",
    "TransitionReport",
    "resolve_workers",
    "run_trials",
    "run_overlap_experiment",
    "run_overlap_scatter",
    "run_quadratic_form_experiment",
    "run_energy_experiment",
    "run_transition_experiment",
    "series_reference",
]

THREADS_ENV = "WIGNER_THREADS"
PARSEVAL_TOL = 1e-10

T = TypeVar("T")


class TrialError(RuntimeError):
    """A single trial failed; carries its index."""

    def __init__(self, trial_index: int, message: str):
        super().__init__(f"trial {trial_index}: {message}")
        self.trial_index = trial_index


@dataclass(frozen=True)
class ExperimentSpec:
    config: EnsembleConfig
    trials: int = 500
    bins: int = 40
    bin_range: tuple[float, float] = (-2.2, 2.2)
    c_grid: tuple[float, ...] = (0.25, 0.5, 0.75)
    k_list: tuple[int, ...] = (1, 2, 3, 4)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bins < 4:
            raise ValueError("bins must be >= 4")
        lo, hi = (float(v) for v in self.bin_range)
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"invalid bin_range {self.bin_range!r}")
        object.__setattr__(self, "bin_range", (lo, hi))
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        for c in self.c_grid:
            if not 0 < c <= 1:
                raise ValueError(f"c values must lie in (0, 1], got {c}")
        for k in self.k_list:
            if k < 0:
                raise ValueError(f"k values must be >= 0, got {k}")


@dataclass
class OverlapProfile:
    """Binned means of ``N <v, u>^2`` against eigenvalue location.

    Eigenvalues outside ``bin_range`` are tallied in ``underflow`` and
    ``overflow`` instead of a bin.
    """

    theta: float
    edges: np.ndarray
    count: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    underflow: int = 0
    overflow: int = 0

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def law(self) -> np.ndarray:
        return laws.overlap_law(self.centers, self.theta)

    @property
    def total(self) -> int:
        return int(self.count.sum()) + self.underflow + self.overflow


@dataclass(frozen=True)
class QuadraticFormRow:
    k: int
    mean: float
    variance: float
    reference: float


@dataclass(frozen=True)
class EnergyRow:
    c: float
    mean: float
    std: float
    reference: float


@dataclass(frozen=True)
class TransitionReport:
    theta: float
    trials: int
    mean_lambda1: float
    std_lambda1: float
    mean_overlap1: float
    reference_lambda1: float
    reference_overlap1: float


def resolve_workers(workers: int | None = None) -> int:
    """Explicit count, else ``$WIGNER_THREADS``, else the CPU count."""
    if workers is None:
        env = os.environ.get(THREADS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def run_trials(fn: Callable[[int], T], trials: int, workers: int | None = None) -> list[T]:
    """Evaluate ``fn(t)`` for ``t in range(trials)``; results in index order."""
    workers = resolve_workers(workers)
    with threadpool_limits(limits=1):
        if workers == 1 or trials == 1:
            return [fn(t) for t in range(trials)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(trials)))


def _decompose(config: EnsembleConfig, t: int):
    sample = sample_deformed(config, t)
    try:
        dec = spectral.eig_symmetric(sample.b)
    except np.linalg.LinAlgError as exc:
        raise TrialError(t, f"eigensolver failed: {exc}") from exc
    ov = spectral.overlaps(dec, sample.u)
    total = float(ov.s.sum())
    if abs(total - 1.0) > PARSEVAL_TOL:
        raise TrialError(t, f"overlaps sum to {total!r}, expected 1")
    return sample, dec, ov


def run_overlap_experiment(spec: ExperimentSpec, workers: int | None = None) -> OverlapProfile:
    n = spec.config.n
    lo, hi = spec.bin_range
    edges = np.linspace(lo, hi, spec.bins + 1)

    def trial(t):
        _, _, ov = _decompose(spec.config, t)
        values = ov.scaled()
        # slot 0 is underflow, slot bins+1 is overflow
        idx = np.searchsorted(edges, ov.eigenvalues, side="right")
        idx[ov.eigenvalues == hi] = spec.bins
        cnt = np.bincount(idx, minlength=spec.bins + 2)
        s1 = np.bincount(idx, weights=values, minlength=spec.bins + 2)
        s2 = np.bincount(idx, weights=values * values, minlength=spec.bins + 2)
        return cnt, s1, s2

    count = np.zeros(spec.bins + 2, dtype=np.int64)
    s1 = np.zeros(spec.bins + 2)
    s2 = np.zeros(spec.bins + 2)
    for cnt, a, b in run_trials(trial, spec.trials, workers):
        count += cnt
        s1 += a
        s2 += b

    inner = slice(1, spec.bins + 1)
    c, m1, m2 = count[inner], s1[inner], s2[inner]
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = np.where(c > 0, m1 / np.maximum(c, 1), np.nan)
        var = np.where(c > 1, (m2 - c * mean * mean) / np.maximum(c - 1, 1), np.nan)
        stderr = np.sqrt(np.clip(var, 0.0, None)) / np.sqrt(np.maximum(c, 1))
    stderr = np.where(c > 1, stderr, np.nan)
    profile = OverlapProfile(
        theta=spec.config.theta,
        edges=edges,
        count=c.copy(),
        mean=mean,
        stderr=stderr,
        underflow=int(count[0]),
        overflow=int(count[-1]),
    )
    assert profile.total == spec.trials * n
    return profile


def run_overlap_scatter(config: EnsembleConfig, trial_index: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and ``N <v_i, u>^2`` of a single trial."""
    with threadpool_limits(limits=1):
        _, _, ov = _decompose(config, trial_index)
    return ov.eigenvalues.copy(), ov.scaled()


def series_reference(k: int, theta: float) -> float:
    """Limit of ``u^T B^k u``: ``sum_n H(k, n) theta^n``."""
    table = combinatorics.path_counts(k // 2 + 1, k)
    return float(sum(combinatorics.h_coefficient(k, n, table) * theta**n for n in range(k + 1)))


def _mean_var(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    var = float(arr.var(ddof=1)) if arr.size > 1 else 0.0
    return float(arr.mean()), var


def run_quadratic_form_experiment(spec: ExperimentSpec, workers: int | None = None) -> list[QuadraticFormRow]:
    if not spec.k_list:
        raise ValueError("k_list must be non-empty")

    def trial(t):
        sample = sample_deformed(spec.config, t)
        return [spectral.quadratic_form(sample.b, sample.u, k) for k in spec.k_list]

    per_trial = np.array(run_trials(trial, spec.trials, workers))
    rows = []
    for j, k in enumerate(spec.k_list):
        mean, var = _mean_var(per_trial[:, j])
        rows.append(QuadraticFormRow(k, mean, var, series_reference(k, spec.config.theta)))
    return rows


def run_energy_experiment(spec: ExperimentSpec, workers: int | None = None) -> list[EnergyRow]:
    if not spec.c_grid:
        raise ValueError("c_grid must be non-empty")
    theta = spec.config.theta
    if theta >= 1:
        raise laws.DomainError(f"energy experiment needs theta < 1, got {theta}")

    def trial(t):
        _, _, ov = _decompose(spec.config, t)
        return [spectral.energy_sum(ov, c) for c in spec.c_grid]

    per_trial = np.array(run_trials(trial, spec.trials, workers))
    rows = []
    for j, c in enumerate(spec.c_grid):
        mean, var = _mean_var(per_trial[:, j])
        rows.append(EnergyRow(c, mean, float(np.sqrt(var)), laws.energy_functional(theta, c)))
    return rows


def run_transition_experiment(spec: ExperimentSpec, workers: int | None = None) -> TransitionReport:
    if spec.trials < 10:
        raise ValueError("transition experiment needs at least 10 trials")
    theta = spec.config.theta

    def trial(t):
        _, dec, ov = _decompose(spec.config, t)
        return dec.eigenvalues[0], ov.s[0]

    data = np.array(run_trials(trial, spec.trials, workers))
    mean_l, var_l = _mean_var(data[:, 0])
    if theta > 1:
        tc = laws.transition_constants(theta)
        ref_l, ref_o = tc.rho, tc.sigma2
    else:
        ref_l, ref_o = 2.0, 0.0
    return TransitionReport(
        theta=theta,
        trials=spec.trials,
        mean_lambda1=mean_l,
        std_lambda1=float(np.sqrt(var_l)),
        mean_overlap1=float(data[:, 1].mean()),
        reference_lambda1=ref_l,
        reference_overlap1=ref_o,
    )
