"""Limiting laws of the rank-one deformed Wigner ensemble.

The semicircle density, the eigenvector overlap profile

    p(x; theta) = 1 / (1 - theta*x + theta**2),

the location/overlap constants of the top eigenvalue above the
transition, and the energy functional ``P(theta; c)`` that measures how
much of the signal lies in the top ``c`` fraction of eigenvectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "DomainError",
    "PoleError",
    "TransitionConstants",
    "semicircle_density",
    "semicircle_tail_mass",
    "overlap_law",
    "transition_constants",
    "threshold_m",
    "energy_functional",
    "law_moment",
    "semicircle_expectation",
    "gauss_chebyshev_u",
]

DEFAULT_NODES = 256
_MAX_NODES = 1 << 20


class DomainError(ValueError):
    """Argument outside the domain where a law is defined."""


class PoleError(DomainError):
    """Evaluation at the pole ``x = theta + 1/theta`` of the overlap law."""


@dataclass(frozen=True)
class TransitionConstants:
    rho: float
    sigma2: float


def semicircle_density(x):
    """``sqrt(4 - x^2) / (2 pi)`` on [-2, 2], zero elsewhere."""
    x = np.asarray(x, dtype=float)
    out = np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2 * np.pi)
    return out if out.ndim else float(out)


def semicircle_tail_mass(m):
    """Semicircle mass of ``[m, 2]``, from the closed antiderivative."""
    m = np.clip(np.asarray(m, dtype=float), -2.0, 2.0)
    out = 0.5 - m * np.sqrt(4.0 - m * m) / (4 * np.pi) - np.arcsin(m / 2) / np.pi
    return out if out.ndim else float(out)


def overlap_law(x, theta: float):
    """Limit of ``N E[<v(x), u>^2]`` for an eigenvector at eigenvalue ``x``.

    Written as ``1 / (1 - theta x + theta^2)`` so that ``theta = 0`` is
    regular. Raises :class:`PoleError` at ``x = theta + 1/theta``.
    """
    x = np.asarray(x, dtype=float)
    denom = 1.0 - theta * x + theta * theta
    if np.any(denom == 0):
        raise PoleError(f"overlap law has a pole at x = {theta + 1 / theta!r} for theta = {theta!r}")
    out = 1.0 / denom
    return out if out.ndim else float(out)


def transition_constants(theta: float) -> TransitionConstants:
    """Top-eigenvalue limit ``rho = theta + 1/theta`` and limiting
    top-eigenvector overlap ``sigma2 = 1 - 1/theta^2`` (meaningful for
    ``theta > 1``)."""
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta!r}")
    return TransitionConstants(rho=theta + 1.0 / theta, sigma2=1.0 - 1.0 / theta**2)


def threshold_m(c: float, tol: float = 1e-12) -> float:
    """Solve ``c = mu_sc([m, 2])`` for ``m`` by bisection."""
    if not 0 < c <= 1:
        raise DomainError(f"c must lie in (0, 1], got {c!r}")
    lo, hi = -2.0, 2.0
    if abs(semicircle_tail_mass(lo) - c) <= tol:
        return lo
    # tail mass decreases in m
    while True:
        mid = 0.5 * (lo + hi)
        f = semicircle_tail_mass(mid)
        if abs(f - c) <= tol or mid in (lo, hi):
            return mid
        if f > c:
            lo = mid
        else:
            hi = mid


@lru_cache(maxsize=32)
def gauss_chebyshev_u(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on [-2, 2] and weights for integrals against the semicircle.

    Gauss-Chebyshev rule of the second kind, rescaled so that
    ``sum(w * g(x)) == integral of g d(mu_sc)`` for polynomials ``g`` of
    degree below ``2 * nodes``.
    """
    j = np.arange(1, nodes + 1)
    angle = j * np.pi / (nodes + 1)
    x = 2.0 * np.cos(angle)
    w = 2.0 / (nodes + 1) * np.sin(angle) ** 2
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _refine(estimate, start: int, tol: float) -> float:
    n = start
    prev = estimate(n)
    while n < _MAX_NODES:
        n *= 2
        cur = estimate(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise RuntimeError("quadrature did not converge")


def semicircle_expectation(g, nodes: int | None = None, tol: float = 1e-13) -> float:
    """``integral g d(mu_sc)`` for a vectorised callable ``g``.

    With ``nodes=None`` the rule starts at 256 points and doubles until two
    consecutive estimates agree to ``tol``.
    """

    def estimate(n):
        x, w = gauss_chebyshev_u(n)
        return float(np.dot(w, g(x)))

    if nodes is not None:
        return estimate(nodes)
    return _refine(estimate, DEFAULT_NODES, tol)


def _check_pre_transition(theta: float) -> None:
    if not 0 <= theta < 1:
        raise DomainError(f"theta must lie in [0, 1), got {theta!r}")


def law_moment(k: int, theta: float, nodes: int | None = None) -> float:
    """``integral x^k p(x; theta) d(mu_sc)`` for ``0 <= theta < 1``."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    _check_pre_transition(theta)
    return semicircle_expectation(lambda x: x**k * overlap_law(x, theta), nodes)


def energy_functional(theta: float, c: float, tol: float = 1e-13) -> float:
    """``P(theta; c) = integral over [m(c), 2] of p(x; theta) d(mu_sc)``.

    Computed in the angle variable ``x = 2 cos(phi)``, where
    ``d(mu_sc) = (2/pi) sin(phi)^2 d(phi)`` and the integrand is smooth on
    ``[0, arccos(m/2)]``; Gauss-Legendre nodes are doubled until
    consecutive estimates agree to ``tol``.
    """
    _check_pre_transition(theta)
    if not 0 < c <= 1:
        raise DomainError(f"c must lie in (0, 1], got {c!r}")
    if theta == 0:
        return float(c)
    upper = float(np.arccos(threshold_m(c) / 2))

    def estimate(n):
        t, w = np.polynomial.legendre.leggauss(n)
        phi = 0.5 * upper * (t + 1.0)
        f = np.sin(phi) ** 2 / (1.0 - 2.0 * theta * np.cos(phi) + theta * theta)
        return float(upper / np.pi * np.dot(w, f))

    return _refine(estimate, 64, tol)
