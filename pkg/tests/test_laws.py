import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, optimize

from deformed_wigner import laws
from deformed_wigner.combinatorics import h_coefficient, path_counts
from deformed_wigner.laws import (
    DomainError,
    PoleError,
    energy_functional,
    law_moment,
    overlap_law,
    semicircle_density,
    threshold_m,
    transition_constants,
)

# Frozen with scipy: brentq on quad(semicircle, m, 2) - 0.25.
M_QUARTER = 0.8079455065990344

THETAS = [0.1, 0.3, 0.5, 0.7, 0.9]


def tail_quad(m):
    return integrate.quad(semicircle_density, m, 2, epsabs=1e-13, epsrel=1e-12)[0]


def energy_series(theta, c, terms=4000):
    """Oracle: termwise integration of sum theta^k U_k(cos phi) sin(phi)^2."""
    m = optimize.brentq(lambda t: tail_quad(t) - c, -2, 2, xtol=1e-15)
    phi = math.acos(m / 2)
    total = 0.5 * (phi - math.sin(2 * phi) / 2)
    for k in range(1, terms):
        total += theta**k * 0.5 * (math.sin(k * phi) / k - math.sin((k + 2) * phi) / (k + 2))
    return 2 / math.pi * total


def series_moment(k, theta):
    table = path_counts(k, k)
    return sum(h_coefficient(k, n, table) * theta**n for n in range(k + 1))


def test_semicircle_values():
    assert semicircle_density(0.0) == pytest.approx(1 / math.pi, abs=1e-15)
    assert semicircle_density(2.0) == 0.0
    assert semicircle_density(-2.0) == 0.0
    assert semicircle_density(3.0) == 0.0
    assert np.array_equal(semicircle_density(np.array([-5.0, 5.0])), [0.0, 0.0])


def test_semicircle_normalised():
    assert tail_quad(-2) == pytest.approx(1, abs=1e-10)
    assert laws.semicircle_expectation(lambda x: np.ones_like(x)) == pytest.approx(1, abs=1e-14)


def test_tail_mass_matches_quadrature():
    for m in np.linspace(-1.95, 1.95, 14):
        assert laws.semicircle_tail_mass(m) == pytest.approx(tail_quad(m), abs=1e-12)


@pytest.mark.parametrize("x", [-2.0, -0.3, 0.0, 1.0, 2.0])
def test_overlap_law_undeformed(x):
    assert overlap_law(x, 0.0) == 1.0


def test_overlap_law_values():
    assert overlap_law(0.0, 0.5) == pytest.approx(0.8, abs=1e-15)
    assert overlap_law(2.0, 0.5) == pytest.approx(4.0, abs=1e-15)


@pytest.mark.parametrize("theta", [0.5, 2.0])
def test_overlap_law_pole(theta):
    with pytest.raises(PoleError):
        overlap_law(theta + 1 / theta, theta)


def test_overlap_law_equivalent_forms():
    x = np.linspace(-2, 2, 41)
    for theta in THETAS:
        assert np.allclose(overlap_law(x, theta), 1 / (theta * (theta + 1 / theta - x)), rtol=1e-13)


@pytest.mark.parametrize("theta", THETAS)
def test_overlap_law_increasing(theta):
    x = np.linspace(-1.999, 1.999, 500)
    assert np.all(np.diff(overlap_law(x, theta)) > 0)


@pytest.mark.parametrize("theta", THETAS)
def test_chebyshev_generating_function(theta):
    # sum_k theta^k U_k(x/2) = p(x; theta); truncation error <= theta^(K+1) (K+2)/(1-theta)^2
    x = np.linspace(-2, 2, 81)
    K = 60
    u_prev, u_cur = np.zeros_like(x), np.ones_like(x)
    total = np.zeros_like(x)
    for k in range(K + 1):
        total += theta**k * u_cur
        u_prev, u_cur = u_cur, x * u_cur - u_prev
    bound = theta ** (K + 1) * (K + 2) / (1 - theta) ** 2 + 1e-12
    assert np.max(np.abs(total - overlap_law(x, theta))) <= bound


def test_transition_constants():
    tc = transition_constants(1.0)
    assert (tc.rho, tc.sigma2) == (2.0, 0.0)
    tc = transition_constants(2.0)
    assert tc.rho == 2.5 and tc.sigma2 == 0.75
    assert transition_constants(0.5).rho == 2.5
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            transition_constants(bad)


@given(st.floats(0.01, 100))
def test_rho_at_least_two(theta):
    tc = transition_constants(theta)
    assert tc.rho >= 2 - 1e-12
    if theta > 1:
        assert 0 <= tc.sigma2 < 1


def test_threshold_known_points():
    assert threshold_m(1.0) == -2.0
    assert threshold_m(0.5) == 0.0
    assert threshold_m(0.25) == pytest.approx(M_QUARTER, abs=1e-10)
    assert tail_quad(threshold_m(0.25)) == pytest.approx(0.25, abs=1e-10)


@settings(max_examples=40)
@given(st.floats(1e-6, 1.0))
def test_threshold_solves_equation(c):
    m = threshold_m(c)
    assert -2 <= m <= 2
    assert abs(laws.semicircle_tail_mass(m) - c) <= 1e-12


@pytest.mark.parametrize("c", [0.0, -0.5, 1.01, float("nan")])
def test_threshold_domain(c):
    with pytest.raises(DomainError):
        threshold_m(c)


@pytest.mark.parametrize("c", [0.1, 0.3, 0.77, 1.0])
def test_energy_at_zero_theta(c):
    assert energy_functional(0.0, c) == pytest.approx(c, abs=1e-10)


@pytest.mark.parametrize("theta", [0.0, 0.2, 0.5, 0.9, 0.99])
def test_energy_full_mass(theta):
    assert energy_functional(theta, 1.0) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("theta,c", [(0.5, 0.25), (0.5, 0.5), (0.5, 0.75), (0.9, 0.3), (0.2, 0.6)])
def test_energy_matches_series_oracle(theta, c):
    assert energy_functional(theta, c) == pytest.approx(energy_series(theta, c), abs=1e-10)


def test_energy_frozen_values():
    # trig-series oracle values
    assert energy_functional(0.5, 0.25) == pytest.approx(0.45300045827828495, abs=1e-10)
    assert energy_functional(0.5, 0.5) == pytest.approx(0.6938689194162814, abs=1e-10)
    assert energy_functional(0.5, 0.75) == pytest.approx(0.8675146593077664, abs=1e-10)


def test_energy_monotone_and_bounded():
    thetas = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9]
    cs = [0.1, 0.25, 0.5, 0.75, 0.9]
    grid = np.array([[energy_functional(t, c) for c in cs] for t in thetas])
    assert np.all(np.diff(grid, axis=0) > 0)
    assert np.all(np.diff(grid, axis=1) > 0)
    for i, t in enumerate(thetas):
        for j, c in enumerate(cs):
            if t == 0:
                assert grid[i, j] == pytest.approx(c, abs=1e-12)
            else:
                assert c < grid[i, j] < 1


@pytest.mark.parametrize("theta", [1.0, 1.5, -0.1])
def test_energy_domain(theta):
    with pytest.raises(DomainError):
        energy_functional(theta, 0.5)


def test_law_moment_low_orders():
    assert law_moment(0, 0.5) == pytest.approx(1, abs=1e-12)
    assert law_moment(1, 0.5) == pytest.approx(0.5, abs=1e-12)
    assert law_moment(2, 0.5) == pytest.approx(1.25, abs=1e-12)


def test_law_moment_semicircle_moments():
    catalans = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440, 9694845]
    for k in range(31):
        expected = 0 if k % 2 else catalans[k // 2]
        assert law_moment(k, 0.0, nodes=256) == pytest.approx(expected, abs=1e-10 * max(1, expected))


@pytest.mark.parametrize("theta", THETAS)
def test_law_moment_against_scipy(theta):
    for k in (0, 3, 7, 12):
        ref = integrate.quad(
            lambda x: x**k * semicircle_density(x) / (1 - theta * x + theta**2), -2, 2, epsabs=1e-13, limit=200
        )[0]
        assert law_moment(k, theta) == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("theta", THETAS)
def test_law_moment_bridge(theta):
    for k in range(17):
        assert abs(law_moment(k, theta) - series_moment(k, theta)) <= 1e-9


def test_law_moment_domain():
    with pytest.raises(DomainError):
        law_moment(2, 1.0)
    with pytest.raises(DomainError):
        law_moment(-1, 0.5)


def test_gauss_chebyshev_exact_for_polynomials():
    x, w = laws.gauss_chebyshev_u(8)
    assert w.sum() == pytest.approx(1, abs=1e-15)
    # exact up to degree 15
    assert np.dot(w, x**14) == pytest.approx(429, rel=1e-13)
