import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformed_wigner import spectral
from deformed_wigner.ensemble import EnsembleConfig, sample_deformed, sample_sphere
from deformed_wigner.spectral import eig_symmetric, energy_sum, overlaps, quadratic_form


def random_symmetric(n, seed):
    g = np.random.default_rng(seed).standard_normal((n, n))
    return (g + g.T) / 2


def test_diagonal_matrix():
    dec = eig_symmetric(np.diag([3.0, 1.0, 2.0]))
    assert np.array_equal(dec.eigenvalues, [3.0, 2.0, 1.0])
    assert np.array_equal(dec.eigenvectors, np.eye(3)[:, [0, 2, 1]])


def test_rank_one_matrix():
    u = sample_sphere(8, np.random.default_rng(1))
    dec = eig_symmetric(0.7 * np.outer(u, u))
    assert dec.eigenvalues[0] == pytest.approx(0.7, abs=1e-14)
    assert np.allclose(dec.eigenvalues[1:], 0, atol=1e-14)
    assert abs(abs(dec.eigenvectors[:, 0] @ u) - 1) < 1e-13


def test_reconstruction_and_orthonormality():
    b = random_symmetric(50, 3)
    dec = eig_symmetric(b)
    v, lam = dec.eigenvectors, dec.eigenvalues
    assert np.linalg.norm(b - v @ np.diag(lam) @ v.T) / np.linalg.norm(b) <= 1e-12
    assert np.max(np.abs(v.T @ v - np.eye(50))) <= 1e-10
    assert np.all(np.diff(lam) <= 0)
    assert lam.sum() == pytest.approx(np.trace(b), rel=1e-9, abs=1e-12)


def test_sign_convention():
    dec = eig_symmetric(random_symmetric(20, 4))
    v = dec.eigenvectors
    idx = np.argmax(np.abs(v), axis=0)
    assert np.all(v[idx, np.arange(20)] > 0)


def test_decomposition_is_deterministic():
    b = random_symmetric(30, 5)
    d1, d2 = eig_symmetric(b), eig_symmetric(b.copy())
    assert d1.eigenvalues.tobytes() == d2.eigenvalues.tobytes()
    assert d1.eigenvectors.tobytes() == d2.eigenvectors.tobytes()


@pytest.mark.parametrize(
    "bad",
    [np.array([[1.0, 2.0], [0.0, 1.0]]), np.array([[np.nan, 0], [0, 1.0]]), np.ones((2, 3)), np.ones(3)],
)
def test_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        eig_symmetric(bad)


def test_overlap_with_eigenvector():
    dec = eig_symmetric(random_symmetric(10, 6))
    s = overlaps(dec, dec.eigenvectors[:, 0]).s
    assert s[0] == pytest.approx(1, abs=1e-14)
    assert np.allclose(s[1:], 0, atol=1e-14)


def test_overlap_orthogonal_to_top():
    dec = eig_symmetric(random_symmetric(10, 7))
    u = dec.eigenvectors[:, 3] + dec.eigenvectors[:, 5]
    u /= np.linalg.norm(u)
    assert overlaps(dec, u).s[0] == pytest.approx(0, abs=1e-14)


def test_overlap_dimension_mismatch():
    dec = eig_symmetric(random_symmetric(4, 0))
    with pytest.raises(ValueError):
        overlaps(dec, np.ones(5) / np.sqrt(5))


def test_overlaps_increase_toward_edge():
    # one N=200, theta=0.7 sample: eigenvectors near the top edge align better
    s = sample_deformed(EnsembleConfig(n=200, theta=0.7, master_seed=1), 0)
    ov = overlaps(eig_symmetric(s.b), s.u)
    top = ov.scaled()[ov.eigenvalues > 1.0].mean()
    bottom = ov.scaled()[ov.eigenvalues < -1.0].mean()
    assert top > 2 * bottom


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 40), seed=st.integers(0, 2**32 - 1), theta=st.floats(0, 3))
def test_parseval_and_moments(n, seed, theta):
    s = sample_deformed(EnsembleConfig(n=n, theta=theta, master_seed=seed), 0)
    ov = overlaps(eig_symmetric(s.b), s.u)
    assert np.all((ov.s >= 0) & (ov.s <= 1 + 1e-12))
    assert ov.s.sum() == pytest.approx(1, abs=1e-10)
    for k in range(11):
        direct = quadratic_form(s.b, s.u, k)
        spectral_side = float(np.sum(ov.eigenvalues**k * ov.s))
        assert direct == pytest.approx(spectral_side, rel=1e-8, abs=1e-12)


def test_quadratic_form_high_power():
    s = sample_deformed(EnsembleConfig(n=50, theta=0.5, master_seed=2), 0)
    ov = overlaps(eig_symmetric(s.b), s.u)
    for k in (15, 20):
        assert quadratic_form(s.b, s.u, k) == pytest.approx(float(np.sum(ov.eigenvalues**k * ov.s)), rel=1e-8)


def test_quadratic_form_basic():
    s = sample_deformed(EnsembleConfig(n=30, theta=0.5, master_seed=3), 0)
    assert quadratic_form(s.b, s.u, 0) == pytest.approx(1.0, abs=1e-15)
    a = s.b - 0.5 * np.outer(s.u, s.u)
    assert quadratic_form(s.b, s.u, 1) == pytest.approx(s.u @ a @ s.u + 0.5, abs=1e-13)
    with pytest.raises(ValueError):
        quadratic_form(s.b, s.u, -1)


def test_quadratic_form_second_moment_of_wigner():
    s = sample_deformed(EnsembleConfig(n=500, theta=0.0, master_seed=4), 0)
    assert abs(quadratic_form(s.b, s.u, 2) - 1.0) <= 0.15


def test_energy_sum_full_and_partial():
    s = sample_deformed(EnsembleConfig(n=40, theta=0.3, master_seed=5), 0)
    ov = overlaps(eig_symmetric(s.b), s.u)
    assert energy_sum(ov, 1.0) == pytest.approx(1, abs=1e-10)
    assert energy_sum(ov, 0.25) == pytest.approx(ov.s[:10].sum(), abs=0)
    for c in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            energy_sum(ov, c)


def test_top_count_rounding():
    assert spectral.top_count(0.29, 100) == 29
    assert spectral.top_count(0.5, 7) == 3


def test_energy_sum_haar_average():
    cfg = EnsembleConfig(n=100, theta=0.0, master_seed=6)
    for c in (0.2, 0.5, 0.8):
        vals = []
        for t in range(40):
            s = sample_deformed(cfg, t)
            vals.append(energy_sum(overlaps(eig_symmetric(s.b), s.u), c))
        assert np.mean(vals) == pytest.approx(c, abs=0.04)
