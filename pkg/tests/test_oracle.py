import math

import numpy as np
import pytest
import scipy.linalg

from qzzb.fockcore import DomainError
from qzzb.oracle import (
    ConvergenceError,
    DensityMatrix,
    HypothesisTest,
    TruncationError,
    adaptive_quadrature,
    dense_expm,
    direct_squeeze_sim,
    helstrom_error,
    jacobi_eigh,
    loss_channel_apply,
    loss_kraus,
    purified_loss_overlap,
    truncated_squeeze_sim,
    uhlmann_fidelity,
)
from qzzb.probes import shift_power, squeezed_coeffs, squeezed_mode_stats
from qzzb.zzb import pe_equally_likely


def _pure_pair(overlap):
    a = np.array([1.0, 0.0])
    b = np.array([overlap, math.sqrt(1 - overlap**2)])
    return DensityMatrix.pure(a), DensityMatrix.pure(b)


def test_dense_expm_examples():
    assert np.array_equal(dense_expm(np.zeros((3, 3))), np.eye(3))
    v = np.array([0.3, -2.0, 5.0])
    assert np.allclose(dense_expm(np.diag(v)), np.diag(np.exp(v)), rtol=1e-14)
    At = shift_power(3, 1, True)
    ref = sum(c * shift_power(3, m, True) for m, c in enumerate(squeezed_coeffs(3, 0.7, "minus")))
    assert np.max(np.abs(dense_expm(-0.7 * At) - ref)) < 1e-10


def test_dense_expm_vs_scipy_and_inverse():
    rng = np.random.default_rng(5)
    for scale in (0.1, 3.0, 10.0):
        M = scale * rng.normal(size=(5, 5)) / 5
        E = dense_expm(M)
        assert np.linalg.norm(E - scipy.linalg.expm(M)) <= 1e-12 * np.linalg.norm(E)
        assert np.max(np.abs(E @ dense_expm(-M) - np.eye(5))) < 1e-10
    with pytest.raises(OverflowError):
        dense_expm(np.array([[1e4]]))


def test_jacobi_eigh():
    rng = np.random.default_rng(11)
    for n in (1, 2, 5, 12):
        X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        H = X + X.conj().T
        w, V = jacobi_eigh(H)
        assert np.allclose(np.sort(w), np.linalg.eigvalsh(H), atol=1e-12)
        assert np.allclose(V @ np.diag(w) @ V.conj().T, H, atol=1e-12)
    with pytest.raises(DomainError):
        jacobi_eigh(np.array([[0, 1], [0, 0]]))


def test_helstrom_examples():
    r0, r1 = _pure_pair(0.3)
    assert helstrom_error(HypothesisTest(0.5, 0.5, r0, r0)) == pytest.approx(0.5, abs=1e-14)
    o0, o1 = _pure_pair(0.0)
    assert helstrom_error(HypothesisTest(0.5, 0.5, o0, o1)) == pytest.approx(0.0, abs=1e-14)
    p0, p1 = _pure_pair(0.6)
    assert helstrom_error(HypothesisTest(0.5, 0.5, p0, p1)) == pytest.approx(0.1, abs=1e-12)
    assert helstrom_error(HypothesisTest(0.3, 0.7, p0, p1)) == pytest.approx(
        helstrom_error(HypothesisTest(0.7, 0.3, p1, p0)), abs=1e-14
    )
    with pytest.raises(DomainError):
        HypothesisTest(0.5, 0.5, p0, DensityMatrix.pure(np.ones(3) / math.sqrt(3)))


def test_helstrom_random_pure_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        dim = int(rng.integers(2, 17))
        a = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        t = HypothesisTest(0.5, 0.5, DensityMatrix.pure(a), DensityMatrix.pure(b))
        assert helstrom_error(t) == pytest.approx(pe_equally_likely(min(abs(np.vdot(a, b)), 1.0)), abs=1e-9)


def test_uhlmann_examples():
    r0, r1 = _pure_pair(0.6)
    assert uhlmann_fidelity(r0, r0) == pytest.approx(1.0, abs=1e-12)
    assert uhlmann_fidelity(r0, r1) == pytest.approx(0.6, abs=1e-12)
    o0, o1 = _pure_pair(0.0)
    assert uhlmann_fidelity(o0, o1) == pytest.approx(0.0, abs=1e-7)
    m = DensityMatrix(np.diag([0.2, 0.8]))
    assert uhlmann_fidelity(m, r1) == pytest.approx(uhlmann_fidelity(r1, m), abs=1e-9)


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_loss_channel_examples():
    one = DensityMatrix(np.diag([0.0, 1.0]))
    out = loss_channel_apply(one, 0.3)
    assert np.allclose(out.entries, np.diag([0.7, 0.3]), atol=1e-14)
    psi = np.array([1, 1, 1]) / math.sqrt(3)
    rho = DensityMatrix.pure(psi)
    x = 0.4
    # the Kraus operators carry exp(+i x n)
    rot = np.diag(np.exp(1j * x * np.arange(3)))
    out = loss_channel_apply(rho, 1.0, x=x)
    assert np.allclose(out.entries, rot @ rho.entries @ rot.conj().T, atol=1e-14)


def test_loss_kraus_complete():
    for eta in (0.2, 0.9):
        ks = loss_kraus(6, eta, 0.3, 1.4)
        assert np.allclose(sum(k.conj().T @ k for k in ks), np.eye(7), atol=1e-13)


def test_purified_overlap_is_loss_spectrum_fidelity():
    from qzzb.fockcore import fidelity_from_spectrum
    from qzzb.noisechan import photon_loss_spectrum

    a2, n = 0.3, 5
    diag = np.zeros(n + 1)
    diag[0], diag[n] = 1 - a2, a2
    for tau in (0.0, 0.4, 1.3):
        for sigma in (0.5, 1.0, 2.0):
            ov = abs(purified_loss_overlap(diag, 0.7, tau, sigma))
            ref = fidelity_from_spectrum(photon_loss_spectrum(a2, n, 0.7, sigma), tau)
            assert ov == pytest.approx(ref, abs=1e-12)


def test_truncated_squeeze_examples():
    m, v = truncated_squeeze_sim(3, 0.0)
    assert np.allclose(m, 0, atol=1e-15) and np.allclose(v, 0, atol=1e-15)
    m, _ = truncated_squeeze_sim(2, 0.5)
    assert m == pytest.approx([math.sinh(0.5) ** 2] * 2, abs=1e-8)


@pytest.mark.parametrize("D", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("r", [0.2, 0.5, 1.0, 1.5])
def test_truncated_squeeze_matches_closed_form(D, r):
    m, v = truncated_squeeze_sim(D, r)
    st = squeezed_mode_stats(D, r)[0]
    assert np.max(np.abs(m - st.mean)) < 1e-6
    assert np.max(np.abs(v - st.variance)) < 1e-6


def test_direct_sim_agrees():
    m1, v1 = direct_squeeze_sim(3, 0.3, 30)
    m2, v2 = truncated_squeeze_sim(3, 0.3)
    assert np.allclose(m1, m2, atol=1e-8) and np.allclose(v1, v2, atol=1e-8)


def test_truncation_error_on_small_cap():
    with pytest.raises(TruncationError):
        direct_squeeze_sim(3, 1.5, 4)


def test_adaptive_quadrature():
    assert adaptive_quadrature(lambda t: t, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)
    W = 7.0
    assert adaptive_quadrature(lambda t: 0.5 * t * (1 - t / W), 0, W) == pytest.approx(W * W / 12, abs=1e-10)
    c_mt = math.pi**2 / 16 - 0.5
    assert adaptive_quadrature(lambda u: 0.5 * u * (1 - math.sin(u)), 0, math.pi / 2, tol=1e-12) == pytest.approx(
        c_mt, abs=1e-9
    )
    with pytest.raises(ConvergenceError):
        adaptive_quadrature(lambda t: 1.0 / t if t > 0 else 0.0, 0.0, 1.0, tol=1e-14, max_depth=8)
    with pytest.raises(DomainError):
        adaptive_quadrature(lambda t: t, 1.0, 0.0)
