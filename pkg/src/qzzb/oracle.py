"""Brute-force reference computations used to certify the closed forms.

Nothing here is fast; every routine favours a transparent construction over
speed so that its agreement with the analytic paths means something.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import expm_multiply

from .fockcore import DomainError

HERMITIAN_TOL = 1e-10
TAIL_MASS = 1e-10


class TruncationError(RuntimeError):
    """Fock cutoff too small for the requested accuracy."""


class ConvergenceError(RuntimeError):
    pass


# --- linear algebra --------------------------------------------------------


def dense_expm(M) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a Taylor series."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("dense_expm needs a square matrix")
    if not np.all(np.isfinite(M)):
        raise DomainError("non-finite matrix entries")
    n = M.shape[0]
    norm = np.max(np.sum(np.abs(M), axis=0)) if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm / 0.25)))) if norm > 0.25 else 0
    A = M / 2.0**s
    result = np.eye(n, dtype=np.result_type(M, float))
    term = np.eye(n, dtype=result.dtype)
    for j in range(1, 40):
        term = term @ A / j
        result = result + term
        if np.max(np.abs(term)) <= 1e-18 * np.max(np.abs(result)):
            break
    with np.errstate(over="raise", invalid="raise"):
        try:
            for _ in range(s):
                result = result @ result
        except FloatingPointError as exc:
            raise OverflowError("matrix exponential overflows") from exc
    if not np.all(np.isfinite(result)):
        raise OverflowError("matrix exponential overflows")
    return result


def jacobi_eigh(H, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ascending eigenvalues and the unitary whose columns are the
    eigenvectors.
    """
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DomainError("jacobi_eigh needs a square matrix")
    if np.max(np.abs(A - A.conj().T), initial=0.0) > HERMITIAN_TOL * max(1.0, np.max(np.abs(A), initial=0.0)):
        raise DomainError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if scale == 0.0 or n < 2:
        return np.real(np.diag(A)).copy(), V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                g = abs(b)
                if g <= 1e-300:
                    continue
                phase = b / g
                theta = 0.5 * math.atan2(2.0 * g, A[p, p].real - A[q, q].real)
                c, s = math.cos(theta), math.sin(theta)
                # G = diag(1, conj(phase)) @ [[c, -s], [s, c]]
                G = np.array([[c, -s], [s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    w = np.real(np.diag(A))
    order = np.argsort(w)
    return w[order], V[:, order]


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, V = jacobi_eigh(rho)
    # eigenvalues at roundoff level are zero; their square roots would not be
    floor = 64.0 * np.finfo(float).eps * max(float(np.max(np.abs(w))), 1.0) * len(w)
    w = np.where(w > floor, w, 0.0)
    return (V * np.sqrt(w)) @ V.conj().T


# --- states and hypothesis tests ------------------------------------------


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > HERMITIAN_TOL:
            raise DomainError(f"trace {np.trace(m).real!r} != 1")
        w, _ = jacobi_eigh(m)
        if w.min() < -HERMITIAN_TOL:
            raise DomainError(f"negative eigenvalue {w.min()!r}")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class HypothesisTest:
    p0: float
    p1: float
    rho0: DensityMatrix
    rho1: DensityMatrix

    def __post_init__(self):
        if self.p0 < 0 or self.p1 < 0 or abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise DomainError("hypothesis priors must be a probability pair")
        if self.rho0.dim != self.rho1.dim:
            raise DomainError("hypotheses act on different dimensions")


def helstrom_error(test: HypothesisTest) -> float:
    """Minimum error probability 1/2 - ||p1 rho1 - p0 rho0||_1 / 2."""
    gamma = test.p1 * test.rho1.entries - test.p0 * test.rho0.entries
    w, _ = jacobi_eigh(gamma)
    pe = 0.5 - 0.5 * math.fsum(np.abs(w))
    return min(max(pe, 0.0), min(test.p0, test.p1))


def uhlmann_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """tr sqrt(sqrt(rho) sigma sqrt(rho)), i.e. |<psi|phi>| on pure states."""
    if rho.dim != sigma.dim:
        raise DomainError("dimension mismatch")
    # trace norm of sqrt(rho) sqrt(sigma): same value, no square root of small eigenvalues
    m = _psd_sqrt(rho.entries) @ _psd_sqrt(sigma.entries)
    return min(math.fsum(np.linalg.svd(m, compute_uv=False)), 1.0)


# --- single-mode ladder algebra -------------------------------------------


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def loss_kraus(n_max: int, eta: float, x: float, sigma: float) -> list[np.ndarray]:
    """Loss Kraus operators sqrt((1-eta)^l / l!) e^{ix(n - delta l)} eta^{n/2} a^l."""
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"transmissivity {eta!r} outside (0, 1]")
    dim = n_max + 1
    n = np.arange(dim)
    a = annihilation(dim)
    delta = sigma - 1.0
    ops = []
    al = np.eye(dim)
    for l in range(dim):
        pref = math.sqrt((1.0 - eta) ** l / math.factorial(l))
        phase = np.diag(np.exp(1j * x * (n - delta * l)))
        ops.append(pref * phase @ np.diag(eta ** (n / 2.0)) @ al)
        al = al @ a
    return ops


def loss_channel_apply(rho: DensityMatrix, eta: float, x: float = 0.0, sigma: float = 1.0) -> DensityMatrix:
    n_max = rho.dim - 1
    out = sum(K @ rho.entries @ K.conj().T for K in loss_kraus(n_max, eta, x, sigma))
    drift = abs(np.trace(out) - 1.0)
    if drift > 1e-8:
        raise ArithmeticError(f"loss channel trace drift {drift:.3g}")
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out / np.trace(out).real)


def purified_loss_overlap(rho_diag: Sequence[float], eta: float, tau: float, sigma: float) -> complex:
    """sum_l tr[pi_l(0)^dag pi_l(tau) rho] for a number-diagonal input."""
    rho = np.diag(np.asarray(rho_diag, dtype=complex))
    n_max = rho.shape[0] - 1
    k0 = loss_kraus(n_max, eta, 0.0, sigma)
    kt = loss_kraus(n_max, eta, tau, sigma)
    return sum(np.trace(a.conj().T @ b @ rho) for a, b in zip(k0, kt))


# --- Fock-space squeezing simulation --------------------------------------


def squeeze_quadratic_form(D: int, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients (X, Y) of i r Q^T A P = sum X_ij a_i^dag a_j
    + 1/2 sum (Y_ij a_i a_j - conj(Y_ij) a_i^dag a_j^dag)."""
    A = np.zeros((D, D))
    for j in range(D):
        A[(j + 1) % D, j] = 1.0
    X = 0.5 * r * (A - A.T)
    Y = 0.5 * r * (A + A.T)
    return X.astype(complex), Y.astype(complex)


def _fock_ops(cutoff: int, nmodes: int) -> list[sp.csr_matrix]:
    a = sp.csr_matrix(annihilation(cutoff))
    eye = sp.identity(cutoff, format="csr")
    ops = []
    for m in range(nmodes):
        parts = [a if i == m else eye for i in range(nmodes)]
        op = parts[0]
        for p in parts[1:]:
            op = sp.kron(op, p, format="csr")
        ops.append(op)
    return ops


def _block_state(X, Y, modes, cutoff, tail):
    """Evolve vacuum of one decoupled block; returns (state, ladder ops)."""
    while True:
        ops = _fock_ops(cutoff, len(modes))
        dim = cutoff ** len(modes)
        G = sp.csr_matrix((dim, dim), dtype=complex)
        for i, p in enumerate(modes):
            for j, q in enumerate(modes):
                if X[p, q] != 0:
                    G = G + X[p, q] * (ops[i].T @ ops[j])
                if Y[p, q] != 0:
                    G = G + 0.5 * Y[p, q] * (ops[i] @ ops[j]) - 0.5 * np.conj(Y[p, q]) * (ops[i].T @ ops[j].T)
        vac = np.zeros(dim, dtype=complex)
        vac[0] = 1.0
        psi = expm_multiply(G.tocsc(), vac)
        prob = np.abs(psi) ** 2
        occ = np.stack(np.unravel_index(np.arange(dim), (cutoff,) * len(modes)))
        high = prob[np.any(occ > cutoff - 3, axis=0)].sum()
        if high < tail:
            return psi / np.linalg.norm(psi), ops, cutoff
        if cutoff >= 4096 // len(modes) ** 2:
            raise TruncationError(f"tail mass {high:.2e} with cutoff {cutoff}")
        cutoff *= 2


def truncated_squeeze_sim(D: int, r: float, cutoff: int = 24, tail: float = TAIL_MASS, block_tol: float = 1e-12):
    """Photon-number mean and variance per mode of exp(i r Q^T A P)|0>.

    The quadratic generator is rewritten in the discrete Fourier mode basis,
    where it splits into decoupled blocks of at most two modes.  Each block is
    exponentiated on its own truncated Fock space (cutoff doubled until the
    mass within two levels of the cutoff is below ``tail``), and the moments
    of n_k = a_k^dag a_k are assembled from ordered ladder-operator products
    evaluated block by block.
    """
    if D < 2:
        raise DomainError("need at least two modes")
    X, Y = squeeze_quadratic_form(D, r)
    k = np.arange(D)
    W = np.exp(2j * np.pi * np.outer(k, k) / D) / math.sqrt(D)  # a = W b
    Xb = W.conj().T @ X @ W
    Yb = W.T @ Y @ W
    Xb[np.abs(Xb) < block_tol] = 0.0
    Yb[np.abs(Yb) < block_tol] = 0.0
    coupling = (np.abs(Xb) + np.abs(Yb)) > 0
    ncomp, labels = connected_components(sp.csr_matrix(coupling), directed=False)
    blocks = [tuple(np.flatnonzero(labels == c)) for c in range(ncomp)]
    where = {}
    states = []
    for bi, modes in enumerate(blocks):
        if len(modes) > 2:
            raise TruncationError(f"block of {len(modes)} modes is too large to simulate")
        psi, ops, _ = _block_state(Xb, Yb, modes, cutoff, tail)
        states.append((psi, ops))
        for li, m in enumerate(modes):
            where[m] = (bi, li)

    @lru_cache(maxsize=None)
    def block_expect(bi, word):
        psi, ops = states[bi]
        vec = psi
        for dagger, li in reversed(word):
            op = ops[li].T if dagger else ops[li]
            vec = op @ vec
        return complex(np.vdot(psi, vec))

    def expect(word):
        # word: sequence of (dagger, fourier mode); ops of different blocks commute
        per_block: dict[int, list] = {}
        for dagger, m in word:
            bi, li = where[m]
            per_block.setdefault(bi, []).append((dagger, li))
        val = 1.0 + 0j
        for bi in range(len(blocks)):
            val *= block_expect(bi, tuple(per_block.get(bi, ())))
        return val

    pair = {(p, q): expect(((True, p), (False, q))) for p in range(D) for q in range(D)}
    means, variances = [], []
    for kk in range(D):
        w = W[kk]
        m1 = sum(np.conj(w[p]) * w[q] * pair[p, q] for p in range(D) for q in range(D))
        m2 = 0j
        for p, q, s, t in product(range(D), repeat=4):
            c = np.conj(w[p]) * w[q] * np.conj(w[s]) * w[t]
            if abs(c) == 0:
                continue
            m2 += c * expect(((True, p), (False, q), (True, s), (False, t)))
        means.append(m1.real)
        variances.append(m2.real - m1.real**2)
    return np.array(means), np.array(variances)


def direct_squeeze_sim(D: int, r: float, max_photons: int) -> tuple[np.ndarray, np.ndarray]:
    """Same moments from the D-mode Fock space truncated at ``max_photons``
    total photons; only practical for small D and r."""
    basis = [occ for occ in product(range(max_photons + 1), repeat=D) if sum(occ) <= max_photons]
    index = {occ: i for i, occ in enumerate(basis)}
    dim = len(basis)
    ops = []
    for m in range(D):
        rows, cols, vals = [], [], []
        for occ, j in index.items():
            if occ[m] > 0:
                tgt = list(occ)
                tgt[m] -= 1
                rows.append(index[tuple(tgt)])
                cols.append(j)
                vals.append(math.sqrt(occ[m]))
        ops.append(sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim)))
    X, Y = squeeze_quadratic_form(D, r)
    G = sp.csr_matrix((dim, dim), dtype=complex)
    for p in range(D):
        for q in range(D):
            if X[p, q] != 0:
                G = G + X[p, q] * (ops[p].T @ ops[q])
            if Y[p, q] != 0:
                G = G + 0.5 * Y[p, q] * (ops[p] @ ops[q]) - 0.5 * np.conj(Y[p, q]) * (ops[p].T @ ops[q].T)
    vac = np.zeros(dim, dtype=complex)
    vac[index[(0,) * D]] = 1.0
    psi = expm_multiply(G.tocsc(), vac)
    top = np.array([sum(o) >= max_photons - 1 for o in basis])
    if np.sum(np.abs(psi[top]) ** 2) > TAIL_MASS:
        raise TruncationError("raise max_photons")
    n = np.array(basis, dtype=float)
    prob = np.abs(psi) ** 2
    prob /= prob.sum()
    means = prob @ n
    variances = prob @ n**2 - means**2
    return means, variances


# --- quadrature -------------------------------------------------------------


def adaptive_quadrature(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_depth: int = 40) -> float:
    """Adaptive Simpson with absolute tolerance ``tol``."""
    if not a < b:
        raise DomainError("need a < b")

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        diff = left + right - whole
        if abs(diff) <= 15.0 * tol:
            return left + right + diff / 15.0
        if depth >= max_depth:
            raise ConvergenceError(f"adaptive Simpson exceeded depth {max_depth} near {m!r}")
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2.0, depth + 1
        )

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)

