"""Probe families: the optimal entangled state, NOON states and cyclic
multimode squeezed vacua, together with the SE/IE scenario bounds.

SE (simultaneous estimation) probes all d parameters with one entangled
state; IE (individual estimation) spends N/d photons on each parameter
with its own two-mode probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fockcore import DomainError, FockState, GeneratorStats, SpeedLimitConstants
from .zzb import BoundReport, PriorWindow, combined_bound, default_width

PUBLISHED_ADVANTAGE_LIMIT = 4.9081
CONSISTENCY_TOL = 1e-9
IMAG_TOL = 1e-10


class InternalConsistencyError(ArithmeticError):
    """Two routes to the same quantity disagree."""


@dataclass(frozen=True)
class OptimalProbeSpec:
    d: int
    n_total: int

    def __post_init__(self):
        if self.d < 1 or self.n_total < 1:
            raise DomainError("d and n_total must be positive")

    @property
    def alpha(self) -> float:
        return 1.0 / math.sqrt(self.d + math.sqrt(self.d))

    @property
    def beta(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.d * self.alpha**2))

    @property
    def alpha_sq(self) -> float:
        return 1.0 / (self.d + math.sqrt(self.d))

    def mode_stats(self) -> GeneratorStats:
        """Number-operator stats of any parameter mode."""
        a2, n = self.alpha_sq, self.n_total
        return GeneratorStats.from_moments(a2 * n, a2 * (1.0 - a2) * n * n)


def optimal_probe(d: int, n_total: int) -> FockState:
    """beta|N,0..0> + alpha sum_i |0..N_i..0> on d+1 modes."""
    spec = OptimalProbeSpec(d, n_total)
    amps = {}
    ref = [0] * (d + 1)
    ref[0] = n_total
    amps[tuple(ref)] = spec.beta
    for i in range(1, d + 1):
        occ = [0] * (d + 1)
        occ[i] = n_total
        amps[tuple(occ)] = spec.alpha
    # renormalise away the last-bit error of alpha/beta
    return FockState.from_terms(d + 1, amps.items())


def noon_state(n: int) -> FockState:
    if n < 1:
        raise DomainError("NOON states need n >= 1")
    return FockState.from_terms(2, [((n, 0), 1.0), ((0, n), 1.0)])


def noon_stats(n: float) -> GeneratorStats:
    return GeneratorStats.from_moments(n / 2.0, n * n / 4.0)


def se_bounds_optimal(d: int, n_total: int, k: Optional[SpeedLimitConstants] = None) -> tuple[float, float]:
    """(ML, MT) totals for simultaneous estimation with the optimal probe."""
    k = k or SpeedLimitConstants()
    OptimalProbeSpec(d, n_total)
    s = d + math.sqrt(d)
    n2 = float(n_total) ** 2
    return d * s * s * k.c_ml / n2, d * s * s * k.c_mt / ((s - 1.0) * n2)


def ie_photons_per_parameter(d: int, n_total: int) -> tuple[int, bool]:
    """NOON photon number per parameter and whether N/d was exact."""
    if d < 1:
        raise DomainError("d must be positive")
    n = n_total // d
    if n < 1:
        raise DomainError(f"N/d = {n_total}/{d} leaves no photon per parameter")
    return n, n * d == n_total


def ie_bounds_noon(d: int, n_total: int, k: Optional[SpeedLimitConstants] = None) -> tuple[float, float]:
    """(ML, MT) totals for d independent NOON probes of floor(N/d) photons."""
    k = k or SpeedLimitConstants()
    n, _ = ie_photons_per_parameter(d, n_total)
    return d * 4.0 * k.c_ml / n**2, d * 4.0 * k.c_mt / n**2


def advantage_ratio(d: int, n_total: int = 1, k: Optional[SpeedLimitConstants] = None) -> float:
    """IE MT bound over SE ML bound, 20 lam^2 (pi^2 - 8) d^2 / (d + sqrt d)^2.

    Taken between the closed forms with N/d exact, so N cancels.
    """
    k = k or SpeedLimitConstants()
    OptimalProbeSpec(d, max(n_total, 1))
    s = d + math.sqrt(d)
    return 4.0 * k.c_mt * d * d / (k.c_ml * s * s)


def advantage_limit(k: Optional[SpeedLimitConstants] = None) -> float:
    """d -> infinity limit of :func:`advantage_ratio`."""
    k = k or SpeedLimitConstants()
    return 4.0 * k.c_mt / k.c_ml


# --- cyclic multimode squeezed vacuum -------------------------------------


@dataclass(frozen=True)
class ModePhotonStats:
    mean: float
    variance: float

    def __post_init__(self):
        if self.mean < -1e-12 or self.variance < -1e-12:
            raise DomainError("photon statistics must be non-negative")

    def as_generator_stats(self) -> GeneratorStats:
        return GeneratorStats.from_moments(max(self.mean, 0.0), max(self.variance, 0.0))


def squeezed_coeffs(D: int, r: float, sign: str = "minus") -> np.ndarray:
    """Coefficients c_m with exp(-r At) = sum_m c_m At^m (``minus``) or
    exp(r A) = sum_m c_m A^m (``plus``), A the cyclic shift."""
    if D < 2:
        raise DomainError("D must be at least 2")
    if sign not in ("minus", "plus"):
        raise DomainError(f"sign must be 'minus' or 'plus', not {sign!r}")
    s = -1.0 if sign == "minus" else 1.0
    omega = 2.0 * math.pi / D
    j = np.arange(D)
    roots = np.exp(1j * j * omega)
    eig = np.exp(s * r * roots)
    dft = np.exp(-1j * omega * np.outer(j, j))
    c = dft @ eig / D
    if np.max(np.abs(c.imag)) >= IMAG_TOL * max(1.0, np.max(np.abs(c.real))):
        raise InternalConsistencyError("squeezing coefficients are not real")
    return c.real.copy()


def shift_power(D: int, m: int, transpose: bool) -> np.ndarray:
    """At^m (transpose=True) or A^m as a dense 0/1 matrix."""
    idx = np.arange(D)
    out = np.zeros((D, D))
    if transpose:
        out[idx, (idx + m) % D] = 1.0
    else:
        out[(idx + m) % D, idx] = 1.0
    return out


def _circulant(coeffs: np.ndarray, transpose: bool) -> np.ndarray:
    D = len(coeffs)
    return sum(c * shift_power(D, m, transpose) for m, c in enumerate(coeffs))


def bogoliubov(D: int, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Return (R, K) with S^dag a_k S = sum_i R_ki a_i + K_ki a_i^dag."""
    e_minus = _circulant(squeezed_coeffs(D, r, "minus"), transpose=True)
    e_plus = _circulant(squeezed_coeffs(D, r, "plus"), transpose=False)
    R = 0.5 * (e_minus + e_plus)
    K = 0.5 * (e_minus - e_plus)
    scale = max(1.0, np.max(np.abs(R)) ** 2)
    if np.max(np.abs(R @ R.T - K @ K.T - np.eye(D))) > CONSISTENCY_TOL * scale:
        raise InternalConsistencyError("R R^T - K K^T != 1")
    RK = R @ K.T
    if np.max(np.abs(RK - RK.T)) > CONSISTENCY_TOL * scale:
        raise InternalConsistencyError("R K^T is not symmetric")
    contraction = np.einsum("ki,ki->k", e_minus, e_plus)
    if np.max(np.abs(contraction - 1.0)) > CONSISTENCY_TOL * scale:
        raise InternalConsistencyError("row contraction of the two exponentials != 1")
    return R, K


def squeezed_mode_stats(D: int, r: float) -> list[ModePhotonStats]:
    """Photon-number mean and variance of every mode of S(r)|0>."""
    cm = squeezed_coeffs(D, r, "minus")
    cp = squeezed_coeffs(D, r, "plus")
    s_minus = math.fsum(cm * cm)
    s_plus = math.fsum(cp * cp)
    mean = 0.25 * (s_minus + s_plus) - 0.5
    var = 0.125 * (s_minus**2 + s_plus**2) - 0.25
    _, K = bogoliubov(D, r)
    via_k = np.einsum("ki,ki->k", K, K)
    if np.max(np.abs(via_k - mean)) > CONSISTENCY_TOL * max(1.0, mean):
        raise InternalConsistencyError("photon mean disagrees with sum_i K_ki^2")
    return [ModePhotonStats(max(mean, 0.0), max(var, 0.0)) for _ in range(D)]


def two_mode_squeezed_stats(r: float) -> ModePhotonStats:
    sh2 = math.sinh(r) ** 2
    return ModePhotonStats(sh2, sh2 * (1.0 + sh2))


def match_photon_budget(D: int, n_total: float, r_max: float = 20.0) -> float:
    """Squeezing r with D * <n_k>(r) = n_total, by bisection on [0, r_max]."""
    if not n_total > 0.0:
        raise DomainError("photon budget must be positive")

    def total(r):
        return D * squeezed_mode_stats(D, r)[0].mean

    lo, hi = 0.0, r_max
    if total(hi) < n_total:
        raise ValueError(f"budget {n_total} needs r > {r_max}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if total(mid) < n_total:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _report(stats: list[GeneratorStats], k: SpeedLimitConstants, widths=None) -> BoundReport:
    if widths is None:
        widths = [default_width(s, k) for s in stats]
    return combined_bound(stats, PriorWindow.centered(widths), k)


def se_ie_squeezed_comparison(
    d: int,
    n_total: float,
    k: Optional[SpeedLimitConstants] = None,
    widths=None,
) -> tuple[BoundReport, BoundReport]:
    """Bounds for a (d+1)-mode squeezed vacuum (SE) against d two-mode
    squeezed vacua with budget N/d each (IE)."""
    k = k or SpeedLimitConstants()
    if d < 1:
        raise DomainError("d must be positive")
    D = d + 1
    r_se = match_photon_budget(D, n_total)
    se_mode = squeezed_mode_stats(D, r_se)[1].as_generator_stats()
    r_ie = match_photon_budget(2, n_total / d)
    ie_mode = squeezed_mode_stats(2, r_ie)[0].as_generator_stats()
    se = _report([se_mode] * d, k, widths)
    ie = _report([ie_mode] * d, k, widths)
    return se, ie
