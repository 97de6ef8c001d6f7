"""Sparse multimode Fock states, photon-number spectra and generator statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

NORM_TOL = 1e-12
ENERGY_MERGE_TOL = 1e-12
DEFAULT_LAMBDA = 0.7246


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class FockState:
    """Pure state stored as {occupation tuple: amplitude}."""

    modes: int
    amplitudes: Mapping[tuple[int, ...], complex]

    def __post_init__(self):
        if self.modes < 1:
            raise DomainError("a Fock state needs at least one mode")
        clean = {}
        for occ, amp in self.amplitudes.items():
            occ = tuple(int(n) for n in occ)
            if len(occ) != self.modes:
                raise DomainError(f"occupation {occ} does not have {self.modes} entries")
            if any(n < 0 for n in occ):
                raise DomainError(f"negative photon number in {occ}")
            clean[occ] = clean.get(occ, 0j) + complex(amp)
        norm = sum(abs(a) ** 2 for a in clean.values())
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalised (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", clean)

    @classmethod
    def from_terms(cls, modes, terms):
        """Build from (occupation, amplitude) pairs; normalises the result."""
        acc: dict[tuple[int, ...], complex] = {}
        for occ, amp in terms:
            occ = tuple(occ)
            acc[occ] = acc.get(occ, 0j) + complex(amp)
        norm = math.sqrt(sum(abs(a) ** 2 for a in acc.values()))
        if norm == 0.0:
            raise DomainError("zero vector cannot be normalised")
        return cls(modes, {k: v / norm for k, v in acc.items()})

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())


@dataclass(frozen=True)
class EnergySpectrum:
    """Probability/energy pairs of a generator on a state.

    Entries with energies equal within ``ENERGY_MERGE_TOL`` are merged, and
    zero-probability entries are kept only if nothing else remains.
    """

    entries: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        if not self.entries:
            raise DomainError("empty spectrum")
        pairs = sorted((float(e), float(p)) for p, e in self.entries)
        merged: list[list[float]] = []
        for e, p in pairs:
            if p < 0.0:
                if p < -NORM_TOL:
                    raise DomainError(f"negative probability {p!r}")
                p = 0.0
            if merged and abs(e - merged[-1][0]) <= ENERGY_MERGE_TOL:
                merged[-1][1] += p
            else:
                merged.append([e, p])
        total = math.fsum(p for _, p in merged)
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        if any(p > 0.0 for _, p in merged):
            merged = [m for m in merged if m[1] > 0.0]
        object.__setattr__(self, "entries", tuple((p, e) for e, p in merged))

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.entries])

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.entries])

    def as_dict(self) -> dict[float, float]:
        """Energy -> probability mapping."""
        return {e: p for p, e in self.entries}


@dataclass(frozen=True)
class GeneratorStats:
    mean: float
    variance: float
    e_min: float

    def __post_init__(self):
        if self.variance < 0.0:
            raise DomainError(f"negative variance {self.variance!r}")
        if self.effective_mean < -1e-12:
            raise DomainError("mean lies below the minimum eigenvalue")

    @property
    def effective_mean(self) -> float:
        return self.mean - self.e_min

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @classmethod
    def from_moments(cls, effective_mean: float, variance: float) -> "GeneratorStats":
        """Stats of a generator with ground energy 0 (e.g. a number operator)."""
        return cls(mean=float(effective_mean), variance=float(variance), e_min=0.0)


@dataclass(frozen=True)
class SpeedLimitConstants:
    """Quantum speed limit constants; ``c_ml`` and ``c_mt`` follow from ``lam``."""

    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.lam > 0.0:
            raise DomainError("lambda must be positive")

    @property
    def c_ml(self) -> float:
        return 1.0 / (80.0 * self.lam**2)

    @property
    def c_mt(self) -> float:
        return math.pi**2 / 16.0 - 0.5


def optimal_lambda() -> float:
    """Sharp constant max_u (1 - cos u)/u behind the ML fidelity inequality.

    The maximiser solves u sin u = 1 - cos u; the value is 0.72461...
    """
    from scipy.optimize import brentq

    u = brentq(lambda u: u * math.sin(u) - (1.0 - math.cos(u)), 2.0, 3.0, xtol=1e-15)
    return (1.0 - math.cos(u)) / u


def mode_number_spectrum(state: FockState, mode: int) -> EnergySpectrum:
    """Marginal photon-number distribution of one mode."""
    if not 0 <= mode < state.modes:
        raise IndexError(f"mode {mode} out of range for a {state.modes}-mode state")
    acc: dict[int, float] = {}
    for occ, amp in state.amplitudes.items():
        acc[occ[mode]] = acc.get(occ[mode], 0.0) + abs(amp) ** 2
    return EnergySpectrum(tuple((p, float(n)) for n, p in acc.items()))


def fidelity_from_spectrum(spec: EnergySpectrum, tau):
    """|sum_l P_l exp(i tau E_l)|, vectorised over ``tau``."""
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr < 0.0):
        raise DomainError("tau must be non-negative")
    p = spec.probabilities
    # shift by the ground energy; the modulus is unchanged and tau=0 gives exactly sum p
    e = spec.energies - spec.energies.min()
    phase = np.multiply.outer(tau_arr, e)
    amp = np.abs((np.cos(phase) + 1j * np.sin(phase)) @ p)
    out = np.clip(amp, 0.0, 1.0)
    out = np.where(tau_arr == 0.0, 1.0, out)
    return float(out) if out.ndim == 0 else out


def generator_stats_from_spectrum(spec: EnergySpectrum) -> GeneratorStats:
    p = spec.probabilities
    e = spec.energies
    support = p > 0.0
    if not support.any():
        raise DomainError("spectrum has no support")
    e_min = float(e[support].min())
    # central moments about e_min keep the variance free of cancellation
    shifted = e - e_min
    m1 = math.fsum(p * shifted)
    m2 = math.fsum(p * shifted**2)
    return GeneratorStats(mean=m1 + e_min, variance=max(m2 - m1 * m1, 0.0), e_min=e_min)


def ml_fidelity_surrogate(stats: GeneratorStats, lam: float, tau):
    """sqrt(max(0, 1 - 2 lam tau <H>_+)): ML lower bound on the fidelity."""
    tau_arr = np.asarray(tau, dtype=float)
    val = np.sqrt(np.maximum(0.0, 1.0 - 2.0 * lam * tau_arr * stats.effective_mean))
    return float(val) if val.ndim == 0 else val


def mt_fidelity_surrogate(stats: GeneratorStats, tau):
    """|cos(dH tau)| on the first quarter period, zero afterwards."""
    tau_arr = np.asarray(tau, dtype=float)
    x = stats.std * tau_arr
    val = np.where(x <= math.pi / 2, np.abs(np.cos(np.minimum(x, math.pi / 2))), 0.0)
    return float(val) if val.ndim == 0 else val


def ml_support(stats: GeneratorStats, lam: float) -> float:
    """Offset beyond which the ML surrogate vanishes (inf for stationary states)."""
    h = stats.effective_mean
    return math.inf if h <= 0.0 else 1.0 / (2.0 * lam * h)


def mt_support(stats: GeneratorStats) -> float:
    s = stats.std
    return math.inf if s <= 0.0 else math.pi / (2.0 * s)


def spectrum_from_pairs(pairs: Sequence[tuple[float, float]]) -> EnergySpectrum:
    """Convenience constructor from (probability, energy) pairs."""
    return EnergySpectrum(tuple((float(p), float(e)) for p, e in pairs))
