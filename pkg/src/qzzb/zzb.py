"""Ziv-Zakai lower bounds on the total mean-square error of a vector parameter.

Two routes are provided for every mode: the fidelity integral under a
uniform prior window (optionally valley-filled), and the closed forms that
follow from the Margolus-Levitin and Mandelstam-Tamm speed limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .fockcore import (
    DomainError,
    EnergySpectrum,
    GeneratorStats,
    SpeedLimitConstants,
    fidelity_from_spectrum,
    generator_stats_from_spectrum,
)

VALIDITY_FACTOR = 10.0
FID_TOL = 1e-9
REFINE_RTOL = 1e-8
REFINE_CAP = 2**20

FidelityFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PriorWindow:
    means: tuple[float, ...]
    widths: tuple[float, ...]

    def __post_init__(self):
        means = tuple(float(m) for m in self.means)
        widths = tuple(float(w) for w in self.widths)
        if len(means) != len(widths):
            raise DomainError("means and widths differ in length")
        if not widths:
            raise DomainError("empty prior")
        if any(not w > 0.0 for w in widths):
            raise DomainError("prior widths must be positive")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "widths", widths)

    @classmethod
    def centered(cls, widths: Sequence[float]) -> "PriorWindow":
        return cls(tuple(0.0 for _ in widths), tuple(widths))

    @property
    def dim(self) -> int:
        return len(self.widths)

    def density(self, i: int, z):
        """Marginal density of parameter ``i``; closed on the left edge."""
        lo = self.means[i] - self.widths[i] / 2
        hi = self.means[i] + self.widths[i] / 2
        z = np.asarray(z, dtype=float)
        return np.where((z >= lo) & (z < hi), 1.0 / self.widths[i], 0.0)

    def variance_ceiling(self) -> float:
        return math.fsum(w * w / 12.0 for w in self.widths)


@dataclass(frozen=True)
class QuadratureConfig:
    grid_points: int = 4096
    rule: str = "simpson"
    valley_fill: bool = True
    refine: bool = False

    def __post_init__(self):
        if self.grid_points < 16:
            raise DomainError("grid_points must be at least 16")
        if self.rule not in ("simpson", "trapezoid"):
            raise DomainError(f"unknown quadrature rule {self.rule!r}")
        if self.rule == "simpson" and self.grid_points % 2:
            raise DomainError("Simpson's rule needs an even interval count")


@dataclass
class BoundReport:
    per_mode_ml: list[float]
    per_mode_mt: list[float]
    ml_valid: list[bool]
    mt_valid: list[bool]
    per_mode_integral: Optional[list[float]] = None
    valley_fill: Optional[bool] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def d(self) -> int:
        return len(self.per_mode_ml)

    @property
    def total_ml(self) -> float:
        return _total(self.per_mode_ml)

    @property
    def total_mt(self) -> float:
        return _total(self.per_mode_mt)

    @property
    def total_combined(self) -> float:
        return max(self.total_ml, self.total_mt)

    @property
    def total_integral(self) -> Optional[float]:
        if self.per_mode_integral is None:
            return None
        return _total(self.per_mode_integral)

    def as_row(self) -> dict:
        """Flat mapping used by the CLI writers."""
        row: dict = {}
        for i in range(self.d):
            row[f"ml_{i}"] = self.per_mode_ml[i]
            row[f"mt_{i}"] = self.per_mode_mt[i]
            row[f"ml_valid_{i}"] = self.ml_valid[i]
            row[f"mt_valid_{i}"] = self.mt_valid[i]
            if self.per_mode_integral is not None:
                row[f"integral_{i}"] = self.per_mode_integral[i]
        row["total_ml"] = self.total_ml
        row["total_mt"] = self.total_mt
        row["total_combined"] = self.total_combined
        if self.per_mode_integral is not None:
            row["total_integral"] = self.total_integral
            row["valley_fill"] = self.valley_fill
        row["warnings"] = "; ".join(self.warnings)
        return row


def _total(values: Sequence[float]) -> float:
    if any(math.isinf(v) for v in values):
        return math.inf
    return math.fsum(values)


def valley_fill(samples) -> np.ndarray:
    """Suffix maximum: out[k] = max(samples[k:])."""
    arr = np.asarray(samples, dtype=float)
    if arr.size == 0:
        raise DomainError("valley_fill needs at least one sample")
    return np.maximum.accumulate(arr[::-1])[::-1]


def uniform_overlap(tau, width: float):
    """Integral of min{p(z), p(z + tau)} for a uniform window of the given width."""
    if not width > 0.0:
        raise DomainError("width must be positive")
    val = np.maximum(0.0, 1.0 - np.asarray(tau, dtype=float) / width)
    return float(val) if val.ndim == 0 else val


def pe_equally_likely(F: float) -> float:
    """Minimum error for two equally likely pure states with overlap F."""
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"fidelity {F!r} outside [0, 1]")
    return 0.5 * _distinguishability_deficit(F * F)


def _distinguishability_deficit(f2):
    # 1 - sqrt(1 - f2), written to keep precision for small f2
    f2 = np.asarray(f2, dtype=float)
    val = f2 / (1.0 + np.sqrt(np.maximum(0.0, 1.0 - f2)))
    return float(val) if val.ndim == 0 else val


def _composite(values: np.ndarray, h: float, rule: str) -> float:
    if rule == "simpson":
        return h / 3.0 * (values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum())
    return h * (values.sum() - 0.5 * (values[0] + values[-1]))


def _eval_fid(fid: FidelityFn, tau: np.ndarray) -> np.ndarray:
    try:
        F = np.asarray(fid(tau), dtype=float)
        if F.shape != tau.shape:
            F = np.broadcast_to(F, tau.shape).astype(float)
    except TypeError:
        F = np.array([float(fid(t)) for t in tau])
    if np.any(~np.isfinite(F)) or np.any(F < -FID_TOL) or np.any(F > 1.0 + FID_TOL):
        raise DomainError("fidelity values outside [0, 1]")
    return np.clip(F, 0.0, 1.0)


def _integrate(integrand: Callable[[int], tuple[np.ndarray, float]], cfg: QuadratureConfig) -> float:
    def at(n):
        values, h = integrand(n)
        return _composite(values, h, cfg.rule)

    n = cfg.grid_points
    result = at(n)
    if not cfg.refine:
        return result
    while n < REFINE_CAP:
        n *= 2
        new = at(n)
        if abs(new - result) <= REFINE_RTOL * abs(new) or new == result:
            return new
        result = new
    return result


def _upper_limit(width: float, tau_max: Optional[float]) -> float:
    if not width > 0.0:
        raise DomainError("width must be positive")
    if tau_max is None:
        return width
    if not tau_max > 0.0:
        raise DomainError("tau_max must be positive")
    return min(width, tau_max)


def qzzb_mode_bound(
    fid: FidelityFn,
    width: float,
    cfg: Optional[QuadratureConfig] = None,
    tau_max: Optional[float] = None,
) -> float:
    """Single-parameter Ziv-Zakai integral under a uniform prior of ``width``.

    Integrates (tau/2) V[(1 - tau/W)(1 - sqrt(1 - F(tau)^2))] over [0, W].
    ``tau_max`` may be passed when F is known to vanish beyond it, so that
    the grid only covers the support.
    """
    cfg = cfg or QuadratureConfig()
    upper = _upper_limit(width, tau_max)

    def integrand(n):
        tau = np.linspace(0.0, upper, n + 1)
        F = _eval_fid(fid, tau)
        g = uniform_overlap(tau, width) * _distinguishability_deficit(F * F)
        if cfg.valley_fill:
            g = valley_fill(g)
        return 0.5 * tau * g, upper / n

    return max(_integrate(integrand, cfg), 0.0)


def _zeta_integral(prior: PriorWindow, mode: int, tau: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Integral over z of [p(z) + p(z+tau)] * P_e(z, z+tau) for pure states.

    The prior densities are piecewise constant, so a midpoint rule between
    the window edges (and their tau-shifted copies) is exact.
    """
    lo = prior.means[mode] - prior.widths[mode] / 2
    hi = prior.means[mode] + prior.widths[mode] / 2
    knots = np.sort(np.stack([lo - tau, lo + 0 * tau, hi - tau, hi + 0 * tau]), axis=0)
    total = np.zeros_like(tau)
    for a, b in zip(knots[:-1], knots[1:]):
        mid = 0.5 * (a + b)
        p0 = prior.density(mode, mid)
        p1 = prior.density(mode, mid + tau)
        s = p0 + p1
        with np.errstate(invalid="ignore", divide="ignore"):
            w0 = np.where(s > 0, p0 / s, 0.0)
            w1 = np.where(s > 0, p1 / s, 0.0)
        pe = 0.5 * _distinguishability_deficit(4.0 * w0 * w1 * F * F)
        total += (b - a) * s * pe
    return total


def zzb_variant2_mode_bound(
    fid: FidelityFn,
    width: float,
    cfg: Optional[QuadratureConfig] = None,
    tau_max: Optional[float] = None,
    prior: Optional[PriorWindow] = None,
    mode: int = 0,
) -> float:
    """Ziv-Zakai integral written with unequal hypothesis priors.

    The offset integrand is (tau/2) V int dz [p(z) + p(z+tau)] P_e with the
    pure-state error probability P_e = (1 - sqrt(1 - 4 p0 p1 F^2))/2.
    """
    cfg = cfg or QuadratureConfig()
    if prior is None:
        prior = PriorWindow.centered([width])
        mode = 0
    elif abs(prior.widths[mode] - width) > 1e-12 * width:
        raise DomainError("prior width disagrees with width")
    upper = _upper_limit(width, tau_max)

    def integrand(n):
        tau = np.linspace(0.0, upper, n + 1)
        F = _eval_fid(fid, tau)
        g = _zeta_integral(prior, mode, tau, F)
        if cfg.valley_fill:
            g = valley_fill(g)
        return 0.5 * tau * g, upper / n

    return max(_integrate(integrand, cfg), 0.0)


def ml_closed(stats: GeneratorStats, width: float, k: SpeedLimitConstants) -> tuple[float, bool]:
    """c_ML / <H>_+^2, valid once the window is well beyond 1/(2 lam <H>_+)."""
    h = stats.effective_mean
    if h <= 0.0:
        return math.inf, False
    return k.c_ml / (h * h), width >= VALIDITY_FACTOR / (2.0 * k.lam * h)


def mt_closed(stats: GeneratorStats, width: float, k: SpeedLimitConstants) -> tuple[float, bool]:
    """c_MT / dH^2, valid once the window is well beyond pi/(2 dH)."""
    v = stats.variance
    if v <= 0.0:
        return math.inf, False
    return k.c_mt / v, width >= VALIDITY_FACTOR * math.pi / (2.0 * math.sqrt(v))


def combined_bound(
    per_mode_stats: Sequence[GeneratorStats],
    prior: PriorWindow,
    k: Optional[SpeedLimitConstants] = None,
) -> BoundReport:
    k = k or SpeedLimitConstants()
    if len(per_mode_stats) != prior.dim:
        raise DomainError(f"{len(per_mode_stats)} modes but a {prior.dim}-dimensional prior")
    ml, mt, mlv, mtv = [], [], [], []
    for stats, w in zip(per_mode_stats, prior.widths):
        v, ok = ml_closed(stats, w, k)
        ml.append(v)
        mlv.append(ok)
        v, ok = mt_closed(stats, w, k)
        mt.append(v)
        mtv.append(ok)
    report = BoundReport(per_mode_ml=ml, per_mode_mt=mt, ml_valid=mlv, mt_valid=mtv)
    for i, (a, b) in enumerate(zip(mlv, mtv)):
        if not a:
            report.warnings.append(f"mode {i}: window too narrow for the ML closed form")
        if not b:
            report.warnings.append(f"mode {i}: window too narrow for the MT closed form")
    return report


def qzzb_vector_bound(
    spectra: Sequence[EnergySpectrum],
    prior: PriorWindow,
    cfg: Optional[QuadratureConfig] = None,
    k: Optional[SpeedLimitConstants] = None,
) -> BoundReport:
    """Per-mode fidelity integrals plus the closed forms, side by side."""
    cfg = cfg or QuadratureConfig()
    if len(spectra) != prior.dim:
        raise DomainError(f"{len(spectra)} spectra but a {prior.dim}-dimensional prior")
    integrals = [
        qzzb_mode_bound(lambda t, s=spec: fidelity_from_spectrum(s, t), w, cfg)
        for spec, w in zip(spectra, prior.widths)
    ]
    report = combined_bound([generator_stats_from_spectrum(s) for s in spectra], prior, k)
    report.per_mode_integral = integrals
    report.valley_fill = cfg.valley_fill
    return report


def default_width(stats: GeneratorStats, k: SpeedLimitConstants, factor: float = 100.0) -> float:
    """Window ``factor`` times the larger of the two closed-form thresholds."""
    thresholds = []
    if stats.effective_mean > 0.0:
        thresholds.append(1.0 / (2.0 * k.lam * stats.effective_mean))
    if stats.variance > 0.0:
        thresholds.append(math.pi / (2.0 * math.sqrt(stats.variance)))
    if not thresholds:
        raise DomainError("stationary mode has no finite window scale")
    return factor * max(thresholds)
