"""Command-line front end: single bounds, figure datasets, sweeps, self-test."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import time
from typing import Callable, Optional

import numpy as np

from . import noisechan, oracle, probes, zzb
from .fockcore import (
    DomainError,
    GeneratorStats,
    SpeedLimitConstants,
    generator_stats_from_spectrum,
    ml_fidelity_surrogate,
    ml_support,
    mode_number_spectrum,
    mt_fidelity_surrogate,
    mt_support,
    fidelity_from_spectrum,
)

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
MAX_CELLS = 10**7
WIDTH_FACTOR = 100.0

DEFAULTS = {
    "probe": "optimal",
    "noise": "none",
    "d": 2,
    "n": 10,
    "w": None,
    "eta": 1.0,
    "beta": 1e-9,
    "r": None,
    "lambda": 0.7246,
    "quad_points": 4096,
    "valley_fill": True,
    "integral": False,
    "format": None,
    "output": None,
}

FIGURE_DEFAULTS = {
    "fig2": {"d": "2:100", "n": 10},
    "fig3a": {"d": "2:10", "n": "1:30"},
    "fig3b": {"d": "2:10", "n": "1:30"},
    "fig3c": {"d": "2:10", "n": "1:30"},
    "fig4loss": {"d": "2,3,5,8", "n": "2:50", "eta": "0.05:1:20"},
    "fig4diff": {"d": "2,3,5,8", "n": "2:50", "beta": "0.01:2:20"},
}


class UsageError(ValueError):
    pass


# --- value parsing -----------------------------------------------------------


def parse_range(text, kind=float) -> list:
    """'a,b,c' list, 'lo:hi' inclusive integer range, or 'lo:hi:count' linspace."""
    if isinstance(text, (int, float)):
        return [kind(text)]
    if isinstance(text, list):
        return [kind(v) for v in text]
    text = str(text).strip()
    if not text:
        raise UsageError("empty range")
    if "," in text:
        return [kind(v) for v in text.split(",")]
    parts = text.split(":")
    if len(parts) == 1:
        return [kind(parts[0])]
    if len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return [kind(v) for v in range(lo, hi + 1)]
    if len(parts) == 3:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 2:
            raise UsageError("range resolution must be at least 2")
        return [kind(v) for v in np.linspace(lo, hi, count)]
    raise UsageError(f"cannot parse range {text!r}")


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "unbounded"
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return "unbounded"
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_csv(rows: list[dict], stream) -> None:
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(row.get(k)) for k in header])


def emit(rows: list[dict], config: dict, fmt: str, output: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps(_json_safe({"config": config, "rows": rows}), indent=2, sort_keys=False) + "\n"
        if output:
            with open(output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    buf = io.StringIO()
    write_csv(rows, buf)
    meta = json.dumps(_json_safe(config), sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(buf.getvalue())
        with open(output + ".config.json", "w") as fh:
            fh.write(meta + "\n")
    else:
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(f"# config: {meta}\n")


# --- bound assembly ----------------------------------------------------------


def _widths_for(ml_stats, mt_stats, k, w):
    if w is not None:
        return [float(w)] * len(ml_stats)
    out = []
    for a, b in zip(ml_stats, mt_stats):
        scales = []
        if a.effective_mean > 0:
            scales.append(1.0 / (2.0 * k.lam * a.effective_mean))
        if b.variance > 0:
            scales.append(math.pi / (2.0 * math.sqrt(b.variance)))
        if not scales:
            raise DomainError("stationary mode: pass --w explicitly")
        out.append(WIDTH_FACTOR * max(scales))
    return out


def _probe_modes(probe, d, n, r):
    """Per-parameter (stats, spectrum or None, photon cap or None) and notes."""
    notes = []
    if probe == "optimal":
        if n is None or int(n) != n or n < 1:
            raise UsageError("--n must be a positive integer for the optimal probe")
        n = int(n)
        state = probes.optimal_probe(d, n)
        spectra = [mode_number_spectrum(state, i) for i in range(1, d + 1)]
        return [(generator_stats_from_spectrum(s), s, n) for s in spectra], notes, {"alpha_sq": probes.OptimalProbeSpec(d, n).alpha_sq}
    if probe == "noon":
        if n is None or int(n) != n:
            raise UsageError("--n must be an integer for NOON probes")
        per, exact = probes.ie_photons_per_parameter(d, int(n))
        if not exact:
            notes.append(f"N={int(n)} not divisible by d={d}; using {per} photons per parameter")
        spec = mode_number_spectrum(probes.noon_state(per), 0)
        return [(generator_stats_from_spectrum(spec), spec, per)] * d, notes, {"photons_per_parameter": per, "alpha_sq": 0.5}
    if probe == "squeezed":
        D = d + 1
        if r is None:
            if n is None or not n > 0:
                raise UsageError("--n must be positive for squeezed probes")
            r = probes.match_photon_budget(D, float(n))
        mode = probes.squeezed_mode_stats(D, r)[1]
        extra = {"r": r, "n_total_squeezed": D * mode.mean}
        return [(mode.as_generator_stats(), None, None)] * d, notes, extra
    raise UsageError(f"unknown probe {probe!r}")


def compute_bound(opts: dict) -> dict:
    """Resolve one bound row from a fully populated options mapping."""
    k = SpeedLimitConstants(opts["lambda"])
    d = int(opts["d"])
    if d < 1:
        raise UsageError("--d must be positive")
    cfg = zzb.QuadratureConfig(grid_points=int(opts["quad_points"]), valley_fill=bool(opts["valley_fill"]))
    modes, notes, extra = _probe_modes(opts["probe"], d, opts["n"], opts.get("r"))
    noise = opts["noise"]
    stats = [m[0] for m in modes]
    spectra = [m[1] for m in modes]

    if noise == "none":
        ml_stats = mt_stats = stats
    elif noise == "loss":
        if spectra[0] is None:
            raise UsageError("the loss model needs a probe with bounded photon number")
        eta = float(opts["eta"])
        ml_stats, mt_stats = [], []
        for s, (_, _, cap) in zip(stats, modes):
            ml, mt = noisechan.photon_loss_optimize(s.effective_mean, s.variance, cap, eta)
            ml_stats.append(ml.best.as_generator_stats())
            mt_stats.append(mt.best.as_generator_stats())
            extra["ml_sigma"], extra["mt_sigma"] = ml.best.sigma_or_kappa, mt.best.sigma_or_kappa
        spectra = [
            noisechan.photon_loss_spectrum(extra["alpha_sq"], cap, eta, extra["ml_sigma"]) for (_, _, cap) in modes
        ]
    elif noise == "diffusion":
        beta = float(opts["beta"])
        ml_stats, mt_stats = [], []
        for i, s in enumerate(stats):
            ml, mt = noisechan.phase_diffusion_optimize(s.effective_mean, s.variance, beta)
            ml_stats.append(ml.best.as_generator_stats())
            mt_stats.append(mt.best.as_generator_stats())
            extra["ml_kappa"], extra["mt_kappa"] = ml.best.sigma_or_kappa, mt.best.sigma_or_kappa
            if math.sqrt(2.0) * beta**2 * s.effective_mean < noisechan.DIFFUSION_WARN:
                notes.append(f"mode {i}: diffusion model outside sqrt(2) beta^2 <n> >> 1")
        spectra = [None] * d
    else:
        raise UsageError(f"unknown noise model {noise!r}")

    widths = _widths_for(ml_stats, mt_stats, k, opts.get("w"))
    prior = zzb.PriorWindow.centered(widths)
    ml_rep = zzb.combined_bound(ml_stats, prior, k)
    mt_rep = zzb.combined_bound(mt_stats, prior, k)
    report = zzb.BoundReport(
        per_mode_ml=ml_rep.per_mode_ml,
        per_mode_mt=mt_rep.per_mode_mt,
        ml_valid=ml_rep.ml_valid,
        mt_valid=mt_rep.mt_valid,
    )
    report.warnings = [w for w in ml_rep.warnings if "ML" in w] + [w for w in mt_rep.warnings if "MT" in w] + notes
    if opts.get("integral") and all(s is not None for s in spectra):
        report.per_mode_integral = [
            zzb.qzzb_mode_bound(lambda t, s=s: fidelity_from_spectrum(s, t), w, cfg) for s, w in zip(spectra, widths)
        ]
        report.valley_fill = cfg.valley_fill

    row = {
        "probe": opts["probe"],
        "noise": noise,
        "d": d,
        "n": opts["n"],
        "eta": float(opts["eta"]) if noise == "loss" else None,
        "beta": float(opts["beta"]) if noise == "diffusion" else None,
        "lambda": k.lam,
    }
    for i, w in enumerate(widths):
        row[f"w_{i}"] = w
    row.update(report.as_row())
    row["ceiling"] = prior.variance_ceiling()
    row["advantage_ratio"] = probes.advantage_ratio(d, 1, k)
    for key, val in extra.items():
        if key != "alpha_sq":
            row[key] = val
    return row


# --- figures -------------------------------------------------------------------


def figure_rows(name: str, opts: dict) -> list[dict]:
    k = SpeedLimitConstants(opts["lambda"])
    spec = FIGURE_DEFAULTS[name]
    d_values = parse_range(opts.get("d_range") or spec["d"], int)
    rows = []
    if name == "fig2":
        per = int(opts.get("n") or spec["n"])
        for d in d_values:
            n_total = d * per
            scale = n_total**2 / d**3
            ml_se, mt_se = probes.se_bounds_optimal(d, n_total, k)
            ml_ie, mt_ie = probes.ie_bounds_noon(d, n_total, k)
            rows.append(
                {
                    "d": d,
                    "delta1_se": ml_se * scale,
                    "delta2_se": mt_se * scale,
                    "delta1_ie": ml_ie * scale,
                    "delta2_ie": mt_ie * scale,
                }
            )
        return rows
    n_values = parse_range(opts.get("n_range") or spec["n"], float)
    if name.startswith("fig3"):
        for d in d_values:
            for n_total in n_values:
                se, ie = probes.se_ie_squeezed_comparison(d, n_total, k)
                row = {"d": d, "n": n_total}
                if name == "fig3a":
                    row.update(delta1_se=se.total_ml, delta2_se=se.total_mt)
                elif name == "fig3b":
                    row.update(delta1_ie=ie.total_ml, delta2_ie=ie.total_mt)
                else:
                    row.update(combined_se=se.total_combined, combined_ie=ie.total_combined)
                rows.append(row)
        return rows
    if name == "fig4loss":
        etas = parse_range(opts.get("eta_range") or spec["eta"], float)
        for d in d_values:
            for n_total in n_values:
                probe = probes.OptimalProbeSpec(d, int(n_total))
                s = probe.mode_stats()
                for eta in etas:
                    ml, mt = noisechan.photon_loss_optimize(s.effective_mean, s.variance, int(n_total), eta)
                    rows.append(
                        {
                            "d": d,
                            "n": int(n_total),
                            "eta": eta,
                            "delta1_se": d * k.c_ml / ml.best.effective_mean**2,
                            "delta2_se": d * k.c_mt / mt.best.variance,
                            "ml_sigma": ml.best.sigma_or_kappa,
                            "mt_sigma": mt.best.sigma_or_kappa,
                        }
                    )
        return rows
    if name == "fig4diff":
        betas = parse_range(opts.get("beta_range") or spec["beta"], float)
        for d in d_values:
            for n_total in n_values:
                s = probes.OptimalProbeSpec(d, int(n_total)).mode_stats()
                for beta in betas:
                    ml, mt = noisechan.phase_diffusion_optimize(s.effective_mean, s.variance, beta)
                    rows.append(
                        {
                            "d": d,
                            "n": int(n_total),
                            "beta": beta,
                            "delta1_se": d * k.c_ml / ml.best.effective_mean**2,
                            "delta2_se": d * k.c_mt / mt.best.variance,
                            "ml_kappa": ml.best.sigma_or_kappa,
                            "mt_kappa": mt.best.sigma_or_kappa,
                        }
                    )
        return rows
    raise UsageError(f"unknown figure {name!r}")


# --- self-test -----------------------------------------------------------------


def selftest_checks(k: SpeedLimitConstants) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    cfg = zzb.QuadratureConfig()

    def mt_constant():
        val = oracle.adaptive_quadrature(lambda u: 0.5 * u * (1.0 - math.sin(u)), 0.0, math.pi / 2, tol=1e-12)
        return abs(val - k.c_mt) <= 1e-9, f"quadrature {val:.12f} vs c_MT {k.c_mt:.12f}"

    def ml_constant():
        stats = GeneratorStats.from_moments(1.0, 1.0)
        T = ml_support(stats, k.lam)
        val = zzb.qzzb_mode_bound(lambda t: ml_fidelity_surrogate(stats, k.lam, t), 1e4 * T, cfg, tau_max=T)
        return abs(val / k.c_ml - 1.0) <= 5e-3, f"quadrature {val:.8f} vs c_ML {k.c_ml:.8f}"

    def mt_surrogate():
        stats = GeneratorStats.from_moments(1.0, 4.0)
        T = mt_support(stats)
        val = zzb.qzzb_mode_bound(lambda t: mt_fidelity_surrogate(stats, t), 1e6 * T, cfg, tau_max=T)
        target = k.c_mt / stats.variance
        return abs(val / target - 1.0) <= 1e-5, f"{val:.10f} vs {target:.10f}"

    def dft_vs_expm():
        worst = 0.0
        for D in range(2, 7):
            for r in (0.2, 0.7, 1.5):
                c = probes.squeezed_coeffs(D, r, "minus")
                At = probes.shift_power(D, 1, True)
                E = oracle.dense_expm(-r * At)
                worst = max(worst, np.max(np.abs(sum(cm * probes.shift_power(D, m, True) for m, cm in enumerate(c)) - E)))
        return worst <= 1e-10, f"max deviation {worst:.2e}"

    def squeeze_vs_fock():
        means, variances = oracle.truncated_squeeze_sim(4, 0.8)
        st = probes.squeezed_mode_stats(4, 0.8)[0]
        dev = max(np.max(np.abs(means - st.mean)), np.max(np.abs(variances - st.variance)))
        return dev <= 1e-6, f"max deviation {dev:.2e}"

    def helstrom():
        rng = np.random.default_rng(20240101)
        worst = 0.0
        for _ in range(20):
            dim = int(rng.integers(2, 9))
            a = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
            test = oracle.HypothesisTest(0.5, 0.5, oracle.DensityMatrix.pure(a), oracle.DensityMatrix.pure(b))
            worst = max(worst, abs(oracle.helstrom_error(test) - zzb.pe_equally_likely(min(abs(np.vdot(a, b)), 1.0))))
        return worst <= 1e-9, f"max deviation {worst:.2e}"

    def variant2():
        spec = mode_number_spectrum(probes.noon_state(2), 0)
        fid = lambda t: fidelity_from_spectrum(spec, t)
        a = zzb.qzzb_mode_bound(fid, 4 * math.pi, cfg)
        b = zzb.zzb_variant2_mode_bound(fid, 4 * math.pi, cfg)
        return abs(a - b) <= 1e-8 * abs(a), f"{a:.12g} vs {b:.12g}"

    def loss_grid():
        s = probes.OptimalProbeSpec(3, 20).mode_stats()
        worst = 0.0
        for eta in np.linspace(0.1, 1.0, 10):
            _, mt = noisechan.photon_loss_optimize(s.effective_mean, s.variance, 20, eta)
            closed = noisechan.loss_mt_min_variance(s.effective_mean, s.variance, eta)
            worst = max(worst, abs(mt.best.variance - closed) / closed)
        return worst <= 1e-6, f"max relative deviation {worst:.2e}"

    def diffusion_grid():
        s = probes.OptimalProbeSpec(3, 20).mode_stats()
        worst = 0.0
        for beta in (0.01, 0.1, 0.5, 1.0, 2.0):
            _, mt = noisechan.phase_diffusion_optimize(s.effective_mean, s.variance, beta)
            closed = noisechan.diffusion_mt_min_variance(s.variance, beta)
            worst = max(worst, abs(mt.best.variance - closed) / closed)
        return worst <= 1e-6, f"max relative deviation {worst:.2e}"

    def se_pipeline():
        worst = 0.0
        for d in (1, 2, 5, 13):
            for n in (2, 17, 400):
                ml, mt = probes.se_bounds_optimal(d, n, k)
                state = probes.optimal_probe(d, n)
                st = [generator_stats_from_spectrum(mode_number_spectrum(state, i)) for i in range(1, d + 1)]
                rep = zzb.combined_bound(st, zzb.PriorWindow.centered([1e9] * d), k)
                worst = max(worst, abs(rep.total_ml / ml - 1), abs(rep.total_mt / mt - 1))
        return worst <= 1e-12, f"max relative deviation {worst:.2e}"

    return [
        ("MT constant = quarter-period integral", mt_constant),
        ("ML constant = large-window surrogate integral", ml_constant),
        ("MT surrogate quadrature = c_MT / dH^2", mt_surrogate),
        ("DFT coefficients = dense matrix exponential", dft_vs_expm),
        ("photon statistics = truncated Fock simulation", squeeze_vs_fock),
        ("Helstrom error = pure-state formula", helstrom),
        ("two Ziv-Zakai forms agree", variant2),
        ("loss MT optimum = grid minimum", loss_grid),
        ("diffusion MT optimum = grid minimum", diffusion_grid),
        ("SE closed form = generic pipeline", se_pipeline),
    ]


class _CorruptedConstants(SpeedLimitConstants):
    """Negative control for the self-test."""

    @property
    def c_mt(self) -> float:
        return 1.01 * super().c_mt


def run_selftest(k: SpeedLimitConstants, stream=None) -> bool:
    stream = stream or sys.stdout
    ok = True
    for label, check in selftest_checks(k):
        t0 = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        ok &= bool(passed)
        stream.write(f"{'PASS' if passed else 'FAIL'}  {label}: {detail} ({time.perf_counter() - t0:.2f}s)\n")
    return ok


# --- argument handling ------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with option values; flags override it")
    p.add_argument("--output", help="write to PATH instead of stdout")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--lambda", dest="lambda_", type=float, help="ML speed-limit constant (default 0.7246)")
    p.add_argument("--quad-points", dest="quad_points", type=int)
    p.add_argument("--no-valley-fill", dest="valley_fill", action="store_const", const=False)


def _add_bound_opts(p: argparse.ArgumentParser, ranges: bool) -> None:
    kind = str if ranges else None
    p.add_argument("--probe", choices=["optimal", "noon", "squeezed"])
    p.add_argument("--noise", choices=["none", "loss", "diffusion"])
    p.add_argument("--d", type=kind or int)
    p.add_argument("--n", type=kind or float)
    p.add_argument("--w", type=kind or float, help="prior width for every parameter")
    p.add_argument("--eta", type=kind or float)
    p.add_argument("--beta", type=kind or float)
    p.add_argument("--r", type=kind or float, help="squeezing strength (overrides --n)")
    p.add_argument("--integral", action="store_const", const=True, help="also evaluate the fidelity integral")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qzzb", description="Ziv-Zakai bounds for vector quantum phase estimation")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="one bound report")
    _add_bound_opts(b, ranges=False)
    _add_common(b)

    f = sub.add_parser("figure", help="dataset behind a figure")
    f.add_argument("name", choices=sorted(FIGURE_DEFAULTS))
    f.add_argument("--d", dest="d_range")
    f.add_argument("--n", dest="n_range")
    f.add_argument("--eta", dest="eta_range")
    f.add_argument("--beta", dest="beta_range")
    _add_common(f)

    s = sub.add_parser("sweep", help="Cartesian sweep of bound reports")
    _add_bound_opts(s, ranges=True)
    _add_common(s)

    t = sub.add_parser("selftest", help="oracle cross-checks")
    t.add_argument("--lambda", dest="lambda_", type=float)
    t.add_argument("--config")
    t.add_argument("--corrupt-constant", action="store_true", help=argparse.SUPPRESS)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit flags."""
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        for key, val in loaded.items():
            opts[key.replace("-", "_")] = val
    for key, val in vars(args).items():
        if key in ("config", "command") or val is None:
            continue
        opts["lambda" if key == "lambda_" else key] = val
    return opts


def cmd_bound(opts: dict) -> list[dict]:
    return [compute_bound(opts)]


def cmd_sweep(opts: dict) -> list[dict]:
    axes = []
    for key, kind in (("d", int), ("n", float), ("w", float), ("eta", float), ("beta", float), ("r", float)):
        val = opts.get(key)
        axes.append((key, [None] if val is None else parse_range(val, kind)))
    cells = math.prod(len(v) for _, v in axes)
    if cells > MAX_CELLS:
        raise UsageError(f"sweep has {cells} cells, limit is {MAX_CELLS}")
    rows = []
    for combo in itertools.product(*(v for _, v in axes)):
        cell = dict(opts)
        for (key, _), val in zip(axes, combo):
            cell[key] = val
        if cell["n"] is not None and float(cell["n"]).is_integer():
            cell["n"] = int(cell["n"]) if cell["probe"] != "squeezed" else float(cell["n"])
        rows.append(compute_bound(cell))
    return rows


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = resolve(args)
        k = SpeedLimitConstants(float(opts["lambda"]))
        if args.command == "selftest":
            if args.corrupt_constant:
                k = _CorruptedConstants(k.lam)
            return EXIT_OK if run_selftest(k) else EXIT_SELFTEST
        if args.command == "bound":
            if isinstance(opts["n"], float) and opts["n"].is_integer() and opts["probe"] != "squeezed":
                opts["n"] = int(opts["n"])
            rows = cmd_bound(opts)
            fmt = opts["format"] or "json"
        elif args.command == "sweep":
            rows = cmd_sweep(opts)
            fmt = opts["format"] or "csv"
        else:
            rows = figure_rows(args.name, opts)
            opts["figure"] = args.name
            fmt = opts["format"] or "csv"
        emit(rows, opts, fmt, opts.get("output"))
        return EXIT_OK
    except (UsageError, DomainError, IndexError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
