"""Command-line front end.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical failure.
"""

import argparse
import sys
import warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from spdc_hom import export, units
from spdc_hom.config import load_config, reference_config_path
from spdc_hom.engineering import (
    factorability_residual,
    factorable_pump_sigma,
    filter_scan,
    perfect_indistinguishability_filter,
)
from spdc_hom.errors import ConfigError, NumericalError, RangeWarning
from spdc_hom.interference import (
    hom_dip_analytic,
    indistinguishability_analytic,
    indistinguishability_curve_numeric,
    visibility,
)
from spdc_hom.jsa import default_delays, exact_jsa, gaussian_jsa, gaussian_params, resolve_gamma
from spdc_hom.purity import (
    overlap_decomposition,
    purity_analytic,
    purity_dip_analytic,
    purity_numeric,
    reduced_density_grid,
    schmidt_coefficients,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    config_path: Path
    output_path: Optional[Path] = None
    grid_points: Optional[int] = None
    half_width: Optional[float] = None
    gamma: Optional[str] = None
    delays: Optional[str] = None
    multipair: bool = False
    strict: bool = False


def _parse_range(text, what):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{what} must be MIN:MAX:COUNT, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"{what} must be MIN:MAX:COUNT, got {text!r}") from None
    if count < 1:
        raise ConfigError(f"{what}: COUNT must be at least 1")
    if count > 1 and not hi > lo:
        raise ConfigError(f"{what}: MAX must exceed MIN")
    return lo, hi, count


def _setup(manifest):
    """Load and validate everything before any computation."""
    path = reference_config_path() if str(manifest.config_path) == "reference" else Path(manifest.config_path)
    loaded = load_config(path)
    cfg, grid = loaded.source, loaded.grid
    if manifest.gamma is not None:
        cfg = cfg.with_(gamma=resolve_gamma(manifest.gamma))
    if manifest.grid_points is not None:
        grid = replace(grid, points_per_axis=manifest.grid_points)
    if manifest.half_width is not None:
        grid = replace(grid, half_width_multiplier=manifest.half_width)
    delays = None
    if manifest.delays is not None:
        lo, hi, count = _parse_range(manifest.delays, "--delays")
        delays = np.linspace(lo, hi, count) * units.FS
    return cfg, grid, delays


def _table(rows):
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        if isinstance(value, float):
            value = f"{value:.9g}"
        print(f"{key:<{width}}  {value}")


def _sibling(out, suffix, ext=None):
    out = Path(out)
    return out.with_name(f"{out.stem}_{suffix}{ext or out.suffix or '.csv'}")


def _vis(curve, manifest):
    return visibility(curve, strict=manifest.strict)


def cmd_jsa(manifest, model="both", binary=False):
    cfg, grid_spec, _ = _setup(manifest)
    p = gaussian_params(cfg)
    grids = {}
    if model in ("exact", "both"):
        grids["exact"] = exact_jsa(cfg, grid_spec)
    if model in ("gaussian", "both"):
        grids["gaussian"] = gaussian_jsa(p, grid_spec)
    rows = [
        ("a [s^2]", p.a), ("b [s^2]", p.b), ("c [s^2]", p.c), ("m [s]", p.m), ("n [s]", p.n),
        ("gamma", cfg.gamma),
        ("I analytic", indistinguishability_analytic(p)),
        ("P analytic", purity_analytic(p)),
    ]
    rows += [(f"norm {name}", g.integrate(np.abs(g.values) ** 2)) for name, g in grids.items()]
    _table(rows)
    for name, g in grids.items():
        if manifest.output_path is not None:
            export.write_jsa_csv(g, _sibling(manifest.output_path, name))
            if binary:
                export.write_jsa_binary(g, _sibling(manifest.output_path, name, ".bin"))
    return EXIT_OK


def cmd_hom(manifest):
    cfg, grid_spec, delays = _setup(manifest)
    p = gaussian_params(cfg)
    if delays is None:
        delays = default_delays(p)
    curves = {
        "analytic_gaussian": hom_dip_analytic(p, delays),
        "numeric_exact": indistinguishability_curve_numeric(exact_jsa(cfg, grid_spec), delays),
        "numeric_gaussian": indistinguishability_curve_numeric(gaussian_jsa(p, grid_spec), delays),
    }
    _table([(f"V {k}", _vis(c, manifest)) for k, c in curves.items()]
           + [("dip shift [fs]", p.delay_shift / units.FS)])
    if manifest.output_path is not None:
        export.write_curves_csv(manifest.output_path, delays, curves)
    return EXIT_OK


def cmd_purity(manifest):
    cfg, grid_spec, delays = _setup(manifest)
    p = gaussian_params(cfg)
    if delays is None:
        delays = default_delays(p, count=401, include_zero=True)
    exact = exact_jsa(cfg, grid_spec)
    gauss = gaussian_jsa(p, grid_spec)
    curves = {
        "pair_hom": indistinguishability_curve_numeric(exact, delays),
        "independent": purity_dip_analytic(p, delays, multipair=manifest.multipair),
    }
    rho = reduced_density_grid(gauss, "signal")
    dec = overlap_decomposition(rho, rho)
    _table([
        ("P analytic", purity_analytic(p)),
        ("P numeric (gaussian JSA)", purity_numeric(gauss)),
        ("P numeric (exact JSA)", purity_numeric(exact)),
        ("V pair HOM (exact)", _vis(curves["pair_hom"], manifest)),
        ("V independent", _vis(curves["independent"], manifest)),
        ("Tr[rho1 rho2]", dec.tr_rho1_rho2),
        ("Tr[rho1^2]", dec.tr_rho1_sq),
        ("Tr[rho2^2]", dec.tr_rho2_sq),
        ("||rho1 - rho2||^2", dec.hs_distance_sq),
    ])
    if manifest.output_path is not None:
        export.write_curves_csv(manifest.output_path, delays, curves)
        export.write_schmidt_csv(schmidt_coefficients(gauss), _sibling(manifest.output_path, "schmidt"))
    return EXIT_OK


def _parse_fixed(text):
    side, _, value = text.partition(":")
    if side not in ("signal", "idler") or not value:
        raise ConfigError(f"--fixed must be signal:NM or idler:NM, got {text!r}")
    try:
        nm = float(value)
    except ValueError:
        raise ConfigError(f"--fixed: not a number: {value!r}") from None
    if nm <= 0:
        raise ConfigError("--fixed bandwidth must be positive")
    return side, nm


def cmd_optimize_filter(manifest, fixed="idler:1.0", scan="0.1:3.0:291", objective="indistinguishability",
                        identical=None):
    cfg, _, _ = _setup(manifest)
    lo, hi, count = _parse_range(scan, "--scan")
    if lo <= 0:
        raise ConfigError("--scan: bandwidths must be positive")
    if fixed == "none":
        fixed_arg, scanned_nm = None, cfg.signal_wavelength / units.NM
        rows = []
    else:
        side, fixed_nm = _parse_fixed(fixed)
        center_fixed = (cfg.idler_wavelength if side == "idler" else cfg.signal_wavelength) / units.NM
        fixed_arg = (side, units.fwhm_nm_to_sigma(center_fixed, fixed_nm))
        scanned_nm = (cfg.signal_wavelength if side == "idler" else cfg.idler_wavelength) / units.NM
        rows = [("fixed", f"{side} {fixed_nm:g} nm")]
    result = filter_scan(
        cfg,
        fixed_arg,
        (units.fwhm_nm_to_sigma(scanned_nm, lo), units.fwhm_nm_to_sigma(scanned_nm, hi), count),
        objective=objective,
    )
    rows += [("scan argmax [nm]", result.argmax_fwhm_nm), (f"{objective} at argmax", result.argmax_value)]
    if fixed_arg is not None and fixed_arg[0] == "idler":
        sol = perfect_indistinguishability_filter(cfg, fixed_arg[1])
        closed = (
            units.sigma_to_fwhm_nm(cfg.signal_wavelength / units.NM, sol.sigma_signal) if sol.feasible else "INFEASIBLE"
        )
        rows.append(("closed form signal [nm]", closed))
    if identical is not None:
        s_nm, i_nm = cfg.signal_wavelength / units.NM, cfg.idler_wavelength / units.NM
        c2 = cfg.with_(filter_sigma_signal=units.fwhm_nm_to_sigma(s_nm, identical),
                       filter_sigma_idler=units.fwhm_nm_to_sigma(i_nm, identical))
        rows.append((f"I identical {identical:g} nm", indistinguishability_analytic(gaussian_params(c2))))
    _table(rows)
    if manifest.output_path is not None:
        export.write_scan_csv(result, manifest.output_path)
    return EXIT_OK


def cmd_conditions(manifest, idler_filter=None):
    cfg, _, _ = _setup(manifest)
    i_nm = cfg.idler_wavelength / units.NM
    if idler_filter is not None:
        if idler_filter <= 0:
            raise ConfigError("--idler-filter must be positive")
        sigma_i = units.fwhm_nm_to_sigma(i_nm, idler_filter)
    else:
        sigma_i = cfg.filter_sigma_idler
    sol = perfect_indistinguishability_filter(cfg, sigma_i)
    p = gaussian_params(cfg)
    residual = factorability_residual(cfg)
    if p.m * p.n > 0:
        why = "m n > 0: pump group velocity not between signal and idler, c = 0 unreachable"
    else:
        why = "m n <= 0: c = 0 reachable by tuning the pump bandwidth"
    tuned = factorable_pump_sigma(cfg)
    idler_label = "none" if sigma_i is None else f"{units.sigma_to_fwhm_nm(i_nm, sigma_i):.6g} nm"
    _table([
        ("idler filter", idler_label),
        ("signal filter for I = 1 [nm]",
         units.sigma_to_fwhm_nm(cfg.signal_wavelength / units.NM, sol.sigma_signal) if sol.feasible else "INFEASIBLE"),
        ("factorability residual", residual),
        ("residual sign", why),
        ("factorable pump [nm]",
         units.sigma_to_fwhm_nm(cfg.pump_wavelength / units.NM, tuned) if tuned else "none"),
    ])
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH",
                        help="source configuration file, or 'reference' for the bundled reference source")
    common.add_argument("--out", metavar="PATH", help="output CSV path")
    common.add_argument("--grid", type=int, metavar="N", help="grid points per axis")
    common.add_argument("--half-width", type=float, metavar="K", help="grid half width in marginal sigmas")
    common.add_argument("--gamma", help="sinc-Gaussian coefficient: alpha, alpha2 or a number")
    common.add_argument("--delays", metavar="MIN:MAX:COUNT", help="delay range in femtoseconds")
    common.add_argument("--multipair", action="store_true", help="scale the independent-photon dip by 1/3")
    common.add_argument("--strict", action="store_true", help="treat a short delay range as an error")

    parser = argparse.ArgumentParser(prog="spdc-hom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("jsa", parents=[common], help="joint spectral amplitude and Gaussian parameters")
    p.add_argument("--model", choices=("exact", "gaussian", "both"), default="both")
    p.add_argument("--binary", action="store_true", help="also write binary grid dumps")
    sub.add_parser("hom", parents=[common], help="HOM dip: analytic, numeric exact, numeric Gaussian")
    sub.add_parser("purity", parents=[common], help="pair dip versus independent-photon dip")
    p = sub.add_parser("optimize-filter", parents=[common], help="filter bandwidth scan")
    p.add_argument("--fixed", default="idler:1.0", help="SIDE:NM fixed filter, or 'none' to scan both")
    p.add_argument("--scan", default="0.1:3.0:291", metavar="MIN:MAX:COUNT", help="scanned FWHM range in nm")
    p.add_argument("--objective", choices=("indistinguishability", "purity"), default="indistinguishability")
    p.add_argument("--identical", type=float, metavar="NM", help="also report I for identical filters")
    p = sub.add_parser("conditions", parents=[common], help="perfect-indistinguishability and factorability")
    p.add_argument("--idler-filter", type=float, metavar="NM", help="idler FWHM (default: from config)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    manifest = RunManifest(
        subcommand=args.subcommand,
        config_path=Path(args.config),
        output_path=Path(args.out) if args.out else None,
        grid_points=args.grid,
        half_width=args.half_width,
        gamma=args.gamma,
        delays=args.delays,
        multipair=args.multipair,
        strict=args.strict,
    )
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", RangeWarning)
            if args.subcommand == "jsa":
                return cmd_jsa(manifest, args.model, args.binary)
            if args.subcommand == "hom":
                return cmd_hom(manifest)
            if args.subcommand == "purity":
                return cmd_purity(manifest)
            if args.subcommand == "optimize-filter":
                return cmd_optimize_filter(manifest, args.fixed, args.scan, args.objective, args.identical)
            return cmd_conditions(manifest, args.idler_filter)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
