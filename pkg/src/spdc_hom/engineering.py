"""Filter and pump design for indistinguishable or pure photons."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from spdc_hom import units
from spdc_hom.errors import DomainError, NumericalError
from spdc_hom.interference import indistinguishability_analytic
from spdc_hom.jsa import gaussian_params
from spdc_hom.purity import purity_analytic

OBJECTIVES = ("indistinguishability", "purity")
REFINE_TOL_NM = 1e-4


@dataclass(frozen=True)
class FilterCondition:
    """Signal filter width that makes ``a = b``; ``sigma_signal`` is ``None`` when infeasible."""

    sigma_signal: Optional[float]
    bracket: float  # 1/sigma_s^2 required, s^2

    @property
    def feasible(self):
        return self.sigma_signal is not None


def perfect_indistinguishability_filter(cfg, sigma_i):
    """Solve ``1/s_s^2 - 1/s_i^2 = gamma (n^2 - m^2)`` for the signal filter.

    ``sigma_i=None`` means the idler is unfiltered.
    """
    p = gaussian_params(cfg)
    inv_i = 0.0 if sigma_i is None else 1.0 / sigma_i**2
    bracket = inv_i + cfg.gamma * (p.n**2 - p.m**2)
    if bracket > 0:
        return FilterCondition(float(bracket**-0.5), float(bracket))
    return FilterCondition(None, float(bracket))


def factorability_residual(cfg):
    """``[1/s_p^2 + gamma m n] / (1/s_p^2)``; zero exactly when ``c = 0``.

    Positive whenever ``m n > 0``, so only sources whose pump inverse group
    velocity lies between those of signal and idler can reach zero.
    """
    p = gaussian_params(cfg)
    return float(p.c * cfg.pump_sigma**2)


def factorable_pump_sigma(cfg):
    """Pump width giving ``c = 0``, or ``None`` if the walk-offs have equal sign."""
    p = gaussian_params(cfg)
    prod = -cfg.gamma * p.m * p.n
    return float(prod**-0.5) if prod > 0 else None


@dataclass(frozen=True)
class FilterScanResult:
    scanned_sigma_values: np.ndarray
    objective_values: np.ndarray
    argmax_sigma: float
    argmax_value: float
    objective: str
    scanned: str  # "signal", "idler" or "both"
    center_wavelength: float  # meters, for FWHM conversion of the scanned side

    def fwhm_nm(self, sigma=None):
        s = self.scanned_sigma_values if sigma is None else sigma
        return units.sigma_to_fwhm_nm(self.center_wavelength / units.NM, s)

    @property
    def argmax_fwhm_nm(self):
        return float(self.fwhm_nm(self.argmax_sigma))


def _objective_fn(cfg, scanned, fixed_sigma, objective):
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    metric = indistinguishability_analytic if objective == "indistinguishability" else purity_analytic

    def evaluate(sigma):
        if scanned == "signal":
            c = cfg.with_(filter_sigma_signal=sigma, filter_sigma_idler=fixed_sigma)
        elif scanned == "idler":
            c = cfg.with_(filter_sigma_idler=sigma, filter_sigma_signal=fixed_sigma)
        else:
            c = cfg.with_(filter_sigma_signal=sigma, filter_sigma_idler=sigma)
        return metric(gaussian_params(c))

    return evaluate


def filter_scan(cfg, fixed, scan_range, objective="indistinguishability", refine_tol=None):
    """Scan one filter width (or both together) and locate the best objective.

    ``fixed`` is ``("idler", sigma)`` to scan the signal filter, ``("signal",
    sigma)`` to scan the idler filter, or ``None`` to set both filters to the
    scanned value. ``scan_range`` is ``(min, max, count)`` in rad/s. An
    interior maximum is refined by golden-section search on the two
    neighbouring samples to ``refine_tol`` (default: 1e-4 nm FWHM).
    """
    lo, hi, count = scan_range
    count = int(count)
    if not (0 < lo < hi) or count < 3:
        raise DomainError("scan range must be positive, increasing, with at least 3 points")
    if fixed is None:
        scanned, fixed_sigma = "both", None
        wavelength = cfg.signal_wavelength
    else:
        side, fixed_sigma = fixed
        scanned = {"idler": "signal", "signal": "idler"}.get(side)
        if scanned is None:
            raise ValueError("fixed side must be 'signal' or 'idler'")
        wavelength = cfg.signal_wavelength if scanned == "signal" else cfg.idler_wavelength
    evaluate = _objective_fn(cfg, scanned, fixed_sigma, objective)

    sigmas = np.linspace(lo, hi, count)
    values = np.full(count, np.nan)
    for k, s in enumerate(sigmas):
        try:
            values[k] = evaluate(s)
        except DomainError:
            pass
    if np.all(np.isnan(values)):
        raise NumericalError("objective infeasible over the whole scan range")

    k = int(np.nanargmax(values))
    best_sigma, best_value = float(sigmas[k]), float(values[k])
    if 0 < k < count - 1 and np.isfinite(values[k - 1]) and np.isfinite(values[k + 1]):
        if refine_tol is None:
            refine_tol = units.fwhm_nm_to_sigma(wavelength / units.NM, REFINE_TOL_NM)
        try:
            res = minimize_scalar(
                lambda s: -evaluate(s),
                bracket=(sigmas[k - 1], sigmas[k], sigmas[k + 1]),
                method="golden",
                options={"xtol": refine_tol / (2.0 * sigmas[k])},
            )
            if -res.fun >= best_value:
                best_sigma, best_value = float(res.x), float(-res.fun)
        except ValueError:
            # flat top: no strict bracket, keep the sampled maximum
            pass
    return FilterScanResult(sigmas, values, best_sigma, best_value, objective, scanned, wavelength)
