"""Hong-Ou-Mandel interference of the two photons of a pair.

The coincidence probability is ``R_cc(t) = (1 - I(t)) / 2`` with the exchange
overlap

    I(t) = int dOs dOi Phi(Os, Oi) Phi*(Oi, Os) exp[-i (Os - Oi) t].

On a uniform square grid ``Os - Oi`` only depends on the index difference, so
the double sum collapses to a sum over diagonals followed by one
``(delays x diagonals)`` matrix product. The quadrature is still the full 2-D
trapezoid rule.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from spdc_hom.errors import (
    DomainError,
    NumericalConsistencyError,
    RangeWarning,
    ResolutionError,
    ShapeError,
)

MODEL_TAGS = ("analytic-gaussian", "numeric-exact", "numeric-gaussian")
IMAG_TOL = 1e-6
# sinc phase matching lets I(t) dip slightly below zero in the wings
NUMERIC_BOUND_TOL = 1e-6


@dataclass(frozen=True)
class DipCurve:
    delays: np.ndarray
    r_cc: np.ndarray
    model_tag: str
    label: str = ""
    imag_residual: float = 0.0

    def __post_init__(self):
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"model_tag must be one of {MODEL_TAGS}")
        delays = np.array(self.delays, dtype=float)
        r = np.array(self.r_cc, dtype=float)
        if delays.shape != r.shape or delays.ndim != 1:
            raise ShapeError("delays and r_cc must be 1-D arrays of equal length")
        tol = 1e-9 if self.model_tag == "analytic-gaussian" else NUMERIC_BOUND_TOL
        if r.size and (r.min() < -tol or r.max() > 0.5 + tol):
            raise NumericalConsistencyError(
                f"coincidence probability outside [0, 1/2]: [{r.min():.3g}, {r.max():.3g}]"
            )
        delays.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "r_cc", r)

    @property
    def minimum_delay(self):
        return float(self.delays[np.argmin(self.r_cc)])


def indistinguishability_analytic(p):
    """``I = sqrt[(4ab - 4c^2) / ((a + b)^2 - 4c^2)]`` for the Gaussian model."""
    if not (p.a > 0 and p.b > 0 and p.a * p.b > p.c**2):
        raise DomainError(f"need a, b > 0 and ab > c^2 (a={p.a:.4g}, b={p.b:.4g}, c={p.c:.4g})")
    num = 4 * p.a * p.b - 4 * p.c**2
    den = (p.a + p.b) ** 2 - 4 * p.c**2
    return float(np.sqrt(num / den))


def hom_dip_analytic(p, delays):
    """Closed-form dip ``(1 - I exp[-2 (t - t')^2 / (a + b - 2c)]) / 2``.

    Centered on ``p.delay_shift``; ``I`` scales the depth and ``a + b - 2c``
    sets the width.
    """
    width = p.a + p.b - 2 * p.c
    if not width > 0:
        raise DomainError(f"dip width parameter a + b - 2c must be positive, got {width:.4g}")
    indist = indistinguishability_analytic(p)
    t = np.asarray(delays, dtype=float)
    r = 0.5 * (1.0 - indist * np.exp(-2.0 * (t - p.delay_shift) ** 2 / width))
    return DipCurve(t, r, "analytic-gaussian", label="pair")


def diagonal_sums(kernel):
    """Sum a square matrix along diagonals: ``g[q] = sum_{j-k = q - (N-1)} K[j, k]``."""
    n = kernel.shape[0]
    j, k = np.indices(kernel.shape)
    idx = (j - k + n - 1).ravel()
    flat = kernel.ravel()
    re = np.bincount(idx, weights=flat.real, minlength=2 * n - 1)
    im = np.bincount(idx, weights=flat.imag, minlength=2 * n - 1)
    return re + 1j * im


def delay_transform(kernel, spacing, delays):
    """``sum_{j,k} K[j, k] exp(-i (j - k) spacing t)`` for each delay ``t``."""
    n = kernel.shape[0]
    g = diagonal_sums(kernel)
    offsets = (np.arange(2 * n - 1) - (n - 1)) * spacing
    t = np.atleast_1d(np.asarray(delays, dtype=float))
    return np.exp(-1j * np.outer(t, offsets)) @ g


def exchange_overlap(grid, delays):
    """Complex ``I(t)`` by trapezoidal quadrature on a square grid."""
    if not grid.is_square:
        raise ShapeError("exchange overlap needs identical signal and idler axes")
    phi = grid.values
    kernel = phi * np.conj(phi.T) * grid.weights()
    spacing = grid.omega_s[1] - grid.omega_s[0]
    return delay_transform(kernel, spacing, delays)


def indistinguishability_curve_numeric(grid, delays, imag_tol=IMAG_TOL):
    delays = np.asarray(delays, dtype=float)
    if delays.size == 0:
        raise ShapeError("no delays requested")
    overlap = exchange_overlap(grid, delays)
    residual = float(np.max(np.abs(overlap.imag)))
    if residual > imag_tol:
        raise NumericalConsistencyError(
            f"imaginary part of I(t) is {residual:.2e} (> {imag_tol:.0e}); grid is inconsistent"
        )
    tag = "numeric-exact" if grid.model == "exact" else "numeric-gaussian"
    r = 0.5 * (1.0 - overlap.real)
    return DipCurve(delays, r, tag, label="pair", imag_residual=residual)


def _dip_width_estimate(curve, baseline):
    r = curve.r_cc
    rmin = r.min()
    if baseline - rmin <= 1e-12:
        return 0.0
    below = np.nonzero(r < 0.5 * (baseline + rmin))[0]
    step = curve.delays[1] - curve.delays[0] if curve.delays.size > 1 else 0.0
    return float(curve.delays[below[-1]] - curve.delays[below[0]] + step)


def visibility(curve, baseline="outer", strict=False):
    """``(max - min) / max`` of a coincidence curve.

    With ``baseline="outer"`` the maximum is the mean of the outer 10% of
    samples (5% at each end); ``baseline="max"`` uses the raw sample maximum.
    A delay span shorter than five dip widths triggers a :class:`RangeWarning`,
    or :class:`ResolutionError` when ``strict``.
    """
    r = curve.r_cc
    if r.size == 0:
        raise ShapeError("empty curve")
    if baseline == "outer":
        k = max(1, int(round(0.05 * r.size)))
        top = float(np.mean(np.concatenate([r[:k], r[-k:]])))
    elif baseline == "max":
        top = float(r.max())
    else:
        raise ValueError(f"unknown baseline {baseline!r}")
    if not top > 0:
        raise DomainError("curve maximum must be positive")
    width = _dip_width_estimate(curve, top)
    span = float(curve.delays[-1] - curve.delays[0]) if r.size > 1 else 0.0
    if width > 0 and span < 5 * width:
        msg = f"delay span {span:.3g} s covers fewer than 5 dip widths ({width:.3g} s each)"
        if strict:
            raise ResolutionError(msg)
        warnings.warn(msg, RangeWarning, stacklevel=2)
    v = (top - float(r.min())) / top
    return float(np.clip(v, 0.0, 1.0))


def dip_shift(cfg):
    """Delay of the dip minimum, ``L (N_s - N_i) / 2``, in seconds."""
    _, n_s, n_i = cfg.inverse_group_velocities()
    return 0.5 * cfg.crystal_length * (n_s - n_i)


def doubling_check(make_grid, points, delay=0.0):
    """Evaluate ``I(delay)`` on grids with ``points`` and ``2 * points`` samples per axis.

    ``make_grid(points)`` must return a square :class:`JsaGrid`. Returns a
    dict with the coarse and fine values, a Richardson extrapolation assuming
    second-order convergence, and the coarse-fine difference as error estimate.
    """
    coarse = float(exchange_overlap(make_grid(points), [delay])[0].real)
    fine = float(exchange_overlap(make_grid(2 * points), [delay])[0].real)
    return {
        "coarse": coarse,
        "fine": fine,
        "richardson": fine + (fine - coarse) / 3.0,
        "error_estimate": abs(fine - coarse),
    }
