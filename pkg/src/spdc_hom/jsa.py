"""Joint spectral amplitude of the photon pair.

Two constructions share one grid convention: :func:`exact_jsa` evaluates the
sinc phase-matching function with a first-order phase mismatch
``Delta_k L = m Omega_s + n Omega_i``, and :func:`gaussian_jsa` evaluates the
Gaussian model

    exp[-(a/4) Os^2 - (b/4) Oi^2 - (c/2) Os Oi - (i/2)(m Os + n Oi)]

with ``a, b, c`` from :func:`gaussian_params`. The sinc is replaced by
``exp(-gamma x^2)``; ``gamma`` is a config scalar with two presets.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from spdc_hom import units
from spdc_hom.dispersion import MaterialDispersion, inverse_group_velocity
from spdc_hom.errors import ConfigError, DomainError, ResolutionError, ShapeError

ALPHA = 0.193
GAMMA_PRESETS = {"alpha": ALPHA, "alpha2": ALPHA**2}
GAMMA_PRESETS["alpha_squared"] = GAMMA_PRESETS["alpha2"]
# The "alpha" preset reproduces the 90.0% approximate visibility of the
# reference 2 cm PPLN source (89.4%); "alpha2" gives 99.1%.
DEFAULT_GAMMA = "alpha"

DEFAULT_TEMPERATURE = 313.15
NORM_REFINEMENT_TOL = 1e-4


def resolve_gamma(value):
    """Accept a preset name or a number and return the numeric coefficient."""
    if isinstance(value, str):
        key = value.strip().lower()
        if key in GAMMA_PRESETS:
            return GAMMA_PRESETS[key]
        try:
            value = float(key)
        except ValueError:
            raise ConfigError(
                f"gamma must be one of {sorted(GAMMA_PRESETS)} or a number, got {value!r}"
            ) from None
    value = float(value)
    if not value > 0:
        raise ConfigError(f"gamma must be positive, got {value}")
    return value


@dataclass(frozen=True)
class SourceConfig:
    """Physical description of a pulsed SPDC source.

    Lengths and wavelengths in meters, spectral widths as amplitude sigmas in
    rad/s, temperature in kelvin. A filter width of ``None`` means no filter.
    ``center_detuning`` moves the phase-matched signal center by ``+delta``
    and the idler by ``-delta`` (rad/s) while the filters stay put.
    """

    material: MaterialDispersion
    crystal_length: float
    pump_wavelength: float
    pump_sigma: float
    signal_wavelength: float
    idler_wavelength: Optional[float] = None
    filter_sigma_signal: Optional[float] = None
    filter_sigma_idler: Optional[float] = None
    pump_axis: str = "o"
    signal_axis: str = "o"
    idler_axis: str = "e"
    temperature: float = DEFAULT_TEMPERATURE
    gamma: float = ALPHA
    center_detuning: float = 0.0

    def __post_init__(self):
        if self.idler_wavelength is None:
            object.__setattr__(
                self,
                "idler_wavelength",
                1.0 / (1.0 / self.pump_wavelength - 1.0 / self.signal_wavelength),
            )
        if not self.crystal_length > 0:
            raise ConfigError(f"crystal length must be positive, got {self.crystal_length}")
        for name in ("pump_wavelength", "signal_wavelength", "idler_wavelength", "pump_sigma"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("filter_sigma_signal", "filter_sigma_idler"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ConfigError(f"{name} must be positive when present, got {v}")
        inv_p = 1.0 / self.pump_wavelength
        mismatch = inv_p - 1.0 / self.signal_wavelength - 1.0 / self.idler_wavelength
        if abs(mismatch) > 1e-9 * inv_p:
            raise ConfigError("center wavelengths violate energy conservation 1/lp = 1/ls + 1/li")
        object.__setattr__(self, "gamma", resolve_gamma(self.gamma))

    def with_(self, **changes):
        return replace(self, **changes)

    def inverse_group_velocities(self):
        """Return ``(N_p, N_s, N_i)`` in s/m."""
        igv = inverse_group_velocity
        return (
            float(igv(self.material, self.pump_wavelength, self.temperature, self.pump_axis)),
            float(igv(self.material, self.signal_wavelength, self.temperature, self.signal_axis)),
            float(igv(self.material, self.idler_wavelength, self.temperature, self.idler_axis)),
        )


@dataclass(frozen=True)
class GaussianJsaParams:
    """Quadratic-form coefficients ``a, b, c`` (s^2) and walk-offs ``m, n`` (s).

    ``delay_shift`` is the HOM dip center ``L (N_s - N_i) / 2``; it defaults
    to the algebraically equal ``(n - m) / 2``.
    """

    a: float
    b: float
    c: float
    m: float = 0.0
    n: float = 0.0
    delay_shift: Optional[float] = None

    def __post_init__(self):
        if self.delay_shift is None:
            object.__setattr__(self, "delay_shift", 0.5 * (self.n - self.m))

    @property
    def determinant(self):
        return self.a * self.b - self.c**2

    def is_normalizable(self):
        return self.a > 0 and self.b > 0 and self.determinant > 0

    def marginal_sigmas(self):
        """Standard deviations of ``|Phi|^2`` along each axis, in rad/s."""
        if not self.is_normalizable():
            raise DomainError(f"non-normalizable Gaussian parameters (ab - c^2 = {self.determinant:.3g})")
        det = self.determinant
        return float(np.sqrt(self.b / det)), float(np.sqrt(self.a / det))


def _inv_sq(sigma):
    return 0.0 if sigma is None else 1.0 / sigma**2


def gaussian_params(cfg):
    n_p, n_s, n_i = cfg.inverse_group_velocities()
    L = cfg.crystal_length
    m = L * (n_p - n_s)
    n = L * (n_p - n_i)
    g = cfg.gamma
    pump = 1.0 / cfg.pump_sigma**2
    return GaussianJsaParams(
        a=g * m * m + pump + _inv_sq(cfg.filter_sigma_signal),
        b=g * n * n + pump + _inv_sq(cfg.filter_sigma_idler),
        c=g * m * n + pump,
        m=m,
        n=n,
        delay_shift=0.5 * L * (n_s - n_i),
    )


@dataclass(frozen=True)
class GridSpec:
    """Square detuning grid: ``points_per_axis`` samples on ``[-W, W]``.

    ``W`` is ``half_width`` (rad/s) when given, otherwise
    ``half_width_multiplier`` times the larger marginal sigma.
    """

    points_per_axis: int = 512
    half_width_multiplier: float = 5.0
    half_width: Optional[float] = None

    def __post_init__(self):
        if self.points_per_axis < 64:
            raise ResolutionError(f"points_per_axis must be >= 64, got {self.points_per_axis}")
        if self.half_width is None and self.half_width_multiplier < 3:
            raise ResolutionError(
                f"half_width_multiplier must be >= 3, got {self.half_width_multiplier}"
            )
        if self.half_width is not None and not self.half_width > 0:
            raise ResolutionError("half_width must be positive")

    def axis(self, params=None):
        if self.half_width is not None:
            w = self.half_width
        else:
            w = self.half_width_multiplier * max(params.marginal_sigmas())
        return np.linspace(-w, w, self.points_per_axis)


def trapezoid_weights(axis):
    d = axis[1] - axis[0]
    w = np.full(axis.shape, d)
    w[0] = w[-1] = 0.5 * d
    return w


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def _check_uniform(axis, name):
    if axis.ndim != 1 or axis.size < 2:
        raise ShapeError(f"{name} axis must be 1-D with at least two points")
    d = np.diff(axis)
    if not np.all(d > 0):
        raise ShapeError(f"{name} axis must be strictly increasing")
    if np.max(np.abs(d - d.mean())) > 1e-12 * abs(d.mean()):
        raise ShapeError(f"{name} axis must be uniformly spaced")


@dataclass(frozen=True)
class JsaGrid:
    """Complex ``Phi(Omega_s, Omega_i)`` sampled with ``values[j, k]`` at
    ``(omega_s[j], omega_i[k])``. Immutable."""

    omega_s: np.ndarray
    omega_i: np.ndarray
    values: np.ndarray
    model: str = "exact"
    norm_squared: float = field(default=float("nan"))

    def __post_init__(self):
        for name in ("omega_s", "omega_i"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=float)))
            _check_uniform(getattr(self, name), name)
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.omega_s.size, self.omega_i.size):
            raise ShapeError(f"values shape {values.shape} does not match axes")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "norm_squared", self.integrate(np.abs(values) ** 2))

    @property
    def is_square(self):
        return self.omega_s.size == self.omega_i.size and np.array_equal(self.omega_s, self.omega_i)

    def weights(self):
        return np.outer(trapezoid_weights(self.omega_s), trapezoid_weights(self.omega_i))

    def integrate(self, f):
        return float(np.real(np.sum(f * self.weights())))


def normalize(grid):
    """Rescale so that the trapezoidal integral of ``|Phi|^2`` is one. Idempotent."""
    norm = grid.norm_squared
    if not (norm > 0 and np.isfinite(norm)):
        raise ResolutionError("grid has zero or non-finite norm")
    return replace(grid, values=grid.values / np.sqrt(norm))


def _grid_norm(values, axis):
    w = trapezoid_weights(axis)
    return float(np.sum(np.abs(values) ** 2 * np.outer(w, w)))


def _build(evaluate, axis, model, check_refinement):
    """Evaluate on ``axis``; optionally compare the norm with a half-resolution
    grid spanning the same interval."""
    values = evaluate(axis)
    if check_refinement:
        fine = _grid_norm(values, axis)
        coarse_axis = np.linspace(axis[0], axis[-1], axis.size // 2)
        coarse = _grid_norm(evaluate(coarse_axis), coarse_axis)
        change = abs(coarse - fine) / fine if fine > 0 else float("inf")
        if not change <= NORM_REFINEMENT_TOL:
            raise ResolutionError(
                f"normalization unstable under 2x refinement (relative change {change:.2e}); "
                "increase points_per_axis or adjust the grid half width"
            )
    return normalize(JsaGrid(axis, axis, values, model=model))


def exact_jsa(cfg, grid_spec=None, check_refinement=True):
    grid_spec = grid_spec or GridSpec()
    params = gaussian_params(cfg)
    delta = cfg.center_detuning

    def evaluate(axis):
        os_, oi = np.meshgrid(axis, axis, indexing="ij")
        dkl = params.m * (os_ - delta) + params.n * (oi + delta)
        values = (
            np.exp(-((os_ + oi) ** 2) / (4 * cfg.pump_sigma**2))
            * np.sinc(dkl / (2 * np.pi))
            * np.exp(-0.5j * dkl)
        )
        if cfg.filter_sigma_signal is not None:
            values *= np.exp(-(os_**2) / (4 * cfg.filter_sigma_signal**2))
        if cfg.filter_sigma_idler is not None:
            values *= np.exp(-(oi**2) / (4 * cfg.filter_sigma_idler**2))
        return values

    return _build(evaluate, grid_spec.axis(params), "exact", check_refinement)


def gaussian_jsa(params, grid_spec=None, offset=(0.0, 0.0), check_refinement=True):
    """Grid of the Gaussian model. ``offset`` shifts the amplitude center to
    ``(delta_s, delta_i)`` on an otherwise unchanged grid."""
    if not params.is_normalizable():
        raise DomainError(
            f"Gaussian JSA not normalizable: need a, b > 0 and ab > c^2 "
            f"(a={params.a:.4g}, b={params.b:.4g}, c={params.c:.4g})"
        )
    grid_spec = grid_spec or GridSpec()
    a, b, c, m, n = params.a, params.b, params.c, params.m, params.n

    def evaluate(axis):
        os_, oi = np.meshgrid(axis, axis, indexing="ij")
        x = os_ - offset[0]
        y = oi - offset[1]
        return np.exp(-0.25 * a * x * x - 0.25 * b * y * y - 0.5 * c * x * y - 0.5j * (m * x + n * y))

    return _build(evaluate, grid_spec.axis(params), "gaussian", check_refinement)


def swap_axes(grid):
    """Return the grid of ``Phi(Omega_i, Omega_s)``."""
    if not grid.is_square:
        raise ShapeError("swap_axes needs identical signal and idler axes")
    return replace(grid, omega_s=grid.omega_i, omega_i=grid.omega_s, values=grid.values.T)


def default_delays(params, count=201, span_widths=12.0, include_zero=False):
    """Delay samples centered on the dip, spanning ``span_widths`` dip FWHMs.

    With ``include_zero`` the range also covers the wider independent-photon
    dip at ``t = 0``; the step is then chosen so that both ``0`` and the pair
    dip center fall on samples (``count`` becomes a lower bound).
    """
    width = dip_fwhm(params)
    center = params.delay_shift
    if not include_zero:
        return np.linspace(center - 0.5 * span_widths * width, center + 0.5 * span_widths * width, count)
    w2 = 2.0 * np.sqrt(np.log(2.0) * params.a)
    half = 0.5 * span_widths * max(width, w2)
    lo, hi = min(0.0, center) - half, max(0.0, center) + half
    step = (hi - lo) / (count - 1)
    if center != 0.0:
        step = abs(center) / np.ceil(abs(center) / step)
    k_lo, k_hi = np.floor(lo / step), np.ceil(hi / step)
    return np.arange(k_lo, k_hi + 1) * step


def dip_fwhm(params):
    """FWHM of the Gaussian-model HOM dip, ``2 sqrt(ln2 (a + b - 2c) / 2)``."""
    width = params.a + params.b - 2 * params.c
    if not width > 0:
        raise DomainError("a + b - 2c must be positive")
    return 2.0 * np.sqrt(np.log(2.0) * width / 2.0)


def source_from_lab_units(
    material,
    length_mm,
    pump_nm,
    pump_fwhm_nm,
    signal_nm,
    signal_filter_nm=None,
    idler_filter_nm=None,
    **kwargs,
):
    """Build a :class:`SourceConfig` from nm / mm quantities (bandwidths as intensity FWHM)."""
    idler_nm = 1.0 / (1.0 / pump_nm - 1.0 / signal_nm)
    return SourceConfig(
        material=material,
        crystal_length=length_mm * 1e-3,
        pump_wavelength=pump_nm * units.NM,
        pump_sigma=units.fwhm_nm_to_sigma(pump_nm, pump_fwhm_nm),
        signal_wavelength=signal_nm * units.NM,
        idler_wavelength=idler_nm * units.NM,
        filter_sigma_signal=None if signal_filter_nm is None else units.fwhm_nm_to_sigma(signal_nm, signal_filter_nm),
        filter_sigma_idler=None if idler_filter_nm is None else units.fwhm_nm_to_sigma(idler_nm, idler_filter_nm),
        **kwargs,
    )
