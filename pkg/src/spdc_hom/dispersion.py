"""Sellmeier-family dispersion models and inverse group velocities.

Two coefficient layouts are supported, both with wavelengths in micrometers:

``gayer``
    ``n^2 = A1 + A2/(l^2 - A3^2) + A4/(l^2 - A5^2) - A6 l^2``
``sellmeier``
    ``n^2 = A + sum_k B_k l^2 / (l^2 - C_k)`` with coefficients
    ``A, B1, C1, B2, C2, ...`` (``C_k`` in um^2). A lone ``A`` gives a
    dispersionless toy material.

An optional temperature model adds ``b_k f(T)`` to coefficient ``k``, where
``f`` is a polynomial in temperature. The file format is documented in
``docs/material_format.md``.
"""

import configparser
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from spdc_hom.errors import MaterialLoadError, MaterialRangeError

FORMS = ("gayer", "sellmeier")
FD_STEP = 0.1e-9


@dataclass(frozen=True)
class TemperatureModel:
    """Temperature dependence ``coefficient_k += increments[axis][k] * f(T)``.

    ``f_poly`` holds ascending polynomial coefficients of ``f`` in the unit
    named by ``variable`` (``"celsius"`` or ``"kelvin"``).
    """

    f_poly: tuple
    increments: Mapping[str, tuple]
    variable: str = "celsius"

    def __post_init__(self):
        object.__setattr__(self, "increments", MappingProxyType(dict(self.increments)))

    def f(self, temperature_k):
        t = temperature_k - 273.15 if self.variable == "celsius" else temperature_k
        return float(np.polynomial.polynomial.polyval(t, self.f_poly))


@dataclass(frozen=True)
class MaterialDispersion:
    name: str
    sellmeier_coefficients: Mapping[str, tuple]
    valid_wavelength_range: tuple  # meters
    form: str = "sellmeier"
    temperature_model: Optional[TemperatureModel] = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "sellmeier_coefficients",
            MappingProxyType({k: tuple(v) for k, v in self.sellmeier_coefficients.items()}),
        )

    @property
    def axes(self):
        return tuple(self.sellmeier_coefficients)

    def coefficients(self, axis, temperature):
        try:
            coeffs = np.array(self.sellmeier_coefficients[axis], dtype=float)
        except KeyError:
            raise MaterialLoadError(
                f"material {self.name!r} has no axis {axis!r}; available: {', '.join(self.axes)}"
            ) from None
        tm = self.temperature_model
        if tm is not None and axis in tm.increments:
            inc = np.zeros_like(coeffs)
            b = np.asarray(tm.increments[axis], dtype=float)
            inc[: len(b)] = b
            coeffs = coeffs + inc * tm.f(temperature)
        return coeffs

    def check_range(self, wavelength):
        lo, hi = self.valid_wavelength_range
        wl = np.asarray(wavelength)
        if np.any(wl < lo) or np.any(wl > hi):
            raise MaterialRangeError(
                f"wavelength {wavelength!r} m outside validity range "
                f"[{lo:.4g}, {hi:.4g}] m of material {self.name!r}"
            )


def _n2_and_derivative(form, coeffs, lam_um):
    """Return ``n^2`` and ``d(n^2)/d lambda`` (per um) at ``lam_um``."""
    l2 = lam_um**2
    if form == "gayer":
        a1, a2, a3, a4, a5, a6 = coeffs
        d3 = l2 - a3**2
        d5 = l2 - a5**2
        n2 = a1 + a2 / d3 + a4 / d5 - a6 * l2
        dn2 = -2 * lam_um * a2 / d3**2 - 2 * lam_um * a4 / d5**2 - 2 * a6 * lam_um
        return n2, dn2
    n2 = coeffs[0] + 0.0 * lam_um
    dn2 = 0.0 * lam_um
    for b, c in zip(coeffs[1::2], coeffs[2::2]):
        d = l2 - c
        n2 = n2 + b * l2 / d
        dn2 = dn2 - 2 * b * c * lam_um / d**2
    return n2, dn2


def refractive_index(material, wavelength, temperature, axis):
    """Phase index on ``axis`` at a vacuum wavelength in meters and temperature in kelvin."""
    material.check_range(wavelength)
    coeffs = material.coefficients(axis, temperature)
    n2, _ = _n2_and_derivative(material.form, coeffs, np.asarray(wavelength) * 1e6)
    return np.sqrt(n2)


def _group_index_analytic(material, wavelength, temperature, axis):
    coeffs = material.coefficients(axis, temperature)
    lam_um = np.asarray(wavelength) * 1e6
    n2, dn2 = _n2_and_derivative(material.form, coeffs, lam_um)
    n = np.sqrt(n2)
    dn = dn2 / (2 * n)
    return n - lam_um * dn


def _group_index_fd(material, wavelength, temperature, axis, step=FD_STEP):
    h = step
    lam = np.asarray(wavelength, dtype=float)
    n = lambda x: refractive_index(material, x, temperature, axis)  # noqa: E731
    dn = (-n(lam + 2 * h) + 8 * n(lam + h) - 8 * n(lam - h) + n(lam - 2 * h)) / (12 * h)
    return n(lam) - lam * dn


def group_index(material, wavelength, temperature, axis, method="analytic"):
    material.check_range(wavelength)
    if method == "analytic":
        return _group_index_analytic(material, wavelength, temperature, axis)
    if method == "fd":
        return _group_index_fd(material, wavelength, temperature, axis)
    raise ValueError(f"unknown derivative method {method!r}")


def inverse_group_velocity(material, wavelength, temperature, axis, method="analytic"):
    """Inverse group velocity ``n_g / c`` in s/m.

    ``method="fd"`` uses a 5-point central difference of the phase index with
    a 0.1 nm step instead of the analytic derivative.
    """
    return group_index(material, wavelength, temperature, axis, method) / SPEED_OF_LIGHT


def _floats(text, what):
    try:
        return tuple(float(x) for x in text.replace("\n", ",").split(",") if x.strip())
    except ValueError as exc:
        raise MaterialLoadError(f"cannot parse {what}: {exc}") from None


def bundled_material_path(name):
    ref = resources.files("spdc_hom") / "data" / f"{name}.ini"
    if not ref.is_file():
        raise MaterialLoadError(f"no bundled material named {name!r}")
    return Path(str(ref))


def resolve_material(spec, base_dir=None):
    """Resolve ``spec`` as a file path (relative to ``base_dir``) or a bundled name."""
    p = Path(spec)
    if base_dir is not None and not p.is_absolute():
        candidate = Path(base_dir) / p
        if candidate.is_file():
            return candidate
    if p.is_file():
        return p
    if p.suffix == "" and len(p.parts) == 1:
        return bundled_material_path(spec)
    raise MaterialLoadError(f"material file not found: {spec}")


def load_material(path):
    """Parse and validate a material file.

    ``path`` may also be the name of a bundled material such as ``"ppln_mgo"``.
    """
    path = resolve_material(path)
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise MaterialLoadError(f"{path}: {exc}") from None

    if not parser.has_section("material"):
        raise MaterialLoadError(f"{path}: missing [material] section")
    sec = parser["material"]
    name = sec.get("name", Path(path).stem)
    form = sec.get("form", "sellmeier").strip().lower()
    if form not in FORMS:
        raise MaterialLoadError(f"{path}: unknown form {form!r}; expected one of {FORMS}")
    try:
        lo_um = sec.getfloat("valid_min_um")
        hi_um = sec.getfloat("valid_max_um")
    except ValueError as exc:
        raise MaterialLoadError(f"{path}: bad validity range: {exc}") from None
    if lo_um is None or hi_um is None:
        raise MaterialLoadError(f"{path}: valid_min_um and valid_max_um are required")
    if not (0 < lo_um < hi_um):
        raise MaterialLoadError(f"{path}: empty or non-positive validity range [{lo_um}, {hi_um}] um")

    coeffs = {}
    for section in parser.sections():
        if section.startswith("sellmeier."):
            axis = section.split(".", 1)[1]
            if "coefficients" not in parser[section]:
                raise MaterialLoadError(f"{path}: [{section}] missing 'coefficients'")
            values = _floats(parser[section]["coefficients"], f"[{section}] coefficients")
            if form == "gayer" and len(values) != 6:
                raise MaterialLoadError(f"{path}: [{section}] gayer form needs 6 coefficients, got {len(values)}")
            if form == "sellmeier" and len(values) % 2 != 1:
                raise MaterialLoadError(f"{path}: [{section}] sellmeier form needs A plus (B, C) pairs")
            coeffs[axis] = values
    if not coeffs:
        raise MaterialLoadError(f"{path}: no [sellmeier.<axis>] sections")

    tmodel = None
    if parser.has_section("temperature"):
        tsec = parser["temperature"]
        if "f_poly" not in tsec:
            raise MaterialLoadError(f"{path}: [temperature] missing 'f_poly'")
        variable = tsec.get("variable", "celsius").strip().lower()
        if variable not in ("celsius", "kelvin"):
            raise MaterialLoadError(f"{path}: [temperature] variable must be celsius or kelvin")
        increments = {}
        for axis in coeffs:
            if axis in tsec:
                inc = _floats(tsec[axis], f"[temperature] {axis}")
                if len(inc) > len(coeffs[axis]):
                    raise MaterialLoadError(f"{path}: [temperature] {axis} has more terms than coefficients")
                increments[axis] = inc
        tmodel = TemperatureModel(_floats(tsec["f_poly"], "[temperature] f_poly"), increments, variable)

    material = MaterialDispersion(
        name=name,
        sellmeier_coefficients=coeffs,
        valid_wavelength_range=(lo_um * 1e-6, hi_um * 1e-6),
        form=form,
        temperature_model=tmodel,
        description=sec.get("description", ""),
    )
    _validate_index(material, path)
    return material


def _validate_index(material, path, temperature=293.15):
    lo, hi = material.valid_wavelength_range
    wl = np.linspace(lo, hi, 257)
    for axis in material.axes:
        n2, _ = _n2_and_derivative(material.form, material.coefficients(axis, temperature), wl * 1e6)
        if not np.all(np.isfinite(n2)) or np.any(n2 <= 1.0):
            raise MaterialLoadError(
                f"{path}: axis {axis!r} gives a non-physical index inside the validity range"
            )


def constant_index_material(indices, name="toy", valid_range=(0.2e-6, 5e-6)):
    """Dispersionless material with one constant index per axis, for tests and toy sources."""
    for axis, n in indices.items():
        if not (n > 1 and math.isfinite(n)):
            raise MaterialLoadError(f"index on axis {axis!r} must be finite and > 1")
    return MaterialDispersion(
        name=name,
        sellmeier_coefficients={axis: (n * n,) for axis, n in indices.items()},
        valid_wavelength_range=valid_range,
        form="sellmeier",
    )
