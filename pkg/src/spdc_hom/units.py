"""Conversions between laboratory units and angular-frequency detunings.

Bandwidths given in nm are intensity FWHM. Internally a spectral width is the
``sigma`` of an amplitude envelope ``exp(-Omega**2 / (4 sigma**2))``, whose
intensity ``exp(-Omega**2 / (2 sigma**2))`` has FWHM ``2 sqrt(2 ln 2) sigma``.
"""

import math

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from spdc_hom.errors import DomainError

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))

NM = 1e-9
FS = 1e-15


def _check_positive(name, value):
    if not np.all(np.asarray(value) > 0):
        raise DomainError(f"{name} must be positive, got {value!r}")


def wavelength_to_angular_frequency(wavelength):
    """Return ``2 pi c / wavelength`` in rad/s for a vacuum wavelength in meters."""
    _check_positive("wavelength", wavelength)
    return 2.0 * math.pi * SPEED_OF_LIGHT / wavelength


def angular_frequency_to_wavelength(omega):
    _check_positive("omega", omega)
    return 2.0 * math.pi * SPEED_OF_LIGHT / omega


def fwhm_to_sigma(lambda0, dlambda_fwhm):
    """Convert an intensity FWHM in wavelength to an amplitude sigma in rad/s.

    Both arguments are in meters. Uses the first-order relation
    ``d omega = 2 pi c d lambda / lambda0**2``.
    """
    _check_positive("lambda0", lambda0)
    _check_positive("dlambda_fwhm", dlambda_fwhm)
    domega_fwhm = 2.0 * math.pi * SPEED_OF_LIGHT * dlambda_fwhm / lambda0**2
    return domega_fwhm / FWHM_PER_SIGMA


def sigma_to_fwhm(lambda0, sigma):
    """Inverse of :func:`fwhm_to_sigma`; returns the FWHM in meters."""
    _check_positive("lambda0", lambda0)
    _check_positive("sigma", sigma)
    return sigma * FWHM_PER_SIGMA * lambda0**2 / (2.0 * math.pi * SPEED_OF_LIGHT)


def fwhm_nm_to_sigma(lambda0_nm, dlambda_fwhm_nm):
    return fwhm_to_sigma(lambda0_nm * NM, dlambda_fwhm_nm * NM)


def sigma_to_fwhm_nm(lambda0_nm, sigma):
    return sigma_to_fwhm(lambda0_nm * NM, sigma) / NM


def celsius_to_kelvin(t):
    return t + 273.15


def kelvin_to_celsius(t):
    return t - 273.15
