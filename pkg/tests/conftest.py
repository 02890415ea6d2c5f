import numpy as np
import pytest

from spdc_hom.config import load_config, reference_config_path
from spdc_hom.dispersion import constant_index_material
from spdc_hom.jsa import GaussianJsaParams, SourceConfig, gaussian_params
from spdc_hom import units

PS = 1e-12

# Frozen from an independent mpmath evaluation of the Gayer MgO:LN model at
# 40 C (arbitrary-precision derivative), see tests/oracles.py.
N_P_780_O = 7.88702076371901e-9
N_S_1560_O = 7.54609337191959e-9
N_I_1560_E = 7.26619802268178e-9
REF_M = 6.81854783598834e-12
REF_N = 1.24164548207447e-11
REF_SHIFT = 2.79895349237817e-12
REF_I_ALPHA = 0.893880502545
REF_P_ALPHA = 0.558117945174
REF_I_ALPHA2 = 0.990607105659
REF_RESIDUAL = 2.12983256556


@pytest.fixture(scope="session")
def ref_cfg():
    return load_config(reference_config_path()).source


@pytest.fixture(scope="session")
def ref_params(ref_cfg):
    return gaussian_params(ref_cfg)


def toy_source(n_p=2.3, n_s=2.2, n_i=2.2, length_mm=20.0, pump_fwhm_nm=0.2, filter_nm=1.4, **kw):
    """Degenerate 780 -> 1560 nm source in a dispersionless three-axis material."""
    mat = constant_index_material({"p": n_p, "s": n_s, "i": n_i})
    sf = None if filter_nm is None else units.fwhm_nm_to_sigma(1560.0, filter_nm)
    kw.setdefault("filter_sigma_signal", sf)
    kw.setdefault("filter_sigma_idler", sf)
    return SourceConfig(
        material=mat,
        crystal_length=length_mm * 1e-3,
        pump_wavelength=780e-9,
        pump_sigma=units.fwhm_nm_to_sigma(780.0, pump_fwhm_nm),
        signal_wavelength=1560e-9,
        pump_axis="p",
        signal_axis="s",
        idler_axis="i",
        **kw,
    )


def random_params(rng, max_corr=0.9):
    """Admissible Gaussian parameters on a picosecond scale."""
    a = rng.uniform(1.0, 50.0) * PS**2
    b = a * np.exp(rng.uniform(-np.log(8.0), np.log(8.0)))
    c = rng.uniform(-max_corr, max_corr) * np.sqrt(a * b)
    m, n = rng.uniform(-10.0, 10.0, size=2) * PS
    return GaussianJsaParams(a, b, c, m, n)
