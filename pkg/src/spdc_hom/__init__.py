"""Spectral modeling of SPDC photon pairs: HOM interference, indistinguishability and purity."""

from spdc_hom.dispersion import MaterialDispersion, inverse_group_velocity, load_material
from spdc_hom.engineering import (
    FilterScanResult,
    factorability_residual,
    filter_scan,
    perfect_indistinguishability_filter,
)
from spdc_hom.interference import (
    DipCurve,
    dip_shift,
    hom_dip_analytic,
    indistinguishability_analytic,
    indistinguishability_curve_numeric,
    visibility,
)
from spdc_hom.jsa import (
    GAMMA_PRESETS,
    GaussianJsaParams,
    GridSpec,
    JsaGrid,
    SourceConfig,
    exact_jsa,
    gaussian_jsa,
    gaussian_params,
    swap_axes,
)
from spdc_hom.purity import (
    ReducedDensityGrid,
    overlap_decomposition,
    purity_analytic,
    purity_curve_numeric,
    purity_dip_analytic,
    purity_numeric,
    reduced_density_grid,
)

__version__ = "0.1.0"
