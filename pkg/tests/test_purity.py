import numpy as np
import pytest

from conftest import REF_P_ALPHA, PS
from spdc_hom.errors import DomainError, ResolutionError, ShapeError
from spdc_hom.interference import indistinguishability_analytic, visibility
from spdc_hom.jsa import GaussianJsaParams, GridSpec, JsaGrid, default_delays, exact_jsa, gaussian_jsa
from spdc_hom.purity import (
    ReducedDensityGrid,
    overlap_decomposition,
    purity_analytic,
    purity_curve_numeric,
    purity_dip_analytic,
    purity_numeric,
    reduced_density_grid,
    schmidt_coefficients,
    trace_square,
)

CORRELATED = GaussianJsaParams(3 * PS**2, 2 * PS**2, 1.5 * PS**2, 2 * PS, 5 * PS)


@pytest.fixture(scope="module")
def correlated_grid():
    return gaussian_jsa(CORRELATED, GridSpec(points_per_axis=256))


def test_ref_purity_closed_form(ref_params):
    assert purity_analytic(ref_params) == pytest.approx(REF_P_ALPHA, abs=1e-9)


def test_uncorrelated_is_pure():
    assert purity_analytic(GaussianJsaParams(PS**2, 4 * PS**2, 0.0)) == pytest.approx(1.0, abs=1e-9)


def test_maximally_correlated_limit_gives_zero():
    p = GaussianJsaParams(PS**2, 4 * PS**2, 2 * PS**2)
    assert purity_analytic(p) == 0.0
    with pytest.raises(DomainError):
        purity_analytic(GaussianJsaParams(PS**2, PS**2, 1.5 * PS**2))


def test_svd_and_trace_routes_agree(correlated_grid):
    rho = reduced_density_grid(correlated_grid, "signal")
    assert purity_numeric(correlated_grid) == pytest.approx(trace_square(rho), abs=1e-6)
    assert purity_numeric(correlated_grid) == pytest.approx(purity_analytic(CORRELATED), abs=1e-6)


def test_density_grid_invariants(correlated_grid):
    for which in ("signal", "idler"):
        rho = reduced_density_grid(correlated_grid, which)
        assert rho.hermiticity_error() < 1e-12 * np.max(np.abs(rho.values))
        ev = rho.eigenvalues()
        assert ev.min() > -1e-10
        assert ev.sum() == pytest.approx(1.0, abs=1e-10)


def test_both_reduced_states_share_purity(correlated_grid):
    ps = trace_square(reduced_density_grid(correlated_grid, "signal"))
    pi = trace_square(reduced_density_grid(correlated_grid, "idler"))
    assert ps == pytest.approx(pi, abs=1e-10)


def test_schmidt_coefficients_normalized(correlated_grid):
    lam = schmidt_coefficients(correlated_grid)
    assert lam.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(lam) <= 1e-15)


def test_unnormalized_grid_rejected(correlated_grid):
    scaled = JsaGrid(correlated_grid.omega_s, correlated_grid.omega_i, 2 * correlated_grid.values)
    with pytest.raises(ResolutionError):
        reduced_density_grid(scaled)
    with pytest.raises(ValueError):
        reduced_density_grid(correlated_grid, "pump")


def test_numeric_purity_curve_matches_closed_form(correlated_grid):
    rho = reduced_density_grid(correlated_grid, "signal")
    delays = default_delays(CORRELATED, count=201, include_zero=True)
    numeric = purity_curve_numeric(rho, rho, delays, model_tag="numeric-gaussian")
    analytic = purity_dip_analytic(CORRELATED, delays)
    assert np.max(np.abs(numeric.r_cc - analytic.r_cc)) < 1e-6
    assert numeric.minimum_delay == 0.0


def test_idler_photon_width_uses_b():
    delays = np.linspace(-20, 20, 401) * PS
    s = purity_dip_analytic(CORRELATED, delays, photon="signal")
    i = purity_dip_analytic(CORRELATED, delays, photon="idler")
    assert s.r_cc.min() == pytest.approx(i.r_cc.min())
    # a > b, so the signal dip is the wider one
    assert np.sum(0.5 - s.r_cc) > np.sum(0.5 - i.r_cc)


def test_multipair_scales_visibility_by_one_third(ref_params):
    delays = default_delays(ref_params, count=401, include_zero=True)
    v1 = visibility(purity_dip_analytic(ref_params, delays))
    v3 = visibility(purity_dip_analytic(ref_params, delays, multipair=True))
    assert v3 == pytest.approx(v1 / 3, rel=1e-6)


def test_equal_widths_do_not_imply_purity():
    p = GaussianJsaParams(2 * PS**2, 2 * PS**2, 1.0 * PS**2)
    assert indistinguishability_analytic(p) == pytest.approx(1.0, abs=1e-12)
    assert purity_analytic(p) < 0.9


def test_overlap_identity_and_self_overlap(correlated_grid):
    rho = reduced_density_grid(correlated_grid)
    d = overlap_decomposition(rho, rho)
    assert d.hs_distance_sq == pytest.approx(0.0, abs=1e-14)
    assert d.tr_rho1_rho2 == pytest.approx(d.tr_rho1_sq, abs=1e-12)


def test_disjoint_supports_do_not_interfere():
    p = GaussianJsaParams(16 * PS**2, 16 * PS**2, 0.0)
    spec = GridSpec(points_per_axis=256, half_width=4e12)
    left = reduced_density_grid(gaussian_jsa(p, spec, offset=(-2e12, 0.0)))
    right = reduced_density_grid(gaussian_jsa(p, spec, offset=(2e12, 0.0)))
    d = overlap_decomposition(left, right)
    assert abs(d.tr_rho1_rho2) < 1e-10
    assert d.hs_distance_sq == pytest.approx(d.tr_rho1_sq + d.tr_rho2_sq, abs=1e-8)
    curve = purity_curve_numeric(left, right, [0.0, 1 * PS], model_tag="numeric-gaussian")
    assert np.allclose(curve.r_cc, 0.5, atol=1e-10)


def test_detuned_copy_reduces_overlap():
    p = GaussianJsaParams(16 * PS**2, 16 * PS**2, 0.0)
    spec = GridSpec(points_per_axis=256, half_width=4e12)
    base = reduced_density_grid(gaussian_jsa(p, spec))
    shifted = reduced_density_grid(gaussian_jsa(p, spec, offset=(0.25e12, 0.0)))
    d = overlap_decomposition(base, shifted)
    # pure Gaussians of amplitude sigma s: overlap exp(-delta^2 / (4 s^2)) with s^2 = 1/a
    s2 = 1.0 / p.a
    assert d.tr_rho1_rho2 == pytest.approx(np.exp(-(0.25e12) ** 2 / (4 * s2)), abs=1e-8)


def test_exact_ref_grid_purity_paths_agree(ref_cfg):
    grid = exact_jsa(ref_cfg)
    rho = reduced_density_grid(grid)
    assert purity_numeric(grid) == pytest.approx(trace_square(rho), abs=1e-6)
    overlap_decomposition(rho, reduced_density_grid(grid, "idler"))


def test_mismatched_axes_rejected():
    a = ReducedDensityGrid(np.linspace(-1, 1, 4), np.eye(4))
    b = ReducedDensityGrid(np.linspace(-2, 2, 4), np.eye(4))
    with pytest.raises(ShapeError):
        overlap_decomposition(a, b)
