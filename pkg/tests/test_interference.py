import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import REF_I_ALPHA, REF_I_ALPHA2, REF_SHIFT, PS, random_params, toy_source
from spdc_hom.errors import DomainError, NumericalConsistencyError, RangeWarning, ResolutionError, ShapeError
from spdc_hom.interference import (
    DipCurve,
    diagonal_sums,
    dip_shift,
    doubling_check,
    exchange_overlap,
    hom_dip_analytic,
    indistinguishability_analytic,
    indistinguishability_curve_numeric,
    visibility,
)
from spdc_hom.jsa import GaussianJsaParams, GridSpec, default_delays, gaussian_jsa, gaussian_params


def brute_overlap(grid, t):
    """Direct double sum of Phi(Os, Oi) Phi*(Oi, Os) exp[-i (Os - Oi) t] w_s w_i."""
    phi = grid.values
    ws = grid.weights()
    total = 0j
    for j, os_ in enumerate(grid.omega_s):
        for k, oi in enumerate(grid.omega_i):
            total += phi[j, k] * np.conj(phi[k, j]) * np.exp(-1j * (os_ - oi) * t) * ws[j, k]
    return total


def test_equal_a_b_is_perfectly_indistinguishable():
    p = GaussianJsaParams(3 * PS**2, 3 * PS**2, 1.2 * PS**2)
    assert indistinguishability_analytic(p) == pytest.approx(1.0, abs=1e-12)


def test_uncorrelated_unequal_widths():
    p = GaussianJsaParams(2 * PS**2, 1 * PS**2, 0.0)
    expected = np.sqrt(8.0 / 9.0)
    assert indistinguishability_analytic(p) == pytest.approx(expected, rel=1e-12)
    grid = gaussian_jsa(p, GridSpec(points_per_axis=256))
    assert exchange_overlap(grid, [0.0])[0].real == pytest.approx(expected, abs=1e-6)


def test_inadmissible_params_raise():
    with pytest.raises(DomainError):
        indistinguishability_analytic(GaussianJsaParams(PS**2, PS**2, 2 * PS**2))


def test_analytic_ref_values(ref_params, ref_cfg):
    assert indistinguishability_analytic(ref_params) == pytest.approx(REF_I_ALPHA, abs=1e-9)
    alt = gaussian_params(ref_cfg.with_(gamma="alpha2"))
    assert indistinguishability_analytic(alt) == pytest.approx(REF_I_ALPHA2, abs=1e-9)


def test_diagonal_sums_matches_loops():
    rng = np.random.default_rng(0)
    k = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    g = diagonal_sums(k)
    for q in range(-6, 7):
        assert g[q + 6] == pytest.approx(np.trace(k, offset=-q))


def test_fast_overlap_matches_brute_force():
    p = GaussianJsaParams(4 * PS**2, 2 * PS**2, 0.8 * PS**2, 1.5 * PS, -2.0 * PS)
    grid = gaussian_jsa(p, GridSpec(points_per_axis=64), check_refinement=False)
    delays = [-0.7 * PS, 0.0, 1.3 * PS]
    fast = exchange_overlap(grid, delays)
    for t, f in zip(delays, fast):
        assert f == pytest.approx(brute_overlap(grid, t), abs=1e-12)


def test_numeric_gaussian_curve_matches_closed_form(ref_params):
    grid = gaussian_jsa(ref_params)
    delays = default_delays(ref_params, count=201)
    numeric = indistinguishability_curve_numeric(grid, delays)
    analytic = hom_dip_analytic(ref_params, delays)
    assert numeric.model_tag == "numeric-gaussian"
    assert np.max(np.abs(numeric.r_cc - analytic.r_cc)) < 1e-6
    assert numeric.imag_residual < 1e-8


def test_dip_is_centered_on_walkoff_shift(ref_params):
    assert ref_params.delay_shift == pytest.approx(REF_SHIFT, rel=1e-6)
    delays = default_delays(ref_params, count=401, include_zero=True)
    curve = hom_dip_analytic(ref_params, delays)
    assert curve.minimum_delay == pytest.approx(REF_SHIFT, abs=delays[1] - delays[0])


def test_dip_shift_from_config(ref_cfg):
    assert dip_shift(ref_cfg) == pytest.approx(REF_SHIFT, rel=1e-6)


def test_dip_shift_vanishes_for_equal_group_indices():
    assert dip_shift(toy_source(n_s=2.2, n_i=2.2)) == 0.0


def test_dip_shift_linear_in_length():
    s1 = dip_shift(toy_source(n_s=2.2, n_i=2.25, length_mm=10))
    s2 = dip_shift(toy_source(n_s=2.2, n_i=2.25, length_mm=30))
    assert s2 == pytest.approx(3 * s1, rel=1e-12)
    assert s1 < 0


def test_visibility_of_flat_curve_is_zero():
    t = np.linspace(-1, 1, 101) * PS
    assert visibility(DipCurve(t, np.full_like(t, 0.5), "analytic-gaussian")) == 0.0


def test_visibility_of_ideal_dip():
    p = GaussianJsaParams(PS**2, PS**2, 0.0)
    curve = hom_dip_analytic(p, default_delays(p, count=401, include_zero=True))
    assert visibility(curve) == pytest.approx(1.0, abs=1e-9)


def test_short_delay_span_warns_or_raises():
    p = GaussianJsaParams(PS**2, PS**2, 0.0)
    curve = hom_dip_analytic(p, np.linspace(-1, 1, 51) * PS)
    with pytest.warns(RangeWarning):
        visibility(curve)
    with pytest.raises(ResolutionError):
        visibility(curve, strict=True)


def test_large_delay_baseline_is_half(ref_params):
    curve = hom_dip_analytic(ref_params, np.array([-50, 50]) * PS)
    assert np.allclose(curve.r_cc, 0.5, atol=1e-3)


def test_dipcurve_rejects_out_of_bounds_and_bad_tags():
    t = np.zeros(3)
    with pytest.raises(NumericalConsistencyError):
        DipCurve(t, np.array([0.1, 0.6, 0.2]), "analytic-gaussian")
    with pytest.raises(ValueError):
        DipCurve(t, np.zeros(3), "made-up")
    with pytest.raises(ShapeError):
        DipCurve(t, np.zeros(4), "analytic-gaussian")


def test_stronger_dispersion_weight_lowers_indistinguishability(ref_cfg):
    values = [indistinguishability_analytic(gaussian_params(ref_cfg.with_(gamma=g))) for g in (0.02, 0.1, 0.193, 0.4)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_doubling_check_converges(ref_params):
    res = doubling_check(lambda n: gaussian_jsa(ref_params, GridSpec(points_per_axis=n)), 256, ref_params.delay_shift)
    assert res["error_estimate"] < 1e-6
    assert res["richardson"] == pytest.approx(indistinguishability_analytic(ref_params), abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_quadrature_agrees_with_closed_form(seed):
    p = random_params(np.random.default_rng(seed))
    grid = gaussian_jsa(p, GridSpec(points_per_axis=256))
    value = exchange_overlap(grid, [p.delay_shift])[0]
    assert value.real == pytest.approx(indistinguishability_analytic(p), abs=1e-4)
    assert abs(value.imag) < 1e-8
