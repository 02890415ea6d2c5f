"""Text and binary writers for grids, curves and scans.

CSV files are comma-separated with one header line and floats written with
9 significant digits. The binary JSA layout (little-endian throughout) is:

    uint64 n_s, uint64 n_i,
    float64[n_s] omega_s, float64[n_i] omega_i,
    float64[n_s * n_i * 2] values as (re, im) pairs, row-major over (s, i).
"""

import struct

import numpy as np

from spdc_hom.jsa import JsaGrid
from spdc_hom.units import FS

FMT = "%.9g"


def _write(path, header, columns):
    data = np.column_stack(columns)
    np.savetxt(path, data, delimiter=",", header=header, comments="", fmt=FMT)


def write_jsa_csv(grid, path):
    os_, oi = np.meshgrid(grid.omega_s, grid.omega_i, indexing="ij")
    _write(
        path,
        "omega_s_rad_per_s,omega_i_rad_per_s,re_phi,im_phi",
        [os_.ravel(), oi.ravel(), grid.values.real.ravel(), grid.values.imag.ravel()],
    )


def write_jsa_binary(grid, path):
    with open(path, "wb") as fh:
        fh.write(struct.pack("<QQ", grid.omega_s.size, grid.omega_i.size))
        fh.write(grid.omega_s.astype("<f8").tobytes())
        fh.write(grid.omega_i.astype("<f8").tobytes())
        pairs = np.empty(grid.values.shape + (2,), dtype="<f8")
        pairs[..., 0] = grid.values.real
        pairs[..., 1] = grid.values.imag
        fh.write(pairs.tobytes(order="C"))


def read_jsa_binary(path, model="exact"):
    with open(path, "rb") as fh:
        ns, ni = struct.unpack("<QQ", fh.read(16))
        omega_s = np.frombuffer(fh.read(8 * ns), dtype="<f8")
        omega_i = np.frombuffer(fh.read(8 * ni), dtype="<f8")
        pairs = np.frombuffer(fh.read(16 * ns * ni), dtype="<f8").reshape(ns, ni, 2)
    return JsaGrid(omega_s, omega_i, pairs[..., 0] + 1j * pairs[..., 1], model=model)


def write_curves_csv(path, delays, curves):
    """Write ``delay_fs`` followed by one ``r_cc`` column per curve.

    ``curves`` maps column names to :class:`DipCurve` objects sharing ``delays``.
    """
    names = list(curves)
    header = "delay_fs," + ",".join(names)
    _write(path, header, [np.asarray(delays) / FS] + [curves[k].r_cc for k in names])


def write_dip_csv(curve, path):
    _write(path, f"delay_fs,r_cc_{curve.model_tag}", [curve.delays / FS, curve.r_cc])


def write_density_csv(rho, path):
    x, y = np.meshgrid(rho.omega_axis, rho.omega_axis, indexing="ij")
    _write(
        path,
        "omega_rad_per_s,omega_prime_rad_per_s,re_rho,im_rho",
        [x.ravel(), y.ravel(), rho.values.real.ravel(), rho.values.imag.ravel()],
    )


def write_schmidt_csv(coefficients, path):
    k = np.arange(len(coefficients))
    np.savetxt(path, np.column_stack([k, coefficients]), delimiter=",",
               header="k,lambda_k", comments="", fmt=["%d", FMT])


def write_scan_csv(result, path):
    _write(path, f"sigma_fwhm_nm,{result.objective}", [result.fwhm_nm(), result.objective_values])
