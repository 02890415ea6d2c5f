"""Single-photon spectral purity.

The reduced state of one photon is the kernel
``rho(O, O') = int dO_other Phi(O, O_other) Phi*(O', O_other)``. All traces
use the trapezoid weights ``w`` of the grid: the matrix ``sqrt(w) rho sqrt(w)``
has the Schmidt coefficients as eigenvalues, so ``Tr[rho^2]`` from the
density grid and ``sum(lambda_k^2)`` from an SVD of ``sqrt(w_s) Phi sqrt(w_i)``
are two independent routes to the same number.
"""

from dataclasses import dataclass

import numpy as np

from spdc_hom.errors import DomainError, NumericalConsistencyError, NumericalError, ResolutionError, ShapeError
from spdc_hom.interference import IMAG_TOL, DipCurve, delay_transform
from spdc_hom.jsa import trapezoid_weights

TRACE_TOL = 1e-4
IDENTITY_TOL = 1e-8


@dataclass(frozen=True)
class ReducedDensityGrid:
    omega_axis: np.ndarray
    values: np.ndarray
    trace: float = 1.0

    def __post_init__(self):
        axis = np.array(self.omega_axis, dtype=float)
        values = np.array(self.values, dtype=complex)
        if values.shape != (axis.size, axis.size):
            raise ShapeError("density matrix must be square and match its axis")
        axis.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "omega_axis", axis)
        object.__setattr__(self, "values", values)

    def weights(self):
        return trapezoid_weights(self.omega_axis)

    def kernel(self):
        """Discretized operator ``sqrt(w) rho sqrt(w)``."""
        sw = np.sqrt(self.weights())
        return sw[:, None] * self.values * sw[None, :]

    def hermiticity_error(self):
        return float(np.max(np.abs(self.values - self.values.conj().T)))

    def eigenvalues(self):
        k = self.kernel()
        return np.linalg.eigvalsh(0.5 * (k + k.conj().T))


def reduced_density_grid(grid, which="signal"):
    """Trace out the other photon. ``which`` is ``"signal"`` or ``"idler"``."""
    phi = grid.values
    if which == "signal":
        axis = grid.omega_s
        w = trapezoid_weights(grid.omega_i)
        rho = (phi * w[None, :]) @ phi.conj().T
    elif which == "idler":
        axis = grid.omega_i
        w = trapezoid_weights(grid.omega_s)
        rho = (phi.T * w[None, :]) @ phi.conj()
    else:
        raise ValueError(f"which must be 'signal' or 'idler', got {which!r}")
    trace = float(np.real(np.sum(np.diag(rho) * trapezoid_weights(axis))))
    if abs(trace - 1.0) > TRACE_TOL:
        raise ResolutionError(f"reduced state trace {trace:.6f} deviates from 1; normalize the JSA first")
    return ReducedDensityGrid(axis, rho / trace, trace=1.0)


def schmidt_coefficients(grid):
    """Squared singular values of ``sqrt(w_s) Phi sqrt(w_i)``, normalized to sum to one."""
    ws = np.sqrt(trapezoid_weights(grid.omega_s))
    wi = np.sqrt(trapezoid_weights(grid.omega_i))
    try:
        s = np.linalg.svd(ws[:, None] * grid.values * wi[None, :], compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from None
    lam = s**2
    return lam / lam.sum()


def purity_numeric(grid):
    lam = schmidt_coefficients(grid)
    return float(np.sum(lam**2))


def trace_square(rho):
    k = rho.kernel()
    return float(np.real(np.sum(k * k.T)))


def purity_analytic(p):
    """``P = sqrt(1 - c^2 / (ab))``."""
    if not (p.a > 0 and p.b > 0):
        raise DomainError("purity needs a, b > 0")
    ratio = p.c**2 / (p.a * p.b)
    if ratio > 1.0 + 1e-12:
        raise DomainError(f"c^2 > ab (c^2/ab = {ratio:.6g})")
    return float(np.sqrt(max(0.0, 1.0 - ratio)))


def purity_dip_analytic(p, delays, multipair=False, photon="signal"):
    """Dip for two independent, identically prepared photons.

    ``R = (1 - V exp(-t^2 / w)) / 2`` with ``V = P`` (``P / 3`` when
    ``multipair``) and ``w = a`` for the signal photon or ``b`` for the idler.
    """
    width = {"signal": p.a, "idler": p.b}.get(photon)
    if width is None:
        raise ValueError("photon must be 'signal' or 'idler'")
    if not width > 0:
        raise DomainError("width parameter must be positive")
    depth = purity_analytic(p)
    if multipair:
        depth /= 3.0
    t = np.asarray(delays, dtype=float)
    r = 0.5 * (1.0 - depth * np.exp(-(t**2) / width))
    return DipCurve(t, r, "analytic-gaussian", label="independent")


def _check_axes(rho1, rho2):
    if rho1.omega_axis.shape != rho2.omega_axis.shape or not np.allclose(
        rho1.omega_axis, rho2.omega_axis, rtol=1e-12, atol=0.0
    ):
        raise ShapeError("density grids must share the same frequency axis")


def purity_curve_numeric(rho1, rho2, delays, model_tag="numeric-exact", imag_tol=IMAG_TOL):
    """Coincidence dip of two independent photons in states ``rho1`` and ``rho2``.

    Evaluates ``P(t) = Tr[rho1 rho2(t)]`` where ``rho2(t)`` carries the delay
    phase ``exp[-i (O - O') t]``; ``P(0) = Tr[rho1 rho2]``.
    """
    _check_axes(rho1, rho2)
    delays = np.asarray(delays, dtype=float)
    if delays.size == 0:
        raise ShapeError("no delays requested")
    w = rho1.weights()
    kernel = rho1.values * rho2.values.conj() * np.outer(w, w)
    spacing = rho1.omega_axis[1] - rho1.omega_axis[0]
    overlap = delay_transform(kernel, spacing, delays)
    residual = float(np.max(np.abs(overlap.imag)))
    if residual > imag_tol:
        raise NumericalConsistencyError(f"imaginary part of P(t) is {residual:.2e}")
    return DipCurve(delays, 0.5 * (1.0 - overlap.real), model_tag, label="independent", imag_residual=residual)


@dataclass(frozen=True)
class OverlapDecomposition:
    tr_rho1_rho2: float
    tr_rho1_sq: float
    tr_rho2_sq: float
    hs_distance_sq: float


def overlap_decomposition(rho1, rho2):
    """``Tr[rho1 rho2]``, both purities and ``||rho1 - rho2||^2``.

    Checks ``Tr[rho1 rho2] = (Tr rho1^2 + Tr rho2^2 - ||rho1 - rho2||^2) / 2``.
    """
    _check_axes(rho1, rho2)
    k1, k2 = rho1.kernel(), rho2.kernel()
    cross = float(np.real(np.sum(k1 * k2.T)))
    p1 = float(np.real(np.sum(k1 * k1.T)))
    p2 = float(np.real(np.sum(k2 * k2.T)))
    diff = k1 - k2
    hs = float(np.real(np.sum(diff.conj() * diff)))
    if abs(cross - 0.5 * (p1 + p2 - hs)) > IDENTITY_TOL:
        raise NumericalConsistencyError("overlap identity violated; density grids are not Hermitian")
    return OverlapDecomposition(cross, p1, p2, hs)
