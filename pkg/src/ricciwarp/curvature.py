"""Curvature operators on coordinate patches by finite differences.

This module is the measurement instrument of the package: Christoffel
symbols, Ricci tensor, Hessian, gradient and Laplacian of scalar fields,
and the gradient-soliton residual Ric + Hess(psi) - lam * g, all computed
from pointwise metric evaluations with fourth-order stencils.  No closed
form is assumed anywhere here, which is what lets these routines act as an
independent oracle for the structured formulas elsewhere in the package.

Index conventions.  ``christoffel`` returns ``Gamma[i, j, k]`` for
Gamma^i_{jk}; derivative tensors are indexed with the derivative axes
first, e.g. ``dg[c, a, b] = d_c g_{ab}``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .fd import value_grad, value_jet
from .patches import DegenerateMetricError, MetricPatch, ScalarField

__all__ = [
    "DEFAULT_STEP",
    "CONDITION_LIMIT",
    "christoffel",
    "ricci_fd",
    "hessian_fd",
    "gradient_laplacian",
    "GradientData",
    "soliton_residual",
    "transform_chart",
]

DEFAULT_STEP = 1e-3
# curvature differencing amplifies metric ill-conditioning; refuse beyond this
CONDITION_LIMIT = 1e10

# interior margins, in stencil steps
_MARGIN_FIRST = 2   # christoffel, hessian, gradient
_MARGIN_SECOND = 4  # ricci, soliton residual


def _inverse_metric(g0: np.ndarray, label: str) -> np.ndarray:
    if not np.all(np.isfinite(g0)):
        raise DegenerateMetricError(f"metric of '{label}' is not finite")
    if np.abs(g0 - g0.T).max() > 1e-9 * (1.0 + np.abs(g0).max()):
        raise DegenerateMetricError(f"metric of '{label}' is not symmetric")
    eigs = np.linalg.eigvalsh(g0)
    if eigs[0] <= 0.0:
        raise DegenerateMetricError(
            f"metric of '{label}' is not positive definite "
            f"(smallest eigenvalue {eigs[0]:.2e})")
    if eigs[-1] > CONDITION_LIMIT * eigs[0]:
        raise DegenerateMetricError(
            f"metric of '{label}' has condition number "
            f"{eigs[-1] / eigs[0]:.2e} (limit {CONDITION_LIMIT:.0e})")
    return np.linalg.inv(g0)


def _gamma_from_jet(g0: np.ndarray, dg: np.ndarray, label: str):
    ginv = _inverse_metric(g0, label)
    # T[j,k,l] = d_j g_{kl} + d_k g_{jl} - d_l g_{jk}
    T = dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (2, 1, 0))
    return 0.5 * np.einsum("il,jkl->ijk", ginv, T), ginv, T


def christoffel(patch: MetricPatch, x, h: float = DEFAULT_STEP) -> np.ndarray:
    """Christoffel symbols Gamma^i_{jk} of the Levi-Civita connection.

    Parameters
    ----------
    patch : MetricPatch
    x : array_like
        Chart point, at least ``2h`` inside the domain.
    h : float
        Stencil step.

    Returns
    -------
    ndarray, shape (dim, dim, dim)
        ``Gamma[i, j, k]``, symmetric in (j, k).
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    patch.require_interior(x, _MARGIN_FIRST * h)
    g0, dg = value_grad(patch.metric, x, h)
    Gamma, _, _ = _gamma_from_jet(g0, dg, patch.label)
    return Gamma


def ricci_fd(patch: MetricPatch, x, h: float = DEFAULT_STEP) -> np.ndarray:
    """Ricci tensor components by finite differences.

    Uses the coordinate formula
    ``R_{jk} = d_i Gamma^i_{jk} - d_j Gamma^i_{ik}
    + Gamma^i_{ip} Gamma^p_{jk} - Gamma^i_{jp} Gamma^p_{ik}``
    with the Gamma derivatives expanded analytically in terms of first and
    second metric derivatives, so the metric is differenced only once.
    The result is symmetrized before returning; truncation error is
    O(h^4) on smooth metrics, with an O(eps/h^2) rounding floor.

    ``x`` must be at least ``4h`` inside the domain.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    patch.require_interior(x, _MARGIN_SECOND * h)
    g0, dg, d2g = value_jet(patch.metric, x, h)
    Gamma, ginv, T = _gamma_from_jet(g0, dg, patch.label)
    dginv = -np.einsum("ia,cab,bl->cil", ginv, dg, ginv)
    # dT[c,j,k,l] = d_c (d_j g_{kl} + d_k g_{jl} - d_l g_{jk})
    dT = d2g + np.transpose(d2g, (0, 2, 1, 3)) - np.transpose(d2g, (0, 3, 2, 1))
    dGamma = 0.5 * (np.einsum("cil,jkl->cijk", dginv, T)
                    + np.einsum("il,cjkl->cijk", ginv, dT))
    R = (np.einsum("iijk->jk", dGamma)
         - np.einsum("jiik->jk", dGamma)
         + np.einsum("iip,pjk->jk", Gamma, Gamma)
         - np.einsum("ijp,pik->jk", Gamma, Gamma))
    return 0.5 * (R + R.T)


def hessian_fd(patch: MetricPatch, u: ScalarField, x, h: float = DEFAULT_STEP) -> np.ndarray:
    """Covariant Hessian of a scalar field: d^2 u - Gamma . du, componentwise."""
    if h <= 0:
        raise ValueError("step h must be positive")
    patch.require_interior(x, _MARGIN_FIRST * h)
    g0, dg = value_grad(patch.metric, x, h)
    Gamma, _, _ = _gamma_from_jet(g0, dg, patch.label)
    _, du, d2u = value_jet(lambda p: u(p), x, h)
    return d2u - np.einsum("ijk,i->jk", Gamma, du)


class GradientData(NamedTuple):
    gradient: np.ndarray      # contravariant components g^{-1} du
    laplacian: float          # trace of the Hessian w.r.t. g
    grad_norm_sq: float       # |grad u|^2 = du . g^{-1} du


def gradient_laplacian(patch: MetricPatch, u: ScalarField, x,
                       h: float = DEFAULT_STEP) -> GradientData:
    """Gradient vector, Laplacian, and squared gradient norm of ``u`` at ``x``."""
    if h <= 0:
        raise ValueError("step h must be positive")
    patch.require_interior(x, _MARGIN_FIRST * h)
    g0, dg = value_grad(patch.metric, x, h)
    Gamma, ginv, _ = _gamma_from_jet(g0, dg, patch.label)
    _, du, d2u = value_jet(lambda p: u(p), x, h)
    hess = d2u - np.einsum("ijk,i->jk", Gamma, du)
    grad = ginv @ du
    return GradientData(gradient=grad,
                        laplacian=float(np.einsum("ij,ij->", ginv, hess)),
                        grad_norm_sq=float(du @ ginv @ du))


def soliton_residual(patch: MetricPatch, psi: ScalarField, lam: float, x,
                     h: float = DEFAULT_STEP):
    """Gradient-soliton residual Ric + Hess(psi) - lam * g at a point.

    Returns ``(matrix, frobenius_norm)``.  A norm at the discretization
    floor certifies the soliton equation at ``x``.
    """
    patch.require_interior(x, _MARGIN_SECOND * h)
    R = ricci_fd(patch, x, h)
    H = hessian_fd(patch, psi, x, h)
    res = R + H - lam * patch.metric(x)
    return res, float(np.linalg.norm(res))


def transform_chart(patch: MetricPatch, A, label: str | None = None) -> MetricPatch:
    """Pull a patch back along the linear chart map y -> A y.

    The new patch carries the metric ``A^T g(A y) A`` on an axis-aligned
    box guaranteed to map into the original domain (an inscribed box
    centered at the preimage of the original center).  The Ricci tensor
    transforms covariantly under this operation, which is what makes it a
    usable consistency check on ``ricci_fd``.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (patch.dim, patch.dim):
        raise ValueError(f"chart map must be {patch.dim}x{patch.dim}")
    det = np.linalg.det(A)
    if not np.isfinite(det) or abs(det) < 1e-14:
        raise ValueError("chart map must be invertible")
    Ainv = np.linalg.inv(A)

    x0 = patch.center()
    half = 0.5 * (patch.domain[:, 1] - patch.domain[:, 0])
    inradius = float(half.min())
    row_sum = float(np.abs(A).sum(axis=1).max())  # induced sup-norm of A
    rho = 0.999 * inradius / row_sum
    y0 = Ainv @ x0
    dom = np.stack([y0 - rho, y0 + rho], axis=1)

    def g(y):
        return A.T @ patch.metric(A @ y) @ A

    return MetricPatch(patch.dim, dom, g,
                       label or f"{patch.label}|pullback")
