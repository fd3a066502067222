"""Coordinate patches, scalar fields, and the standard chart library.

A :class:`MetricPatch` is a single coordinate box together with a smooth
map from chart points to metric component matrices.  Everything downstream
(curvature, warped assembly, certification) consumes patches through this
interface, so any metric that can be evaluated pointwise plugs in.

Charts are single boxes.  Coordinate singularities (sphere poles, the
origin of a polar chart) must lie outside the box; finite-difference
operators additionally require a stencil-width margin from the boundary,
enforced by :meth:`MetricPatch.require_interior`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "GeometryError",
    "BoundaryProximityError",
    "DegenerateMetricError",
    "MetricPatch",
    "ScalarField",
    "SolitonConstants",
    "euclidean_patch",
    "polar_plane_patch",
    "sphere_patch",
    "torus_patch",
    "hyperbolic_patch",
    "einstein_model_fiber",
    "radial_profile_base",
    "cartesian_profile_base",
    "quadratic_potential",
    "constant_field",
    "radial_field",
]


class GeometryError(Exception):
    """Base class for geometric/numeric failures in this package."""


class BoundaryProximityError(GeometryError):
    """A stencil would step outside the chart domain."""


class DegenerateMetricError(GeometryError):
    """The metric is non-invertible or too ill-conditioned at the point."""


@dataclass(frozen=True)
class MetricPatch:
    """A coordinate chart with smooth metric components.

    Attributes
    ----------
    dim : int
        Chart dimension.
    domain : ndarray, shape (dim, 2)
        Axis-aligned box ``[lo_i, hi_i]`` of valid chart coordinates.
    g : callable
        Map from a chart point (array of length ``dim``) to the
        ``dim x dim`` symmetric positive-definite component matrix.
    label : str
        Human-readable name used in reports.
    """

    dim: int
    domain: np.ndarray
    g: Callable[[np.ndarray], np.ndarray]
    label: str = "patch"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("patch dimension must be >= 1")
        dom = np.asarray(self.domain, dtype=float).reshape(self.dim, 2)
        if not np.all(dom[:, 1] > dom[:, 0]):
            raise ValueError("domain box must have hi > lo on every axis")
        object.__setattr__(self, "domain", dom)

    def metric(self, x) -> np.ndarray:
        """Evaluate the metric components at ``x`` as a float ndarray."""
        G = np.asarray(self.g(np.asarray(x, dtype=float)), dtype=float)
        if G.shape != (self.dim, self.dim):
            raise ValueError(
                f"metric of patch '{self.label}' returned shape {G.shape}, "
                f"expected {(self.dim, self.dim)}")
        return G

    def contains(self, x, margin: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.domain[:, 0] + margin)
                    and np.all(x <= self.domain[:, 1] - margin))

    def require_interior(self, x, margin: float):
        """Raise :class:`BoundaryProximityError` unless ``x`` keeps the margin."""
        if not self.contains(x, margin):
            raise BoundaryProximityError(
                f"point {np.asarray(x)} is within {margin} of the boundary "
                f"of patch '{self.label}'")

    def center(self) -> np.ndarray:
        return self.domain.mean(axis=1)


@dataclass(frozen=True)
class ScalarField:
    """A smooth real-valued function on a chart, e.g. a warping or potential."""

    f: Callable[[np.ndarray], float]
    label: str = "field"

    def __call__(self, x) -> float:
        return float(self.f(np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class SolitonConstants:
    """Scalar data of a warped soliton structure.

    ``lam`` is the soliton constant (shrinking > 0, steady = 0, expanding < 0),
    ``m`` the fiber dimension, ``mu`` the fiber Einstein constant, and ``c``
    the constant of the scalar structure equation.  ``mu`` and ``c`` may be
    left ``None`` and calibrated from the data.
    """

    lam: float
    m: int
    mu: float | None = None
    c: float | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("fiber dimension m must be >= 1")

    @property
    def classification(self) -> str:
        if self.lam > 0:
            return "shrinking"
        if self.lam < 0:
            return "expanding"
        return "steady"


# ---------------------------------------------------------------------------
# chart library
# ---------------------------------------------------------------------------

def euclidean_patch(n: int, half_width: float = 2.0, label: str | None = None) -> MetricPatch:
    """Flat R^n in Cartesian coordinates on ``[-half_width, half_width]^n``."""
    eye = np.eye(n)
    dom = np.array([[-half_width, half_width]] * n)
    return MetricPatch(n, dom, lambda x: eye.copy(),
                       label or f"euclidean-{n}d")


def polar_plane_patch(t_range=(0.3, 3.0)) -> MetricPatch:
    """Flat plane in polar coordinates (t, theta): dt^2 + t^2 dtheta^2."""
    dom = np.array([list(t_range), [0.3, 2 * np.pi - 0.3]])
    return MetricPatch(2, dom, lambda x: np.diag([1.0, x[0] ** 2]),
                       "polar-plane")


def _round_sphere_components(m: int, radius: float, y: np.ndarray) -> np.ndarray:
    G = np.zeros((m, m))
    s = radius * radius
    for i in range(m):
        G[i, i] = s
        if i < m - 1:
            s *= np.sin(y[i]) ** 2
    return G


def sphere_patch(m: int, radius: float = 1.0, pad: float = 0.35) -> MetricPatch:
    """Round m-sphere of the given radius in nested spherical coordinates.

    The chart box keeps ``pad`` away from the polar coordinate
    singularities.  Ricci = (m-1)/radius^2 * g everywhere.
    """
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    dom = [[pad, np.pi - pad]] * (m - 1) + [[pad, 2 * np.pi - pad]]
    return MetricPatch(m, np.array(dom),
                       lambda y: _round_sphere_components(m, radius, y),
                       f"sphere-{m}d-r{radius:g}")


def torus_patch(m: int, half_width: float = np.pi) -> MetricPatch:
    """Flat m-torus chart: identity metric on a periodic box (Ricci = 0)."""
    eye = np.eye(m)
    dom = np.array([[-half_width, half_width]] * m)
    return MetricPatch(m, dom, lambda x: eye.copy(), f"torus-{m}d")


def hyperbolic_patch(m: int, radius: float = 1.0) -> MetricPatch:
    """Hyperbolic m-space, upper half-space chart, Ricci = -(m-1)/radius^2 * g."""
    if m < 2:
        raise ValueError("hyperbolic model needs dimension >= 2")
    dom = np.array([[-1.0, 1.0]] * (m - 1) + [[0.5, 2.0]])
    r2 = radius * radius

    def g(y):
        return (r2 / y[-1] ** 2) * np.eye(m)

    return MetricPatch(m, dom, g, f"hyperbolic-{m}d-r{radius:g}")


def einstein_model_fiber(m: int, mu: float, flat_tol: float = 1e-8):
    """Model fiber with Ricci = mu * g, plus its scale factor.

    Returns ``(patch, rho)`` where ``rho`` is the model scale: a round
    sphere of radius ``rho`` for mu > 0, a flat torus (``rho = 1``) for
    mu ~ 0, and a hyperbolic space of radius ``rho`` for mu < 0.
    One-dimensional fibers are flat, so only mu ~ 0 is admissible there.
    """
    if abs(mu) <= flat_tol:
        return torus_patch(m), 1.0
    if m == 1:
        raise GeometryError(
            f"a 1-dimensional fiber is flat; Einstein constant {mu:g} is unattainable")
    if mu > 0:
        rho = float(np.sqrt((m - 1) / mu))
        return sphere_patch(m, radius=rho), rho
    rho = float(np.sqrt((m - 1) / (-mu)))
    return hyperbolic_patch(m, radius=rho), rho


def radial_profile_base(a, k: int, t_range, label: str = "radial-base") -> MetricPatch:
    """Base chart dt^2 + a(t)^2 g_{S^k} in coordinates (t, angles).

    ``a`` is any callable of t.  For k = 0 the base is the line and the
    chart is one-dimensional.
    """
    if k == 0:
        return MetricPatch(1, np.array([list(t_range)]),
                           lambda x: np.array([[1.0]]), label)
    sphere_dom = [[0.35, np.pi - 0.35]] * (k - 1) + [[0.35, 2 * np.pi - 0.35]]
    dom = np.array([list(t_range)] + sphere_dom)

    def g(x):
        G = np.zeros((1 + k, 1 + k))
        G[0, 0] = 1.0
        G[1:, 1:] = float(a(x[0])) ** 2 * _round_sphere_components(k, 1.0, x[1:])
        return G

    return MetricPatch(1 + k, dom, g, label)


def cartesian_profile_base(a, k: int, t_range, label: str = "cartesian-base") -> MetricPatch:
    """Same base metric as :func:`radial_profile_base` but in ambient
    Cartesian coordinates on R^{k+1}, where linear isometries act.

    The metric at x is ``P_rad + (a(t)/t)^2 P_tan`` with t = |x|.  The
    domain box is the full cube ``[-hi, hi]^{k+1}`` so that rotations keep
    sample points inside; validity is governed by the radial range, and
    evaluation raises outside ``t_range``.  Intended for pointwise isometry
    and invariance checks, not for stencil differentiation near the radial
    bounds.
    """
    lo, hi = float(t_range[0]), float(t_range[1])
    n = k + 1
    dom = np.array([[-hi, hi]] * n)

    def g(x):
        t = float(np.linalg.norm(x))
        if not lo <= t <= hi:
            raise GeometryError(
                f"point with radius {t:g} outside the radial range "
                f"[{lo:g}, {hi:g}] of '{label}'")
        u = x / t
        P_rad = np.outer(u, u)
        return P_rad + (float(a(t)) / t) ** 2 * (np.eye(n) - P_rad)

    return MetricPatch(n, dom, g, label)


def quadratic_potential(lam: float, label: str | None = None) -> ScalarField:
    """The field (lam/2)|x|^2, whose Hessian is lam * identity on flat charts."""
    return ScalarField(lambda x: 0.5 * lam * float(np.dot(x, x)),
                       label or f"quadratic-{lam:g}")


def constant_field(value: float, label: str | None = None) -> ScalarField:
    return ScalarField(lambda x: value, label or f"const-{value:g}")


def radial_field(fn, label: str = "radial") -> ScalarField:
    """Field x -> fn(|x|) on an ambient Cartesian chart."""
    return ScalarField(lambda x: float(fn(float(np.linalg.norm(x)))), label)
