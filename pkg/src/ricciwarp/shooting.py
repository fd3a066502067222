"""Shooting solver for rotationally symmetric warped soliton profiles.

The ansatz metric on R^{k+1} x S^m is

    g = dt^2 + a(t)^2 g_{S^k} + b(t)^2 g_{S^m},    psi = phi(t),

with unit round factors.  Writing the gradient-soliton equation in an
orthonormal frame and solving for the second derivatives gives the reduced
first-order system in (a, a', b, b', phi'):

    a''/a   = (k-1)(1 - a'^2)/a^2 - m a'b'/(ab) + phi' a'/a - lam
    b''/b   = (m-1)(1 - b'^2)/b^2 - k a'b'/(ab) + phi' b'/b - lam
    phi''   = lam + k a''/a + m b''/b

For k = 0 the base is the line; the a-equation and all a-terms drop out.
These equations are not taken on faith: the test suite assembles the full
product metric from integrated profiles and requires the finite-difference
soliton residual to vanish to discretization accuracy (the closure gate).

Smoothness of the metric across t = 0 forces a(0) = 0, a'(0) = 1,
b'(0) = 0, phi'(0) = 0.  Matching even/odd Taylor series in the system
determines the quadratic/cubic coefficients up to one genuine shooting
degree of freedom, the half Hessian phi2 = phi''(0)/2: the trace equation
reproduces the sphere-block relation at leading order instead of fixing
phi2.  Profiles with phi2 <= 0 are long lived with slowly growing a, b;
positive phi2 drives finite-time blowup.  Integration starts from the
series at t = epsilon to keep the right side total.

Profile diagnostics (the first-integral series mu(t) and the per-equation
residual columns) are computed by differentiating the stored grid arrays,
never by substituting the right side back in; substituting would cancel
algebraically and report conservation even for corrupted data.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import make_interp_spline

from .fd import grid_derivative
from .patches import (
    GeometryError,
    ScalarField,
    SolitonConstants,
    einstein_model_fiber,
    radial_profile_base,
)
from .warped import CertificationReport, WarpedGeometry, certify_soliton

__all__ = [
    "IntegrationError",
    "AnsatzParams",
    "SolitonProfile",
    "reduced_rhs",
    "taylor_init",
    "shoot",
    "recompute_diagnostics",
    "profile_geometry",
    "certify_profile",
    "SweepRow",
    "sweep",
    "params_grid",
    "PROFILE_SCHEMA_VERSION",
    "CSV_COLUMNS",
]

PROFILE_SCHEMA_VERSION = 1
CSV_COLUMNS = ("t", "a", "a_prime", "b", "b_prime", "phi", "phi_prime",
               "mu", "res_tt", "res_sk", "res_sm")

_POSITIVITY_FLOOR = 1e-6   # terminal event threshold for a, b
_EVAL_FLOOR = 1e-7         # clamp inside the stepper so stages stay finite
_BLOWUP_LIMIT = 1e10


class IntegrationError(GeometryError):
    """The ODE integrator failed (step underflow or internal error)."""


@dataclass(frozen=True)
class AnsatzParams:
    """Shooting data for the rotationally symmetric ansatz.

    ``phi2`` is the free closure coefficient phi''(0)/2 (ignored for k = 0,
    where the even-series start is fully determined).  The default -0.5
    lies in the long-lived branch for the shipped parameter ranges.
    """

    k: int
    m: int
    lam: float
    b0: float
    phi2: float = -0.5
    epsilon: float = 1e-4
    t_max: float = 10.0
    rtol: float = 1e-10
    atol: float = 1e-10
    grid_per_unit: int = 400

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("base sphere dimension k must be >= 0")
        if self.m < 1:
            raise ValueError("fiber dimension m must be >= 1")
        if self.b0 <= 0:
            raise ValueError("b0 must be positive")
        if not 0 < self.epsilon < self.t_max:
            raise ValueError("need 0 < epsilon < t_max")
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("integrator tolerances must be positive")
        if self.grid_per_unit < 40:
            raise ValueError("grid_per_unit too coarse for the diagnostics")

    @property
    def classification(self) -> str:
        return SolitonConstants(self.lam, self.m).classification


def reduced_rhs(state, params: AnsatzParams):
    """Derivative of the reduced first-order system.

    For k >= 1 the state is (a, a', b, b', phi') and the return value is
    (a', a'', b', b'', phi''); for k = 0 the state is (b, b', phi') and the
    return value is (b', b'', phi'').  phi itself decouples and is
    recovered by quadrature.
    """
    k, m, lam = params.k, params.m, params.lam
    if k >= 1:
        a, ap, b, bp, phip = state
        if a <= 0 or b <= 0:
            raise GeometryError(f"metric coefficient hit zero: a={a:g}, b={b:g}")
        s_a = ((k - 1) * (1.0 - ap * ap) / (a * a)
               - m * ap * bp / (a * b) + phip * ap / a - lam)
        s_b = ((m - 1) * (1.0 - bp * bp) / (b * b)
               - k * ap * bp / (a * b) + phip * bp / b - lam)
        return (ap, a * s_a, bp, b * s_b, lam + k * s_a + m * s_b)
    b, bp, phip = state
    if b <= 0:
        raise GeometryError(f"metric coefficient hit zero: b={b:g}")
    s_b = (m - 1) * (1.0 - bp * bp) / (b * b) + phip * bp / b - lam
    return (bp, b * s_b, lam + m * s_b)


def _series_coefficients(params: AnsatzParams):
    """Taylor coefficients (a3, b2, phi2) of the smooth closure at t = 0."""
    k, m, lam, b0 = params.k, params.m, params.lam, params.b0
    b2 = ((m - 1) / b0 - lam * b0) / (2.0 * (k + 1))
    if k >= 1:
        phi2 = params.phi2
        a3 = (2.0 * phi2 - 2.0 * m * b2 / b0 - lam) / (6.0 * k)
    else:
        a3 = 0.0
        phi2 = 0.5 * (lam + 2.0 * m * b2 / b0)
    return a3, b2, phi2


def taylor_init(params: AnsatzParams):
    """Series start state at t = epsilon for the smooth origin closure.

    Returns the reduced state (a, a', b, b', phi') built from the odd/even
    series a = t + a3 t^3, b = b0 + b2 t^2, phi' = 2 phi2 t.  Raises for
    k = 0 (no origin closure on the line) and when epsilon is too large
    for the truncated series to be trustworthy.
    """
    if params.k < 1:
        raise ValueError("taylor_init applies to k >= 1 only")
    a3, b2, phi2 = _series_coefficients(params)
    eps = params.epsilon
    tail = max(abs(a3), abs(b2), abs(phi2), 1.0) * eps ** 3
    if tail > 1e-8:
        raise ValueError(
            f"epsilon={eps:g} too large: series tail estimate {tail:.2e} > 1e-8")
    return (eps + a3 * eps ** 3,
            1.0 + 3.0 * a3 * eps ** 2,
            params.b0 + b2 * eps ** 2,
            2.0 * b2 * eps,
            2.0 * phi2 * eps)


def _init_state_with_phi(params: AnsatzParams):
    if params.k >= 1:
        a, ap, b, bp, phip = taylor_init(params)
        return np.array([a, ap, b, bp, 0.0, phip])
    _, b2, phi2 = _series_coefficients(params)
    eps = params.epsilon
    if max(abs(b2), abs(phi2), 1.0) * eps ** 3 > 1e-8:
        raise ValueError(f"epsilon={eps:g} too large for the series start")
    return np.array([params.b0 + b2 * eps ** 2, 2.0 * b2 * eps,
                     0.0, 2.0 * phi2 * eps])


def _rhs_with_phi(t, y, params: AnsatzParams):
    # Clamped variant of reduced_rhs: Runge-Kutta stages may probe past a
    # degeneration before the terminal event localizes it, so the right
    # side must stay evaluable slightly below the event floor.
    k, m, lam = params.k, params.m, params.lam
    if k >= 1:
        a, ap, b, bp, _, phip = y
        a = max(a, _EVAL_FLOOR)
        b = max(b, _EVAL_FLOOR)
        s_a = ((k - 1) * (1.0 - ap * ap) / (a * a)
               - m * ap * bp / (a * b) + phip * ap / a - lam)
        s_b = ((m - 1) * (1.0 - bp * bp) / (b * b)
               - k * ap * bp / (a * b) + phip * bp / b - lam)
        return [ap, a * s_a, bp, b * s_b, phip, lam + k * s_a + m * s_b]
    b, bp, _, phip = y
    b = max(b, _EVAL_FLOOR)
    s_b = (m - 1) * (1.0 - bp * bp) / (b * b) + phip * bp / b - lam
    return [bp, b * s_b, phip, lam + m * s_b]


@dataclass
class SolitonProfile:
    """Discretized profile with conservation and residual diagnostics.

    ``a``/``a_prime``/``res_sk`` are NaN-filled for k = 0.  ``mu`` and the
    residual columns are recomputed from the grid arrays (see the module
    docstring), so corrupting the arrays shows up in them.
    """

    params: AnsatzParams
    t: np.ndarray
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray
    phi: np.ndarray
    phi_prime: np.ndarray
    phi_pp: np.ndarray
    mu: np.ndarray
    res_tt: np.ndarray
    res_sk: np.ndarray
    res_sm: np.ndarray
    status: str = "completed"
    end_time: float = 0.0
    _splines: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def mu_mean(self) -> float:
        return float(self.mu.mean())

    @property
    def mu_spread(self) -> float:
        return float(self.mu.max() - self.mu.min())

    @property
    def classification(self) -> str:
        return self.params.classification

    def interpolants(self):
        """Quintic splines (a, b, phi) through the grid arrays.

        Built from the stored arrays only, so a profile loaded from CSV
        reproduces them exactly.  For k = 0 the a-slot is None.
        """
        if not self._splines:
            kq = 5 if self.t.size > 5 else 3
            self._splines["b"] = make_interp_spline(self.t, self.b, k=kq)
            self._splines["phi"] = make_interp_spline(self.t, self.phi, k=kq)
            if self.params.k >= 1:
                self._splines["a"] = make_interp_spline(self.t, self.a, k=kq)
            else:
                self._splines["a"] = None
        return self._splines["a"], self._splines["b"], self._splines["phi"]

    # -- serialization ------------------------------------------------------

    def to_csv(self, path=None) -> str:
        """Profile as CSV text (written to ``path`` when given).

        Numbers carry 17 significant digits so the round trip is exact.
        """
        buf = io.StringIO()
        buf.write(f"# schema_version={PROFILE_SCHEMA_VERSION}\n")
        buf.write("# params=" + json.dumps(_params_to_dict(self.params),
                                           sort_keys=True) + "\n")
        buf.write(f"# status={self.status} end_time={self.end_time:.17g}\n")
        buf.write(",".join(CSV_COLUMNS) + "\n")
        cols = [self.t, self.a, self.a_prime, self.b, self.b_prime,
                self.phi, self.phi_prime, self.mu, self.res_tt,
                self.res_sk, self.res_sm]
        for i in range(self.t.size):
            buf.write(",".join(f"{col[i]:.17g}" for col in cols) + "\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "SolitonProfile":
        """Parse a profile written by :meth:`to_csv`.

        ``source`` is a path or CSV text.  Raises ``ValueError`` on a
        malformed or wrong-version file.
        """
        text = source
        if "\n" not in str(source):
            with open(source) as fh:
                text = fh.read()
        lines = [ln for ln in str(text).splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("# schema_version="):
            raise ValueError("not a profile CSV: missing schema_version line")
        version = int(lines[0].split("=", 1)[1])
        if version != PROFILE_SCHEMA_VERSION:
            raise ValueError(f"unsupported profile schema_version {version}")
        if not lines[1].startswith("# params="):
            raise ValueError("profile CSV missing params line")
        params = AnsatzParams(**json.loads(lines[1].split("=", 1)[1]))
        status, end_time = "completed", 0.0
        idx = 2
        if lines[idx].startswith("# status="):
            part = lines[idx][2:].split()
            status = part[0].split("=", 1)[1]
            end_time = float(part[1].split("=", 1)[1])
            idx += 1
        if tuple(lines[idx].split(",")) != CSV_COLUMNS:
            raise ValueError("profile CSV has an unexpected header row")
        rows = np.array([[float(v) for v in ln.split(",")]
                         for ln in lines[idx + 1:]])
        if rows.ndim != 2 or rows.shape[1] != len(CSV_COLUMNS):
            raise ValueError("profile CSV has malformed data rows")
        (t, a, ap, b, bp, phi, phip, mu, r_tt, r_sk, r_sm) = rows.T
        phi_pp = _phi_pp_series(params, a, ap, b, bp, phip)
        return cls(params=params, t=t, a=a, a_prime=ap, b=b, b_prime=bp,
                   phi=phi, phi_prime=phip, phi_pp=phi_pp, mu=mu,
                   res_tt=r_tt, res_sk=r_sk, res_sm=r_sm,
                   status=status, end_time=end_time)


def _params_to_dict(p: AnsatzParams) -> dict:
    return {"k": p.k, "m": p.m, "lam": p.lam, "b0": p.b0, "phi2": p.phi2,
            "epsilon": p.epsilon, "t_max": p.t_max, "rtol": p.rtol,
            "atol": p.atol, "grid_per_unit": p.grid_per_unit}


def _second_derivative_series(params: AnsatzParams, a, ap, b, bp, phip):
    """Vectorized (a'', b'', phi'') from the reduced system on state arrays."""
    k, m, lam = params.k, params.m, params.lam
    if k >= 1:
        s_a = ((k - 1) * (1.0 - ap * ap) / (a * a)
               - m * ap * bp / (a * b) + phip * ap / a - lam)
    else:
        s_a = np.zeros_like(b)
    s_b = (m - 1) * (1.0 - bp * bp) / (b * b) + phip * bp / b - lam
    if k >= 1:
        s_b = s_b - k * ap * bp / (a * b)
    return (a * s_a if k >= 1 else np.full_like(b, np.nan),
            b * s_b,
            lam + (k * s_a if k >= 1 else 0.0) + m * s_b)


def _phi_pp_series(params, a, ap, b, bp, phip):
    return _second_derivative_series(params, a, ap, b, bp, phip)[2]


def _diagnostics(params: AnsatzParams, t, a, ap, b, bp, phip):
    """Grid-FD residual columns and first-integral series.

    b'' is obtained by differentiating the b' array; with b'' from the
    right side the first integral collapses to the constant m - 1
    identically and the conservation check would be vacuous.
    """
    k, m, lam = params.k, params.m, params.lam
    dt = t[1] - t[0]
    app_rhs, bpp_rhs, phipp_rhs = _second_derivative_series(params, a, ap, b, bp, phip)
    res_tt = grid_derivative(phip, dt) - phipp_rhs
    res_sm = grid_derivative(bp, dt) - bpp_rhs
    if k >= 1:
        res_sk = grid_derivative(ap, dt) - app_rhs
    else:
        res_sk = np.full_like(t, np.nan)
    bpp_fd = grid_derivative(bp, dt)
    lap_b = bpp_fd + (k * (ap / a) * bp if k >= 1 else 0.0)
    mu = lam * b * b + b * lap_b + (m - 1) * bp * bp - b * phip * bp
    return mu, res_tt, res_sk, res_sm


# the origin launch layer amplifies start-state errors by roughly 1/t^2
# along a transverse mode, so the segment up to _LAUNCH_END is integrated
# at a fixed tight tolerance regardless of the requested one
_LAUNCH_END = 0.1
_LAUNCH_TOL = 1e-13


def shoot(params: AnsatzParams) -> SolitonProfile:
    """Integrate the reduced system from the series start.

    Adaptive eighth-order explicit integration to ``t_max`` or until a
    metric coefficient degenerates or the state blows up; the returned
    profile records the outcome in ``status`` and ``end_time``.  phi is
    gauge-normalized to phi(epsilon) = 0.
    """
    k = params.k
    y0 = _init_state_with_phi(params)

    i_a, i_b = (0, 2) if k >= 1 else (None, 0)

    def hit_b(t, y, *_):
        return y[i_b] - _POSITIVITY_FLOOR

    hit_b.terminal = True
    events = [hit_b]
    if k >= 1:
        def hit_a(t, y, *_):
            return y[i_a] - _POSITIVITY_FLOOR
        hit_a.terminal = True
        events.append(hit_a)

    def blow(t, y, *_):
        return _BLOWUP_LIMIT - float(np.abs(y).max())

    blow.terminal = True
    events.append(blow)

    def integrate(t0, t1, y_start, rtol, atol):
        # a capped first step keeps the dense output tight where the
        # differentiated diagnostics are most sensitive
        sol = solve_ivp(_rhs_with_phi, (t0, t1), y_start, args=(params,),
                        method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True, events=events,
                        first_step=min(1e-3, 0.01 * (t1 - t0)))
        if sol.status == -1:
            raise IntegrationError(f"integrator failed: {sol.message}")
        return sol

    t_switch = min(_LAUNCH_END, params.t_max)
    rtol_launch = min(params.rtol, _LAUNCH_TOL)
    atol_launch = min(params.atol, _LAUNCH_TOL)
    sol_a = integrate(params.epsilon, t_switch, y0, rtol_launch, atol_launch)
    segments = [sol_a]
    if sol_a.status == 0 and t_switch < params.t_max:
        sol_b = integrate(t_switch, params.t_max, sol_a.y[:, -1],
                          params.rtol, params.atol)
        segments.append(sol_b)
    sol = segments[-1]

    status = "completed"
    t_end = params.t_max
    if sol.status == 1:
        t_end = float(sol.t[-1])
        if k >= 1 and sol.t_events[1].size:
            status = "hit_a_zero"
        elif sol.t_events[0].size:
            status = "hit_b_zero"
        else:
            status = "blowup"

    def evaluate(ts):
        if len(segments) == 1:
            return segments[0].sol(ts)
        early = ts <= t_switch
        out = np.empty((y0.size, ts.size))
        if early.any():
            out[:, early] = segments[0].sol(ts[early])
        if (~early).any():
            out[:, ~early] = segments[1].sol(ts[~early])
        return out

    n = max(int(np.ceil((t_end - params.epsilon) * params.grid_per_unit)) + 1, 16)
    t = np.linspace(params.epsilon, t_end, n)
    Y = evaluate(t)
    if k >= 1:
        a, ap, b, bp, phi, phip = Y
    else:
        b, bp, phi, phip = Y
        a = np.full_like(t, np.nan)
        ap = np.full_like(t, np.nan)

    mu, res_tt, res_sk, res_sm = _diagnostics(params, t, a, ap, b, bp, phip)
    phi_pp = _phi_pp_series(params, a, ap, b, bp, phip)
    return SolitonProfile(params=params, t=t, a=a, a_prime=ap, b=b,
                          b_prime=bp, phi=phi, phi_prime=phip, phi_pp=phi_pp,
                          mu=mu, res_tt=res_tt, res_sk=res_sk, res_sm=res_sm,
                          status=status, end_time=t_end)


# ---------------------------------------------------------------------------
# certification of profiles
# ---------------------------------------------------------------------------

def recompute_diagnostics(profile: SolitonProfile) -> SolitonProfile:
    """Rebuild the mu and residual series from the stored state arrays.

    Detects tampered or inconsistent profile data: the recomputed series
    reflect whatever the arrays actually contain, so a corrupted column
    shows a non-constant first integral or large equation residuals.
    """
    p = profile
    mu, res_tt, res_sk, res_sm = _diagnostics(
        p.params, p.t, p.a, p.a_prime, p.b, p.b_prime, p.phi_prime)
    return replace(p, mu=mu, res_tt=res_tt, res_sk=res_sk, res_sm=res_sm,
                   _splines={})


def profile_geometry(profile: SolitonProfile, h: float = 1e-3):
    """Warped geometry carrying a profile's data.

    The base patch is dt^2 + a^2 g_{S^k} over the profile span; the fiber
    is the model Einstein space whose constant is the mean of the
    first-integral series, and the warping is b(t) scaled to the model
    fiber so the assembled product metric is exactly the ansatz metric.
    """
    if profile.b.min() <= 0 or (profile.params.k >= 1 and profile.a.min() <= 0):
        raise GeometryError("profile has nonpositive metric coefficients")
    params = profile.params
    k, m = params.k, params.m
    a_s, b_s, phi_s = profile.interpolants()
    fiber, rho = einstein_model_fiber(m, profile.mu_mean)
    base = radial_profile_base(
        (lambda t: float(a_s(t))) if k >= 1 else (lambda t: 1.0),
        k,
        (float(profile.t[0]) + 8 * h, float(profile.t[-1]) - 8 * h),
        label=f"profile-base-k{k}")
    warp = ScalarField(lambda x: float(b_s(x[0])) / rho, "b-warping")
    potential = ScalarField(lambda x: float(phi_s(x[0])), "phi-potential")
    constants = SolitonConstants(lam=params.lam, m=m, mu=None, c=None)
    return WarpedGeometry(base=base, fiber=fiber, f=warp, phi=potential,
                          constants=constants)


def certify_profile(profile: SolitonProfile,
                    h: float = 1e-3,
                    tolerance: float = 1e-5,
                    t_window=(0.2, 5.0),
                    n_base: int = 10,
                    n_product: int = 20,
                    n_fiber: int = 4,
                    seed: int = 0) -> CertificationReport:
    """Certify a profile as a warped soliton structure.

    The geometry from :func:`profile_geometry` is handed to the generic
    certification chain, including the finite-difference soliton residual
    of the full product metric, at sample points whose radial coordinates
    lie in ``t_window``.
    """
    params = profile.params
    k, m = params.k, params.m
    geom = profile_geometry(profile, h)
    base, fiber = geom.base, geom.fiber

    t_lo = max(t_window[0], float(profile.t[0]) + 16 * h)
    t_hi = min(t_window[1], float(profile.t[-1]) - 16 * h)
    if t_hi <= t_lo:
        raise GeometryError(
            f"certification window {t_window} does not fit the profile span")

    rng = np.random.default_rng(seed)

    def base_points(count):
        ts = np.linspace(t_lo, t_hi, count)
        pts = np.empty((count, base.dim))
        pts[:, 0] = ts
        for j in range(1, base.dim):
            lo, hi = base.domain[j]
            mid, span = 0.5 * (lo + hi), 0.25 * (hi - lo)
            pts[:, j] = mid + span * (2.0 * rng.random(count) - 1.0)
        return pts

    fiber_pts = _interior_points(fiber, n_fiber, rng)
    product_pts = np.hstack([base_points(n_product),
                             _interior_points(fiber, n_product, rng)])

    return certify_soliton(geom,
                           base_samples=base_points(n_base),
                           fiber_samples=fiber_pts,
                           product_samples=product_pts,
                           h=h,
                           tolerance=tolerance,
                           label=(f"profile(k={k},m={m},lam={params.lam:g},"
                                  f"b0={params.b0:g})"))


def _interior_points(patch, count, rng, margin=0.2):
    lo = patch.domain[:, 0] + margin * (patch.domain[:, 1] - patch.domain[:, 0])
    hi = patch.domain[:, 1] - margin * (patch.domain[:, 1] - patch.domain[:, 0])
    return lo + (hi - lo) * rng.random((count, patch.dim))


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    """One sweep result: shooting data, outcome, and growth diagnostics."""

    k: int
    m: int
    lam: float
    b0: float
    status: str
    lifetime: float
    mu_mean: float
    mu_spread: float
    exp_a: float
    exp_b: float


def params_grid(ks, ms, lams, b0s, **common):
    """Cartesian parameter grid in deterministic (k, m, lam, b0) order."""
    out = []
    for k in ks:
        for m in ms:
            for lam in lams:
                for b0 in b0s:
                    out.append(AnsatzParams(k=k, m=m, lam=lam, b0=b0, **common))
    return out


def _growth_exponent(t, y):
    """Log-log slope over the last decade of the grid."""
    sel = t >= t[-1] / 10.0
    if sel.sum() < 10 or np.any(y[sel] <= 0):
        return float("nan")
    return float(np.polyfit(np.log(t[sel]), np.log(y[sel]), 1)[0])


def _sweep_row(params: AnsatzParams) -> SweepRow:
    try:
        prof = shoot(params)
    except (IntegrationError, GeometryError, ValueError) as exc:
        return SweepRow(params.k, params.m, params.lam, params.b0,
                        f"error:{type(exc).__name__}", 0.0,
                        float("nan"), float("nan"), float("nan"), float("nan"))
    if prof.status == "completed":
        exp_a = _growth_exponent(prof.t, prof.a) if params.k >= 1 else float("nan")
        exp_b = _growth_exponent(prof.t, prof.b)
    else:
        exp_a = exp_b = float("nan")
    return SweepRow(params.k, params.m, params.lam, params.b0, prof.status,
                    prof.end_time, prof.mu_mean, prof.mu_spread, exp_a, exp_b)


def sweep(param_list, parallel: bool = False, workers: int | None = None):
    """Run the grid; rows come back in grid order regardless of mode."""
    param_list = list(param_list)
    if not parallel or len(param_list) < 2:
        return [_sweep_row(p) for p in param_list]
    import concurrent.futures as cf
    with cf.ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_sweep_row, param_list))
