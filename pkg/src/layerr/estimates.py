"""A-priori quadrature-error estimates for nearly singular layer potentials.

For a target point x near the surface, the error of the tensor-product
rule splits into a trapezoidal part (azimuthal direction) and a
Gauss-Legendre part (polar direction). Each part is a per-rule error
kernel, evaluated at the complex root of the squared-distance function in
the matching variable, times the smooth numerator f and a geometry factor,
integrated along the other direction.

The kernels decay exponentially away from the grid point closest to x, so
the line integrals are mapped to the half line and evaluated with a small
Gauss-Laguerre rule. Along the sweep the roots are taken from their
closed forms where those exist (azimuthal roots of surfaces of
revolution, polar roots of spheres) and are otherwise chained through
warm-started Newton solves, with linearized-surface models as fallbacks.
All magnitude combinations happen in log space so that estimates remain
meaningful down to the underflow threshold.

Near the symmetry axis of an axisymmetric surface the azimuthal root does
not exist; a cone criterion detects that region, where the trapezoidal
part is negligible and the Gauss-Legendre part is nearly independent of
the azimuth and is integrated in closed form around the full circle.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateModel, InfiniteGeometryFactor, NoRootExists, NonConvergence
from .potentials import (
    DensitySpec,
    KernelSpec,
    EvalPoint,
    integrand_f_sph,
    locate,
    nearest_grid_node,
    surface_scale,
)
from .quadrature import QuadratureGrid, gauss_laguerre
from .roots import (
    VAR_PHI,
    VAR_T,
    VAR_THETA,
    axisym_phi_root,
    azimuthal_sweep_model,
    linear_root_model,
    newton_root,
    phi_line,
    sphere_theta_root,
    theta_line,
)
from .surfaces import COSINE, Sphere, Surface

_LOG_4PI = math.log(4.0 * math.pi)
_LOG_2PI = math.log(2.0 * math.pi)
_LOG_2 = math.log(2.0)
_G2_SKIP_EPS = 1e-12
_DEFAULT_TAIL_NODES = 8


@dataclass(frozen=True)
class ConeParams:
    """Near-axis cone criterion parameters: length scale A and constant K_c."""

    A: float = 1.0
    K_c: float = 10.0


@dataclass(frozen=True)
class EstimateBreakdown:
    """Per-point estimate split into its two contributions."""

    e_tz: float
    e_gl: float
    total: float
    tz_skipped: bool
    phi0: Optional[complex]
    t0: Optional[complex]
    t_star: float
    phi_star: float
    grid_distance: float


def _logsumexp(vals) -> float:
    m = max(vals)
    if m == -math.inf:
        return -math.inf
    return m + math.log(sum(math.exp(v - m) for v in vals))


def _log_abs(z) -> float:
    a = abs(z)
    return math.log(a) if a > 0.0 else -math.inf


def log_est_tz(im_abs: float, n: int, p: float) -> float:
    """log of the trapezoidal error kernel for root imaginary part im_abs."""
    return _LOG_4PI - math.lgamma(p) + (p - 1.0) * math.log(n) - n * im_abs


def est_tz(phi0: complex, n: int, p: float) -> float:
    """Trapezoidal-rule error kernel at the azimuthal root phi0.

    est = 4 pi / Gamma(p) * n^(p-1) * exp(-n |Im phi0|).
    """
    return math.exp(log_est_tz(abs(phi0.imag), n, p))


def _joukowski(t0: complex) -> Tuple[float, float]:
    """|sqrt(t0^2 - 1)| and |t0 + sqrt(t0^2 - 1)| on the branch
    sqrt(t0 + 1) * sqrt(t0 - 1) with principal square roots."""
    s = cmath.sqrt(t0 + 1.0) * cmath.sqrt(t0 - 1.0)
    return abs(s), abs(t0 + s)


def log_est_gl(t0: complex, n: int, p: float) -> float:
    """log of the Gauss-Legendre error kernel at the polar root t0."""
    abs_s, abs_w = _joukowski(complex(t0))
    if abs_s == 0.0 or abs_w <= 1.0:
        raise ValueError(f"Gauss-Legendre kernel undefined for t0={t0} on [-1, 1]")
    return (
        _LOG_4PI
        - math.lgamma(p)
        + (p - 1.0) * (math.log(2.0 * n + 1.0) - math.log(abs_s))
        - (2.0 * n + 1.0) * math.log(abs_w)
    )


def est_gl(t0: complex, n: int, p: float) -> float:
    """Gauss-Legendre error kernel at the polar root t0 (off [-1, 1]).

    est = 4 pi / Gamma(p) * |(2n+1)/sqrt(t0^2-1)|^(p-1) * |t0+sqrt(t0^2-1)|^-(2n+1).
    """
    return math.exp(log_est_gl(t0, n, p))


def _dot_c(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _g1_theta(surface: Surface, theta, phi, x):
    """Geometry factor of the polar direction, in theta coordinates."""
    pos, d_theta, _ = surface.eval_sph(theta, phi)
    d_t = d_theta * surface.theta_map.dtheta_dt_at(theta)
    den = 2.0 * _dot_c(pos - np.asarray(x), d_t)
    den = complex(den)
    if den == 0.0:
        raise InfiniteGeometryFactor("d R^2 / d t vanishes at the root")
    return 1.0 / den


def _g2_theta(surface: Surface, theta, phi, x):
    """Geometry factor of the azimuthal direction, in theta coordinates."""
    pos, _, d_phi = surface.eval_sph(theta, phi)
    den = 2.0 * _dot_c(pos - np.asarray(x), d_phi)
    den = complex(den)
    if den == 0.0:
        raise InfiniteGeometryFactor("d R^2 / d phi vanishes at the root")
    return 1.0 / den


def geometry_factor_1(surface: Surface, t, phi, x):
    """(d R^2 / d t)^-1 at (t, phi); t may be complex."""
    return _g1_theta(surface, surface.theta_map.theta(t), phi, x)


def geometry_factor_2(surface: Surface, t, phi, x):
    """(d R^2 / d phi)^-1 at (t, phi); phi may be complex."""
    return _g2_theta(surface, surface.theta_map.theta(t), phi, x)


def cone_test(x, surface: Surface, g: QuadratureGrid, cone: ConeParams = ConeParams()) -> bool:
    """Near-axis test: rho / A < (K_c pi / n_t) * min grid distance.

    True means the azimuthal (trapezoidal) error contribution can be
    dropped. Meaningful for axisymmetric surfaces, whose symmetry axis is
    the z-axis; the minimum distance is taken over the grid nodes only.
    """
    x = np.asarray(x, dtype=float)
    rho = math.hypot(x[0], x[1])
    _, _, _, _, dmin = nearest_grid_node(surface, g, x)
    return rho / cone.A < (cone.K_c * math.pi / g.n_t) * dmin


def e_fac_tz_analytic(surface, x, theta: float, p: float, n_phi: int) -> float:
    """Pointwise azimuthal error factor for an axisymmetric surface.

    Combines the geometry factor magnitude and the exponential root decay
    into the closed form driven by lambda of the analytic azimuthal root.
    """
    x = np.asarray(x, dtype=float)
    rho2 = x[0] * x[0] + x[1] * x[1]
    if rho2 == 0.0 or theta <= 0.0 or theta >= math.pi:
        raise NoRootExists("azimuthal error factor undefined on the axis")
    a_t = float(surface.profile_a(theta)) * math.sin(theta)
    b_t = float(surface.profile_b(theta)) * math.cos(theta)
    denom = a_t * a_t + rho2 + (b_t - x[2]) ** 2
    lam = denom / (2.0 * a_t * math.sqrt(rho2))
    sq = math.sqrt(lam * lam - 1.0)
    log_val = (
        -p * math.log(denom)
        + p * (math.log(lam) - math.log(sq))
        - n_phi * math.log(lam + sq)
    )
    return math.exp(log_val)


def _log_double_factorial(n: int) -> float:
    return sum(math.log(k) for k in range(n, 1, -2))


def sphere_simplified(zeta: float, a: float, p: float, n: int) -> float:
    """Closed-form error estimate for a sphere, cosine map, n_t = n/2.

    Depends only on the target radius zeta, the sphere radius a, the
    kernel power p and the (even) azimuthal point count n:

        8 pi / Gamma(p) * n^(p-1) * n!!/(n+1)!! * a^2 / |zeta^2-a^2|^p * delta^-n

    with delta = zeta/a outside and a/zeta inside.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    if zeta <= 0.0 or zeta == a:
        raise ValueError("zeta must be positive and different from the radius")
    delta = zeta / a if zeta > a else a / zeta
    log_val = (
        math.log(8.0 * math.pi)
        - math.lgamma(p)
        + (p - 1.0) * math.log(n)
        + _log_double_factorial(n)
        - _log_double_factorial(n + 1)
        + 2.0 * math.log(a)
        - p * math.log(abs(zeta * zeta - a * a))
        - n * math.log(delta)
    )
    return math.exp(log_val)


@dataclass(frozen=True, eq=False)
class _Frame:
    """Shared per-point context for the two estimate contributions."""

    surface: Surface
    kernel: KernelSpec
    density: DensitySpec
    grid: QuadratureGrid
    x: np.ndarray
    ep: EvalPoint
    theta_star: float
    kappa: float
    scale: float


def _build_frame(surface, kernel, density, g, x) -> _Frame:
    x = np.asarray(x, dtype=float)
    ep = locate(surface, g, x)
    theta_star = surface.theta_map.theta(ep.t_star)
    _, g_t, g_phi = surface.eval_t(ep.t_star, ep.phi_star)
    kappa = float(np.linalg.norm(np.real(g_t))) / float(np.linalg.norm(np.real(g_phi)))
    scale = surface_scale(surface, g)
    return _Frame(surface, kernel, density, g, x, ep, theta_star, kappa, scale)


def _theta_root_value(frame: _Frame) -> complex:
    """Accurate polar root at the nearest node's azimuth (theta variable)."""
    surf, x = frame.surface, frame.x
    if isinstance(surf, Sphere):
        return sphere_theta_root(surf.radius, frame.ep.phi_star, x).value
    initial = complex(frame.theta_star, 0.1)
    line = theta_line(surf, frame.ep.phi_star)
    return newton_root(
        line, VAR_THETA, frame.ep.phi_star, x, initial, frame.scale, nearest=True
    ).value


def _phi_root_value(frame: _Frame) -> complex:
    """Accurate azimuthal root at the nearest node's polar angle."""
    surf, x = frame.surface, frame.x
    if surf.axisymmetric:
        return axisym_phi_root(surf, frame.theta_star, x).value
    initial = complex(frame.ep.phi_star, 0.1)
    line = phi_line(surf, frame.theta_star)
    return newton_root(
        line, VAR_PHI, frame.theta_star, x, initial, frame.scale, nearest=True
    ).value


def _in_cone(frame: _Frame, cone: ConeParams) -> bool:
    """Cone test reusing the frame's nearest-grid distance."""
    rho = math.hypot(frame.x[0], frame.x[1])
    return rho / cone.A < (cone.K_c * math.pi / frame.grid.n_t) * frame.ep.grid_distance


def _tail_log_terms(log_kernel_at, tail_n: int):
    """Gauss-Laguerre terms log(w_i) + x_i + log kernel(x_i), both directions.

    The kernel is evaluated in ascending node order per direction so that
    implementations can warm-start root chains from the previous node.
    """
    rule = gauss_laguerre(tail_n)
    terms = []
    for sign in (1.0, -1.0):
        for xi, wi in zip(rule.nodes, rule.weights):
            lk = log_kernel_at(sign * xi)
            terms.append(lk + xi + math.log(wi))
    return terms


def _chain_root(line, variable, fixed, x, prev, scale):
    """One warm-started Newton solve along a sweep; None if it fails."""
    try:
        return newton_root(line, variable, fixed, x, prev, scale).value
    except NonConvergence:
        return None


def _log_fg2(frame: _Frame, theta_s, phi_root) -> float:
    """log |f G2^p| at an azimuthal root (polar angle real)."""
    pos, _, d_phi = frame.surface.eval_sph(theta_s, phi_root)
    den = complex(2.0 * _dot_c(pos - frame.x, d_phi))
    if den == 0.0:
        raise InfiniteGeometryFactor("d R^2 / d phi vanishes at the root")
    f_val = integrand_f_sph(
        frame.surface, frame.kernel, frame.density, theta_s, phi_root, frame.x
    )
    return _log_abs(f_val) - frame.kernel.p * _log_abs(den)


def _log_fg1(frame: _Frame, theta_root, phi_s) -> float:
    """log |f G1^p| at a polar root (azimuth real)."""
    g1 = _g1_theta(frame.surface, theta_root, phi_s, frame.x)
    f_val = integrand_f_sph(
        frame.surface, frame.kernel, frame.density, theta_root, phi_s, frame.x
    )
    return _log_abs(f_val) + frame.kernel.p * _log_abs(g1)


def _tz_sweep_log_kernel(frame: _Frame, phi0: complex, log_fg_anchor: float):
    """log of |f G2^p| est along the polar sweep of the azimuthal root.

    Axisymmetric surfaces use the closed-form azimuthal root at every
    in-range sweep node; other shapes chain warm-started Newton solves on
    the analytic parametrization. The smooth factor and geometry factor
    are re-evaluated at each swept root. The linearized model with the
    anchor weight covers the (negligible) tail beyond the parameter
    interval and any node where the chain fails.
    """
    surf, g = frame.surface, frame.grid
    p = frame.kernel.p
    width = 1.0 / (g.n_phi * frame.kappa)
    model = linear_root_model(
        frame.surface, frame.ep.t_star, frame.ep.phi_star, frame.x, VAR_PHI, phi0
    )
    chain = {1.0: phi0, -1.0: phi0}

    def from_model(t_s):
        return log_fg_anchor + log_est_tz(abs(model.model_root(t_s).imag), g.n_phi, p)

    def log_kernel(offset):
        t_s = frame.ep.t_star + offset * width
        if not -1.0 < t_s < 1.0:
            return from_model(t_s)
        theta_s = surf.theta_map.theta(t_s)
        if surf.axisymmetric:
            try:
                root = axisym_phi_root(surf, theta_s, frame.x).value
            except NoRootExists:
                return -math.inf
        else:
            direction = 1.0 if offset >= 0 else -1.0
            root = _chain_root(
                phi_line(surf, theta_s), VAR_PHI, theta_s, frame.x, chain[direction], frame.scale
            )
            if root is None:
                return from_model(t_s)
            chain[direction] = root
        try:
            log_fg = _log_fg2(frame, theta_s, root)
        except InfiniteGeometryFactor:
            return -math.inf
        return log_fg + log_est_tz(abs(root.imag), g.n_phi, p)

    return log_kernel, width


def _tz_internal(frame: _Frame, cone: ConeParams, tail_n: int):
    """Trapezoidal contribution: (value, skipped, phi0 or None)."""
    surf, g, x = frame.surface, frame.grid, frame.x
    p = frame.kernel.p
    if surf.axisymmetric and _in_cone(frame, cone):
        return 0.0, True, None
    try:
        phi0 = _phi_root_value(frame)
    except NoRootExists:
        return 0.0, True, None
    except NonConvergence:
        try:
            model = linear_root_model(surf, frame.ep.t_star, frame.ep.phi_star, x, VAR_PHI, 0.0)
        except DegenerateModel:
            return 0.0, True, None
        phi0 = model.linear_root(frame.ep.t_star)
    # geometry factor at the root; huge values signal a near-axis target
    pos, _, d_phi = surf.eval_sph(frame.theta_star, phi0)
    den = complex(2.0 * _dot_c(pos - x, d_phi))
    if abs(den) < _G2_SKIP_EPS * frame.scale:
        return 0.0, True, phi0
    log_g2 = -_log_abs(den)
    f_val = integrand_f_sph(surf, frame.kernel, frame.density, frame.theta_star, phi0, x)
    log_fg_anchor = _log_abs(f_val) + p * log_g2
    log_flat = log_fg_anchor + log_est_tz(abs(phi0.imag), g.n_phi, p)
    try:
        log_kernel, width = _tz_sweep_log_kernel(frame, phi0, log_fg_anchor)
        tail = _logsumexp(_tail_log_terms(log_kernel, tail_n))
        # the sweep can never contribute more measure than the whole
        # t-interval at its anchor value
        log_val = min(math.log(width) + tail, math.log(2.0) + log_flat)
    except DegenerateModel:
        # target in the tangent plane at the node: integrate a flat kernel
        # over the whole t-interval (length 2) as a coarse stand-in
        log_val = math.log(2.0) + log_flat
    return math.exp(log_val), False, phi0


def _gl_internal(frame: _Frame, cone: ConeParams, tail_n: int):
    """Gauss-Legendre contribution: (value, t0 or None)."""
    surf, g, x = frame.surface, frame.grid, frame.x
    p = frame.kernel.p
    theta0 = None
    try:
        theta0 = _theta_root_value(frame)
        t0 = complex(surf.theta_map.t(theta0))
    except NoRootExists:
        return 0.0, None
    except NonConvergence:
        try:
            model = linear_root_model(surf, frame.ep.t_star, frame.ep.phi_star, x, VAR_T, 0.0)
        except DegenerateModel:
            return 0.0, None
        t0 = model.linear_root(frame.ep.phi_star)
        theta0 = surf.theta_map.theta(t0)
    if t0.imag < 0:
        t0 = t0.conjugate()
    log_fg = _log_fg1(frame, theta0, frame.ep.phi_star)
    log_flat = log_fg + log_est_gl(t0, g.n_t, p)
    if surf.axisymmetric and _in_cone(frame, cone):
        # near the axis the polar root barely depends on the azimuth:
        # integrate the flat kernel around the full circle
        return math.exp(_LOG_2PI + log_flat), t0
    try:
        log_kernel, width = _gl_sweep_log_kernel(frame, t0, theta0, log_fg)
        tail = _logsumexp(_tail_log_terms(log_kernel, tail_n))
        log_val = math.log(width) + tail
    except DegenerateModel:
        # coarse fallback: flat kernel over one azimuthal grid cell
        log_val = math.log(2.0 * math.pi / g.n_phi) + log_flat
    if isinstance(surf, Sphere) and surf.theta_map.kind == COSINE:
        # Full-circle convention: the closed forms for a cosine-mapped
        # sphere account the polar-root kernel profile around the whole
        # azimuthal circle with both of its symmetric peaks; double the
        # swept value so sphere results stay comparable with them.
        log_val += _LOG_2
    # azimuthal measure can never exceed the full circle at the anchor value
    log_val = min(log_val, _LOG_2PI + log_flat)
    return math.exp(log_val), t0


def _gl_sweep_log_kernel(frame: _Frame, t0: complex, theta0: complex, log_fg_anchor: float):
    """log of |f G1^p| est along the azimuthal sweep of the polar root.

    Spheres use the exact closed-form polar root at every sweep node;
    other shapes chain warm-started Newton solves in the polar angle on
    the analytic parametrization. The smooth factor and geometry factor
    are re-evaluated at each swept root. The rotated-slice model with the
    anchor weight, whose chord growth stays faithful at large azimuthal
    offsets, backs up any node where the chain fails.
    """
    surf, g = frame.surface, frame.grid
    p = frame.kernel.p
    width = frame.kappa / (2.0 * g.n_t)

    def term_at(theta_root, phi_s):
        t_s = complex(surf.theta_map.t(theta_root))
        try:
            log_fg = _log_fg1(frame, theta_root, phi_s)
        except InfiniteGeometryFactor:
            return -math.inf
        return log_fg + log_est_gl(t_s, g.n_t, p)

    if isinstance(surf, Sphere):
        a = surf.radius

        def log_kernel(offset):
            dphi = offset * width
            if abs(dphi) > math.pi / 2.0:
                # each direction owns a quarter turn: beyond it the sweep
                # enters the basin of the antipodal twin, which is covered
                # by the full-circle convention instead
                return -math.inf
            phi_s = frame.ep.phi_star + dphi
            try:
                theta_s = sphere_theta_root(a, phi_s, frame.x).value
            except NoRootExists:
                return -math.inf
            return term_at(theta_s, phi_s)

        return log_kernel, width
    model = azimuthal_sweep_model(surf, frame.ep.t_star, frame.ep.phi_star, frame.x, t0)
    chain = {1.0: theta0, -1.0: theta0}

    def log_kernel(offset):
        dphi = offset * width
        if abs(dphi) > math.pi / 2.0:
            return -math.inf
        phi_s = frame.ep.phi_star + dphi
        direction = 1.0 if offset >= 0 else -1.0
        root = _chain_root(
            theta_line(surf, phi_s), VAR_THETA, phi_s, frame.x, chain[direction], frame.scale
        )
        if root is None:
            return log_fg_anchor + log_est_gl(model.model_root(phi_s), g.n_t, p)
        chain[direction] = root
        return term_at(root, phi_s)

    return log_kernel, width


def tz_contribution(
    surface: Surface,
    kernel: KernelSpec,
    density: DensitySpec,
    g: QuadratureGrid,
    x,
    cone: ConeParams = ConeParams(),
    tail_n: int = _DEFAULT_TAIL_NODES,
) -> float:
    """Trapezoidal (azimuthal-rule) error contribution at x."""
    frame = _build_frame(surface, kernel, density, g, x)
    value, _, _ = _tz_internal(frame, cone, tail_n)
    return value


def gl_contribution(
    surface: Surface,
    kernel: KernelSpec,
    density: DensitySpec,
    g: QuadratureGrid,
    x,
    cone: ConeParams = ConeParams(),
    tail_n: int = _DEFAULT_TAIL_NODES,
) -> float:
    """Gauss-Legendre (polar-rule) error contribution at x."""
    frame = _build_frame(surface, kernel, density, g, x)
    value, _ = _gl_internal(frame, cone, tail_n)
    return value


def full_estimate(
    surface: Surface,
    kernel: KernelSpec,
    density: DensitySpec,
    g: QuadratureGrid,
    x,
    cone: ConeParams = ConeParams(),
    tail_n: int = _DEFAULT_TAIL_NODES,
) -> EstimateBreakdown:
    """Total quadrature-error estimate at x with its breakdown."""
    frame = _build_frame(surface, kernel, density, g, x)
    e_tz, skipped, phi0 = _tz_internal(frame, cone, tail_n)
    e_gl, t0 = _gl_internal(frame, cone, tail_n)
    return EstimateBreakdown(
        e_tz,
        e_gl,
        e_tz + e_gl,
        skipped,
        phi0,
        t0,
        frame.ep.t_star,
        frame.ep.phi_star,
        frame.ep.grid_distance,
    )
