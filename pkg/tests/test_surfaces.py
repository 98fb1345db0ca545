import cmath
import math

import numpy as np
import pytest

from layerr.surfaces import (
    COSINE_MAP,
    LINEAR_MAP,
    Axisymmetric,
    Sphere,
    Spheroid,
    TaylorSurrogate,
    paper_blob,
    theta_map_by_name,
)


def surfaces_under_test():
    return [
        ("sphere", Sphere(1.0)),
        ("spheroid", Spheroid(1.0, 3.0)),
        ("blob", paper_blob()),
    ]


# ---------------------------------------------------------------- theta maps


def test_linear_map_midpoint():
    assert LINEAR_MAP.theta(0.0) == pytest.approx(math.pi / 2)


def test_cosine_map_endpoints():
    assert COSINE_MAP.theta(-1.0) == pytest.approx(0.0, abs=1e-15)
    assert COSINE_MAP.theta(1.0) == pytest.approx(math.pi, abs=1e-15)
    assert LINEAR_MAP.theta(-1.0) == pytest.approx(0.0, abs=1e-15)


def test_cosine_inverse_midpoint():
    assert COSINE_MAP.t(math.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_maps_roundtrip():
    for m in (LINEAR_MAP, COSINE_MAP):
        for t in np.linspace(-0.99, 0.99, 21):
            assert m.t(m.theta(t)) == pytest.approx(t, abs=1e-14)


def test_inverse_rejects_out_of_range():
    with pytest.raises(ValueError):
        COSINE_MAP.t(-0.5)
    with pytest.raises(ValueError):
        LINEAR_MAP.t(3.5)


def test_complex_map_principal_branch():
    w = COSINE_MAP.theta(0.3 + 0.2j)
    assert COSINE_MAP.t(w) == pytest.approx(0.3 + 0.2j, abs=1e-14)


def test_theta_map_by_name():
    assert theta_map_by_name("Linear") is LINEAR_MAP
    assert theta_map_by_name("cosine") is COSINE_MAP
    with pytest.raises(ValueError):
        theta_map_by_name("chebyshev")


# ---------------------------------------------------------------- evaluation


def test_sphere_equator_point_and_partials():
    s = Sphere(1.0)
    pos, dth, dph = s.eval_sph(math.pi / 2, 0.0)
    assert pos == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)
    assert dth == pytest.approx([0.0, 0.0, -1.0], abs=1e-15)
    assert dph == pytest.approx([0.0, 1.0, 0.0], abs=1e-15)


def test_spheroid_pole():
    s = Spheroid(1.0, 3.0)
    pos = s.position(0.0, 0.7)
    assert pos == pytest.approx([0.0, 0.0, 3.0], abs=1e-15)


def test_blob_equator_harmonic_vanishes():
    # the radius perturbation carries cos(theta), so it dies on the equator
    b = paper_blob()
    pos = np.real(b.position(math.pi / 2, 0.0))
    assert pos == pytest.approx([1.0, 0.0, 0.0], abs=1e-14)


def test_eval_t_chain_rule_cosine_center():
    s = Sphere(1.0)
    pos, d_t, _ = s.eval_t(0.0, 0.0)
    assert np.real(pos) == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)
    assert np.real(d_t) == pytest.approx([0.0, 0.0, -1.0], abs=1e-12)


def test_eval_t_linear_jacobian():
    s = Spheroid(1.0, 3.0, LINEAR_MAP)
    theta = s.theta_map.theta(0.3)
    _, d_theta, _ = s.eval_sph(theta, 1.1)
    _, d_t, _ = s.eval_t(0.3, 1.1)
    assert np.real(d_t) == pytest.approx(np.real(d_theta) * math.pi / 2, rel=1e-13)


def test_area_element_sphere_cosine_constant():
    s = Sphere(1.0)
    for t in (-0.9, -0.2, 0.4, 0.8):
        for phi in (0.0, 2.0):
            assert s.area_element(t, phi) == pytest.approx(1.0, rel=1e-12)


def test_area_element_sphere_linear():
    s = Sphere(1.0, LINEAR_MAP)
    assert s.area_element(0.0, 0.0) == pytest.approx(math.pi / 2, rel=1e-13)


def test_area_element_scales_with_radius():
    s = Sphere(2.0)
    assert s.area_element(0.3, 1.0) == pytest.approx(4.0, rel=1e-12)


def test_grid_anisotropy_sphere():
    s = Sphere(1.0)
    assert s.grid_anisotropy(0.0, 0.0) == pytest.approx(1.0, rel=1e-12)
    s_lin = Sphere(1.0, LINEAR_MAP)
    assert s_lin.grid_anisotropy(0.0, 0.0) == pytest.approx(math.pi / 2, rel=1e-12)


def test_grid_anisotropy_off_equator_matches_finite_differences():
    s = Sphere(1.0)
    t, phi = 1.0 / math.sqrt(2.0), 0.4
    h = 1e-6
    d_t = (np.real(s.position(s.theta_map.theta(t + h), phi))
           - np.real(s.position(s.theta_map.theta(t - h), phi))) / (2 * h)
    d_p = (np.real(s.position(s.theta_map.theta(t), phi + h))
           - np.real(s.position(s.theta_map.theta(t), phi - h))) / (2 * h)
    expected = np.linalg.norm(d_t) / np.linalg.norm(d_p)
    assert s.grid_anisotropy(t, phi) == pytest.approx(expected, rel=1e-6)


def test_partials_match_finite_differences():
    rng = np.random.default_rng(11)
    h = 1e-6
    for name, s in surfaces_under_test():
        for _ in range(100):
            theta = 0.05 + (math.pi - 0.1) * rng.random()
            phi = 2 * math.pi * rng.random()
            _, dth, dph = s.eval_sph(theta, phi)
            fd_th = (np.real(s.position(theta + h, phi)) - np.real(s.position(theta - h, phi))) / (2 * h)
            fd_ph = (np.real(s.position(theta, phi + h)) - np.real(s.position(theta, phi - h))) / (2 * h)
            assert np.real(dth) == pytest.approx(fd_th, rel=1e-8, abs=1e-8), name
            assert np.real(dph) == pytest.approx(fd_ph, rel=1e-8, abs=1e-8), name


def test_complex_evaluation_reduces_to_real():
    for name, s in surfaces_under_test():
        pos_r, dth_r, dph_r = s.eval_sph(0.9, 2.2)
        pos_c, dth_c, dph_c = s.eval_sph(complex(0.9, 0.0), 2.2)
        assert np.all(pos_c == pos_r) and np.all(dth_c == dth_r) and np.all(dph_c == dph_r), name


def test_conjugation_symmetry():
    w = 0.8 + 0.35j
    for name, s in surfaces_under_test():
        pos_plus = s.position(w, 1.3)
        pos_minus = s.position(w.conjugate(), 1.3)
        assert np.conj(pos_plus) == pytest.approx(pos_minus, rel=1e-13, abs=1e-13), name


def test_area_element_positive_interior_vanishes_at_poles():
    for name, s in surfaces_under_test():
        for t in np.linspace(-0.95, 0.95, 9):
            assert s.area_element(t, 0.7) > 0, name
        _, dth, dph = s.eval_sph(0.0, 0.7)
        assert np.linalg.norm(np.cross(np.real(dth), np.real(dph))) < 1e-12, name
        _, dth, dph = s.eval_sph(math.pi, 0.7)
        assert np.linalg.norm(np.cross(np.real(dth), np.real(dph))) < 1e-12, name


# ------------------------------------------------------------ Taylor models


def test_surrogate_center_reproduces_position():
    for name, s in surfaces_under_test():
        surro = s.taylor_surrogate(1.1, 0.6, 4)
        pos, _ = surro.eval_theta(1.1)
        assert np.real(pos) == pytest.approx(np.real(s.position(1.1, 0.6)), abs=1e-14), name
        pos, _ = surro.eval_phi(0.6)
        assert np.real(pos) == pytest.approx(np.real(s.position(1.1, 0.6)), abs=1e-14), name


def test_surrogate_matches_sphere_within_taylor_remainder():
    # trig components with unit amplitude: remainder below 0.3^5/5! ~ 2.1e-5
    s = Sphere(1.0)
    surro = s.taylor_surrogate(1.2, 0.8, 4)
    for off in (-0.3, -0.15, 0.12, 0.3):
        approx, _ = surro.eval_theta(1.2 + off)
        exact = np.real(s.position(1.2 + off, 0.8))
        assert np.max(np.abs(np.real(approx) - exact)) < 2.5e-5
        approx, _ = surro.eval_phi(0.8 + off)
        exact = np.real(s.position(1.2, 0.8 + off))
        assert np.max(np.abs(np.real(approx) - exact)) < 2.5e-5


def test_surrogate_polynomial_reproduction():
    # a cubic per component is reproduced exactly by the order-4 model
    coeffs = np.array(
        [
            [1.0, -0.5, 2.0],  # value
            [0.3, 0.7, -1.1],  # first derivative
            [-2.0, 0.4, 0.0],  # second
            [0.9, -0.2, 1.5],  # third
            [0.0, 0.0, 0.0],
        ]
    )
    surro = TaylorSurrogate(0.5, 1.0, 4, coeffs, coeffs)

    def poly(delta):
        return sum(coeffs[j] * delta**j / math.factorial(j) for j in range(5))

    for delta in (-0.7, 0.0, 0.4, 1.3):
        pos, dpos = surro.eval_theta(0.5 + delta)
        assert np.real(pos) == pytest.approx(poly(delta), abs=1e-13)
        dpoly = sum(coeffs[j] * j * delta ** (j - 1) / math.factorial(j) for j in range(1, 5))
        assert np.real(dpos) == pytest.approx(dpoly, abs=1e-13)


def test_blob_surrogate_derivatives_from_richardson():
    # finite-difference path: compare first derivative table against analytic
    b = paper_blob()
    surro = b.taylor_surrogate(1.0, 0.5, 4)
    _, dth, dph = b.eval_sph(1.0, 0.5)
    assert surro.coeffs_theta[1] == pytest.approx(np.real(dth), rel=1e-8, abs=1e-9)
    assert surro.coeffs_phi[1] == pytest.approx(np.real(dph), rel=1e-8, abs=1e-9)


def test_surrogate_rejects_bad_order():
    s = Sphere(1.0)
    with pytest.raises(ValueError):
        s.taylor_surrogate(1.0, 0.0, 0)
    b = paper_blob()
    with pytest.raises(ValueError):
        b.taylor_surrogate(1.0, 0.0, 5)


def test_axisymmetric_with_callable_profiles():
    # gently modulated axisymmetric shape exercises the generic formulas
    a = lambda th: 1.0 + 0.1 * np.sin(th)
    da = lambda th: 0.1 * np.cos(th)
    b = lambda th: 1.2 + 0.0 * th
    db = lambda th: 0.0 * th
    s = Axisymmetric(a, da, b, db)
    h = 1e-6
    theta, phi = 0.9, 0.3
    _, dth, _ = s.eval_sph(theta, phi)
    fd = (np.real(s.position(theta + h, phi)) - np.real(s.position(theta - h, phi))) / (2 * h)
    assert np.real(dth) == pytest.approx(fd, rel=1e-8)
    assert s.profile_a(theta) == pytest.approx(1.0 + 0.1 * math.sin(theta))
