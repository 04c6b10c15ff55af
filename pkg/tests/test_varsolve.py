"""Variational problems: shape-equation root classification, cycloid fit,
geodesics, and the Euler-Lagrange residual checker."""

import math

import numpy as np
import pytest

from spectralbvp._quad import adaptive_simpson
from spectralbvp.varsolve import (
    RootClassification,
    brachistochrone_fit,
    brachistochrone_to_vertical,
    catenoid_alpha_star,
    el_residual,
    geodesic,
    solve_transcendental,
)


def test_alpha_star():
    astar = catenoid_alpha_star()
    assert abs(astar - 1.509) <= 1e-3
    # tangency point solves cosh(u) = u sinh(u)
    ustar = math.asinh(astar)
    assert math.cosh(ustar) == pytest.approx(ustar * math.sinh(ustar), rel=1e-12)


def test_cosh_no_root_below_threshold():
    for alpha in (0.3, 1.0, 1.5):
        res = solve_transcendental("cosh_eq", alpha)
        assert res.classification == RootClassification.NONE
        assert res.roots == ()


def test_cosh_two_roots_and_film_selection():
    res = solve_transcendental("cosh_eq", 1.6)
    assert res.classification == RootClassification.TWO
    u1, u2 = res.roots
    assert u1 < u2
    for u in res.roots:
        assert math.cosh(u) == pytest.approx(1.6 * u, rel=1e-12)
    # physical branch carries the smaller film area
    assert res.physical_root == u1
    assert res.free_energies[0] < res.free_energies[1]


def test_cosh_tangent_classification():
    res = solve_transcendental("cosh_eq", catenoid_alpha_star())
    assert res.classification == RootClassification.TANGENT
    assert len(res.roots) == 1


def test_chain_threshold():
    below = solve_transcendental("sinh_eq", 1.0 - 1e-10)
    above = solve_transcendental("sinh_eq", 1.0 + 1e-10)
    assert below.classification == RootClassification.TRIVIAL_ONLY
    assert below.roots == ()
    assert above.classification == RootClassification.SINGLE
    assert len(above.roots) == 1
    res = solve_transcendental("sinh_eq", 2.0)
    u = res.roots[0]
    assert math.sinh(u) == pytest.approx(2.0 * u, rel=1e-12)


def test_arcsin_classification():
    assert solve_transcendental("arcsin_eq", 0.9).classification == RootClassification.TRIVIAL_ONLY
    res = solve_transcendental("arcsin_eq", 1.3)
    assert res.classification == RootClassification.SINGLE
    u = res.roots[0]
    assert 0 < u <= 1.0
    assert math.asin(u) == pytest.approx(1.3 * u, rel=1e-12)
    at_edge = solve_transcendental("arcsin_eq", math.pi / 2)
    assert at_edge.roots[0] == pytest.approx(1.0, abs=1e-9)
    beyond = solve_transcendental("arcsin_eq", 1.8)
    assert beyond.classification == RootClassification.BEYOND_SINGLE_VALUED


# ----------------------------------------------------------------------
# Cycloid
# ----------------------------------------------------------------------

def test_brachistochrone_special_ratio():
    l = 1.7
    h = 2.0 * l / math.pi
    fit = brachistochrone_fit(l, h)
    assert abs(fit.phi2 - math.pi) < 1e-9
    assert fit.c1 == pytest.approx(h / 2.0, rel=1e-12)


def test_brachistochrone_endpoint_and_ratio_invariant():
    for (l, h) in ((1.0, 0.4), (2.0, 2.5), (0.7, 0.1)):
        fit = brachistochrone_fit(l, h)
        assert abs(fit.x(fit.phi2) - l) < 1e-10
        assert abs(fit.y(fit.phi2) - h) < 1e-10
        ratio = (1 - math.cos(fit.phi2)) / (fit.phi2 - math.sin(fit.phi2))
        assert abs(ratio - h / l) < 1e-10


def test_brachistochrone_travel_time():
    g = 9.80665
    fit = brachistochrone_fit(1.0, 0.8, gravity=g)
    omega0 = math.sqrt(g / (4 * fit.c1))
    assert fit.travel_time == pytest.approx(fit.phi2 / (2 * omega0), rel=1e-14)


def test_brachistochrone_to_vertical():
    l = 2.3
    fit = brachistochrone_to_vertical(l)
    assert fit.phi2 == math.pi
    assert fit.c1 == pytest.approx(l / math.pi, rel=1e-14)
    for phi in (0.5, 1.5, math.pi):
        assert fit.x(phi) == pytest.approx(l / math.pi * (phi - math.sin(phi)), rel=1e-14)


def test_brachistochrone_rejects_bad_endpoint():
    with pytest.raises(ValueError):
        brachistochrone_fit(1.0, 0.0)
    with pytest.raises(ValueError):
        brachistochrone_fit(-1.0, 1.0)


def test_first_integral_along_cycloid():
    # y (1 + y'^2) constant along the curve
    fit = brachistochrone_fit(1.0, 0.6)
    yx, ypx = fit.as_function()
    vals = []
    for x in np.linspace(0.1, 0.9, 17):
        vals.append(yx(float(x)) * (1.0 + ypx(float(x)) ** 2))
    ref = 2.0 * fit.c1
    for v in vals:
        assert v == pytest.approx(ref, rel=1e-8)


# ----------------------------------------------------------------------
# Geodesics
# ----------------------------------------------------------------------

def test_sphere_meridian_branch():
    g = geodesic("sphere", (0.4, 1.1), (1.3, 1.1), radius=2.0)
    assert g.branch == "meridian"
    assert g.arclength == pytest.approx(2.0 * 0.9, rel=1e-12)


def test_sphere_plane_containment_and_length():
    g = geodesic("sphere", (0.9, 0.2), (1.7, 2.0), radius=1.5)
    assert g.branch == "great_circle"
    a_coef, b_coef = g.plane
    for s in np.linspace(0.0, 1.0, 33):
        x, y, z = g.point(float(s))
        assert abs(z - a_coef * x - b_coef * y) < 1e-9
        assert math.hypot(x, math.hypot(y, z)) == pytest.approx(1.5, rel=1e-12)
    # arclength against quadrature of |dP/ds|
    h = 1e-6
    speed = lambda s: (
        math.dist(g.point(s + h), g.point(s - h)) / (2 * h)
    )
    length = adaptive_simpson(speed, 0.01, 0.99, tol=1e-10) + 0.02 * speed(0.5)
    assert g.arclength == pytest.approx(length, rel=1e-3)


def test_sphere_antipodal_degenerate():
    with pytest.raises(ValueError):
        geodesic("sphere", (0.3, 1.0), (math.pi - 0.3, 1.0 + math.pi))


def test_cylinder_branches():
    circle = geodesic("cylinder", (0.2, 1.0), (1.2, 1.0), radius=2.0)
    assert circle.branch == "circle_arc"
    assert circle.arclength == pytest.approx(2.0 * 1.0, rel=1e-12)
    line = geodesic("cylinder", (0.2, 1.0), (0.2, 3.5), radius=2.0)
    assert line.branch == "generator"
    assert line.arclength == pytest.approx(2.5, rel=1e-12)
    helix = geodesic("cylinder", (0.0, 0.0), (1.0, 1.0), radius=1.0)
    assert helix.branch == "helix"
    assert helix.arclength == pytest.approx(math.sqrt(2.0), rel=1e-12)
    # shortest winding is taken
    wrap = geodesic("cylinder", (0.1, 0.0), (2 * math.pi - 0.1, 0.0), radius=1.0)
    assert wrap.arclength == pytest.approx(0.2, rel=1e-10)


def test_cone_generator_and_unrolled_line():
    a = 0.7
    gen = geodesic("cone", (0.5, 1.0), (0.5, 3.0), cone_slope=a)
    assert gen.branch == "generator"
    assert gen.arclength == pytest.approx(2.0 * math.sqrt(1 + a * a), rel=1e-12)
    g = geodesic("cone", (0.2, 1.0), (1.5, 2.0), cone_slope=a)
    # endpoints on the surface
    for s, (phi, z) in ((0.0, (0.2, 1.0)), (1.0, (1.5, 2.0))):
        x, y, zz = g.point(s)
        assert zz == pytest.approx(z, rel=1e-12)
        assert x == pytest.approx(a * z * math.cos(phi), rel=1e-9, abs=1e-9)
        assert y == pytest.approx(a * z * math.sin(phi), rel=1e-9, abs=1e-9)
    # arclength against quadrature along the folded curve
    h = 1e-6
    speed = lambda s: math.dist(g.point(s + h), g.point(s - h)) / (2 * h)
    length = adaptive_simpson(speed, 0.001, 0.999, tol=1e-9) + 0.002 * speed(0.5)
    assert g.arclength == pytest.approx(length, rel=1e-3)
    # every curve point lies on the cone surface
    for s in np.linspace(0.0, 1.0, 21):
        x, y, z = g.point(float(s))
        assert math.hypot(x, y) == pytest.approx(a * z, rel=1e-9)


# ----------------------------------------------------------------------
# Euler-Lagrange residual
# ----------------------------------------------------------------------

def test_line_is_extremal_of_arclength():
    res = el_residual(
        lambda x, y, yp: math.sqrt(1 + yp * yp),
        lambda x: 1.7 * x - 0.3,
        np.linspace(0.1, 0.9, 9),
        yprime=lambda x: 1.7,
    )
    assert res <= 1e-8
    # with the derivative itself taken by finite differences the noise
    # floor rises but stays small
    res_fd = el_residual(
        lambda x, y, yp: math.sqrt(1 + yp * yp), lambda x: 1.7 * x - 0.3, np.linspace(0.1, 0.9, 9)
    )
    assert res_fd <= 1e-6


def test_catenary_extremal():
    c1, c2 = 0.8, 0.1
    res = el_residual(
        lambda x, y, yp: y * math.sqrt(1 + yp * yp),
        lambda x: c1 * math.cosh((x + c2) / c1),
        np.linspace(0.05, 0.7, 14),
        yprime=lambda x: math.sinh((x + c2) / c1),
    )
    assert res <= 1e-6


def test_cycloid_extremal_of_descent_time():
    fit = brachistochrone_fit(1.0, 0.6)
    yx, ypx = fit.as_function()
    grid = np.linspace(0.2, 0.9, 25)
    res = el_residual(
        lambda x, y, yp: math.sqrt((1 + yp * yp) / y), yx, grid, yprime=ypx
    )
    assert res <= 1e-5


def test_non_extremal_has_large_residual():
    # a straight line is not an extremal of the descent-time functional
    res = el_residual(
        lambda x, y, yp: math.sqrt((1 + yp * yp) / y),
        lambda x: 0.6 * x + 0.05,
        np.linspace(0.2, 0.9, 9),
        yprime=lambda x: 0.6,
    )
    assert res > 1e-2
