"""Ambient spaces: metrics, connections, curvature fields, Killing data."""

import numpy as np
import pytest

from prodsurf.ambient import (ambient_keys, christoffel_fd, flat_torus,
                              hyperbolic_plane, make_ambient, projective_plane,
                              round_sphere, round_three_sphere,
                              verify_conformal_killing)
from prodsurf.errors import ParameterOutOfRange

ALL_KEYS = ("S2xR", "S2xR1", "RP2xR", "RP2xR1", "H2xR", "H2xR1",
            "T2xR", "T2xR1", "S3xR", "S3xR1",
            "R3_homothetic", "R31_minkowski", "S3_hopf")


def test_registry_contains_every_ambient():
    keys = ambient_keys()
    for key in ALL_KEYS:
        assert key in keys


def test_unknown_ambient_key_raises():
    with pytest.raises(ParameterOutOfRange):
        make_ambient("nope")


@pytest.mark.parametrize("base,curv", [
    (round_sphere, 1.0),
    (projective_plane, 1.0),
    (hyperbolic_plane, -1.0),
    (flat_torus, 0.0),
    (round_three_sphere, 2.0),
])
def test_base_curvature_fields(base, curv):
    b = base()
    mid = np.array([0.5 * (ax.lo + ax.hi) for ax in b.axes])
    assert b.curvature_at(mid) == pytest.approx(curv, abs=1e-14)


@pytest.mark.parametrize("base", [round_sphere, hyperbolic_plane,
                                  flat_torus, round_three_sphere])
def test_base_metric_inverse_and_det(base):
    b = base()
    rng = np.random.default_rng(7)
    pts = np.stack([rng.uniform(ax.lo + 0.2, ax.hi - 0.2, size=5)
                    for ax in b.axes], axis=-1)
    g = b.metric_at(pts)
    ginv = b.metric_inverse_at(pts)
    eye = np.broadcast_to(np.eye(b.dim), g.shape)
    assert np.allclose(g @ ginv, eye, atol=1e-12)
    assert np.allclose(np.linalg.det(g), b.metric_det_at(pts), atol=1e-12)


@pytest.mark.parametrize("key", ["S2xR", "H2xR1", "S3xR", "R3_homothetic",
                                 "R31_minkowski", "S3_hopf"])
def test_analytic_christoffels_match_finite_differences(key):
    ambient = make_ambient(key)
    rng = np.random.default_rng(11)
    lo = np.array([0.7] * ambient.dim)
    pts = lo + rng.uniform(0.0, 0.4, size=(6, ambient.dim))
    gamma = ambient.christoffel_at(pts)
    gamma_fd = christoffel_fd(ambient.metric_at, pts)
    assert np.max(np.abs(gamma - gamma_fd)) < 5e-7
    # torsion-free connection: symmetric in the lower pair
    assert np.allclose(gamma, np.swapaxes(gamma, -1, -2), atol=1e-13)


def test_lorentzian_flat_metric_is_time_first():
    ambient = make_ambient("R31_minkowski")
    g = ambient.metric_at(np.zeros(3))
    assert np.allclose(g, np.diag([-1.0, 1.0, 1.0]))
    assert ambient.epsilon == -1
    assert ambient.signature == "lorentzian"


@pytest.mark.parametrize("key,flag", [
    ("T2xR", True), ("T2xR1", True), ("R3_homothetic", True),
    ("R31_minkowski", True), ("S3_hopf", True),
    ("S2xR", False), ("H2xR", False), ("S3xR", False),
])
def test_einstein_flags(key, flag):
    assert make_ambient(key).is_einstein is flag


def test_product_field_is_killing_with_zero_factor():
    ambient = make_ambient("S2xR")
    pts = np.array([[0.8, 1.0, 0.3], [1.4, 2.0, -0.5]])
    T = ambient.killing.field_at(pts)
    assert np.allclose(T, [0.0, 0.0, 1.0])
    assert np.allclose(ambient.killing.conformal_factor(pts), 0.0)


def test_homothetic_field_has_unit_factor():
    ambient = make_ambient("R3_homothetic")
    pts = np.array([[0.3, -0.2, 0.9]])
    assert np.allclose(ambient.killing.field_at(pts), pts)
    assert np.allclose(ambient.killing.conformal_factor(pts), 1.0)
    normal = np.array([[0.0, 0.0, 1.0]])
    assert np.allclose(
        ambient.killing.normal_derivative_of_factor(pts, normal), 0.0)


def test_hopf_field_is_unit_length():
    ambient = make_ambient("S3_hopf")
    rng = np.random.default_rng(3)
    pts = np.stack([rng.uniform(0.5, 2.4, size=8),
                    rng.uniform(0.5, 2.4, size=8),
                    rng.uniform(0.0, 6.0, size=8)], axis=-1)
    T = ambient.killing.field_at(pts)
    g = ambient.metric_at(pts)
    norms = np.einsum("...i,...ij,...j->...", T, g, T)
    assert np.allclose(norms, 1.0, atol=1e-12)
    assert np.allclose(ambient.killing.conformal_factor(pts), 0.0)


@pytest.mark.parametrize("key", ["S2xR", "H2xR1", "T2xR",
                                 "R3_homothetic", "R31_minkowski", "S3_hopf"])
def test_distinguished_fields_satisfy_conformal_equation(key):
    ambient = make_ambient(key)
    rng = np.random.default_rng(5)
    pts = np.stack([rng.uniform(0.6, 1.1, size=6)
                    for _ in range(ambient.dim)], axis=-1)
    result = verify_conformal_killing(ambient, pts)
    assert result.passed, result


def test_projective_plane_halves_the_sphere():
    rp2 = projective_plane()
    assert rp2.quotient_factor == 0.5
    s2 = round_sphere()
    pts = np.array([[1.1, 0.7], [0.4, 2.2]])
    assert np.allclose(rp2.metric_at(pts), s2.metric_at(pts))
