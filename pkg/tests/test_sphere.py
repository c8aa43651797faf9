import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphdes.errors import DomainError
from sphdes.sphere import Design, from_angles, from_vector, random_design, random_rotation, wrap_azimuth


def vec(p):
    return [p.x, p.y, p.z]


@pytest.mark.parametrize(
    "theta, phi, expected",
    [(0.0, 1.3, [0, 0, 1]), (math.pi / 2, 0.0, [1, 0, 0]), (math.pi / 2, math.pi / 2, [0, 1, 0])],
)
def test_from_angles(theta, phi, expected):
    np.testing.assert_allclose(vec(from_angles(theta, phi)), expected, atol=1e-15)


def test_from_angles_pole_azimuth_and_domain():
    assert from_angles(0.0, 2.0).phi == 0.0
    assert from_angles(-1e-10, 0.0).theta == 0.0
    with pytest.raises(DomainError):
        from_angles(-1e-6, 0.0)
    with pytest.raises(DomainError):
        from_angles(math.pi + 1e-8, 0.0)


def test_from_vector_examples():
    p = from_vector((0, 0, 2))
    assert (p.theta, p.phi) == (0.0, 0.0)
    p = from_vector(np.array([1.0, 1.0, 0.0]) / math.sqrt(2))
    assert p.theta == pytest.approx(math.pi / 2) and p.phi == pytest.approx(math.pi / 4)
    assert from_vector((0, 0, -1)).theta == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        from_vector((0, 0, 0))


def test_azimuth_wrap():
    assert wrap_azimuth(-math.pi) == pytest.approx(math.pi)
    assert wrap_azimuth(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert from_vector((-1.0, -0.0, 0.0)).phi == pytest.approx(math.pi)


@given(theta=st.floats(1e-3, math.pi - 1e-3), phi=st.floats(-math.pi + 1e-9, math.pi))
def test_angle_round_trip(theta, phi):
    p = from_angles(theta, phi)
    q = from_vector(vec(p))
    assert q.theta == pytest.approx(theta, abs=1e-12)
    assert q.phi == pytest.approx(phi, abs=1e-12)
    assert p.x**2 + p.y**2 + p.z**2 == pytest.approx(1.0, abs=1e-12)


def test_random_design_deterministic():
    a, b = random_design(1, 7), random_design(1, 7)
    assert a == b
    assert random_design(5, 1) != random_design(5, 2)


def test_random_design_invariants():
    d = random_design(10_000, 1)
    norms = np.linalg.norm(d.xyz, axis=1)
    np.testing.assert_allclose(norms, 1.0, atol=1e-12)
    st_ = np.sin(d.theta)
    np.testing.assert_allclose(d.xyz[:, 0], st_ * np.cos(d.phi), atol=1e-12)
    np.testing.assert_allclose(d.xyz[:, 2], np.cos(d.theta), atol=1e-12)
    z = d.xyz[:, 2]
    assert abs(z.mean()) < 3 * (1 / math.sqrt(3)) / 100
    assert abs((z**2).mean() - 1 / 3) < 0.01


def test_design_validation_and_immutability():
    with pytest.raises(DomainError):
        Design([])
    with pytest.raises(DomainError):
        Design.from_vectors(np.empty((0, 3)))
    d = Design.from_vectors([[0, 0, 3], [1, 0, 0]])
    assert d.n == 2 and d.points[0].z == 1.0
    with pytest.raises(ValueError):
        d.xyz[0, 0] = 5.0
    with pytest.raises(AttributeError):
        d.label = "x"
    assert Design(d.points) == d


def test_random_rotation_orthogonal():
    R = random_rotation(3)
    np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-14)
    assert np.linalg.det(R) == pytest.approx(1.0)
