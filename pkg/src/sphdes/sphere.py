"""Points on the unit sphere and equally weighted designs.

A :class:`SpherePoint` carries both its unit vector and its polar/azimuthal
angles. A :class:`Design` stores the same information column-wise as numpy
arrays so that the numerical modules can work on whole designs at once.

Angles follow the physics convention: ``theta`` is the polar angle in
``[0, pi]`` measured from the north pole ``(0, 0, 1)``, ``phi`` is the
azimuth in ``(-pi, pi]`` measured from the x-axis. At the poles the azimuth
is set to 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "SpherePoint",
    "Design",
    "from_angles",
    "from_vector",
    "random_design",
    "wrap_azimuth",
]

_ANGLE_SLACK = 1e-9
# Vectors this close to unit length are stored verbatim so that
# re-normalizing never perturbs the last bits of already-unit input.
_UNIT_SLACK = 4e-16


def wrap_azimuth(phi):
    """Wrap azimuths into ``(-pi, pi]``. Works on scalars and arrays."""
    wrapped = np.remainder(np.asarray(phi, dtype=float) + np.pi, 2 * np.pi) - np.pi
    wrapped = np.where(wrapped <= -np.pi, wrapped + 2 * np.pi, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


def _angles_from_xyz(xyz: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rho = np.hypot(xyz[:, 0], xyz[:, 1])
    theta = np.arctan2(rho, xyz[:, 2])
    phi = np.where(rho > 0.0, np.arctan2(xyz[:, 1], xyz[:, 0]), 0.0)
    phi = np.where(phi <= -np.pi, np.pi, phi)
    return theta, phi


def _xyz_from_angles(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _check_polar(theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)):
        raise DomainError("polar angle must be finite")
    if np.any(theta < -_ANGLE_SLACK) or np.any(theta > np.pi + _ANGLE_SLACK):
        bad = theta[(theta < -_ANGLE_SLACK) | (theta > np.pi + _ANGLE_SLACK)].flat[0]
        raise DomainError(f"polar angle {bad!r} outside [0, pi]")
    return np.clip(theta, 0.0, np.pi)


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", v, v))
    if np.any(norms == 0.0) or not np.all(np.isfinite(norms)):
        idx = int(np.flatnonzero((norms == 0.0) | ~np.isfinite(norms))[0])
        raise DomainError(f"vector {idx} has zero or non-finite length")
    scale = np.where(np.abs(norms - 1.0) <= _UNIT_SLACK, 1.0, norms)
    return v / scale[:, None]


@dataclass(frozen=True)
class SpherePoint:
    """A direction on the unit sphere."""

    x: float
    y: float
    z: float
    theta: float
    phi: float

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __neg__(self) -> "SpherePoint":
        return from_vector((-self.x, -self.y, -self.z))


def from_angles(theta: float, phi: float) -> SpherePoint:
    """Build a point from polar angle ``theta`` and azimuth ``phi`` (radians).

    ``theta`` may exceed ``[0, pi]`` by at most 1e-9 (it is then clipped);
    anything further is a :class:`DomainError`. ``phi`` is wrapped.
    """
    if not math.isfinite(phi):
        raise DomainError("azimuth must be finite")
    th = float(_check_polar(theta))
    ph = wrap_azimuth(phi)
    if th == 0.0 or th == math.pi:
        ph = 0.0
    x, y, z = _xyz_from_angles(np.array(th), np.array(ph))
    return SpherePoint(float(x), float(y), float(z), th, ph)


def from_vector(v: Sequence[float]) -> SpherePoint:
    """Normalize a nonzero 3-vector and recover its angles."""
    arr = np.asarray(v, dtype=float).reshape(1, 3)
    xyz = _normalize_rows(arr)
    theta, phi = _angles_from_xyz(xyz)
    return SpherePoint(*map(float, xyz[0]), float(theta[0]), float(phi[0]))


class Design:
    """An equally weighted, nonempty, ordered set of points on the sphere.

    Construct from unit vectors with :meth:`from_vectors`, from angles with
    :meth:`from_angles`, or from a sequence of :class:`SpherePoint`. The
    coordinate arrays are read-only.
    """

    __slots__ = ("xyz", "theta", "phi", "label")

    def __init__(self, points: Iterable[SpherePoint], label: str | None = None):
        pts = list(points)
        if not pts:
            raise DomainError("a design needs at least one point")
        xyz = np.array([[p.x, p.y, p.z] for p in pts], dtype=float)
        theta = np.array([p.theta for p in pts], dtype=float)
        phi = np.array([p.phi for p in pts], dtype=float)
        self._set(xyz, theta, phi, label)

    def _set(self, xyz, theta, phi, label):
        for arr in (xyz, theta, phi):
            arr.setflags(write=False)
        object.__setattr__(self, "xyz", xyz)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Design is immutable")

    @classmethod
    def from_vectors(cls, vectors, label: str | None = None) -> "Design":
        v = np.array(vectors, dtype=float).reshape(-1, 3)
        if v.shape[0] == 0:
            raise DomainError("a design needs at least one point")
        xyz = _normalize_rows(v)
        theta, phi = _angles_from_xyz(xyz)
        obj = cls.__new__(cls)
        obj._set(xyz, theta, phi, label)
        return obj

    @classmethod
    def from_angles(cls, theta, phi, label: str | None = None) -> "Design":
        theta = np.atleast_1d(_check_polar(theta)).astype(float)
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        if theta.shape != phi.shape or theta.ndim != 1:
            raise DomainError("theta and phi must be 1-d arrays of equal length")
        if theta.size == 0:
            raise DomainError("a design needs at least one point")
        if not np.all(np.isfinite(phi)):
            raise DomainError("azimuth must be finite")
        phi = np.atleast_1d(wrap_azimuth(phi))
        phi = np.where((theta == 0.0) | (theta == np.pi), 0.0, phi)
        xyz = _xyz_from_angles(theta, phi)
        obj = cls.__new__(cls)
        obj._set(xyz, theta, phi, label)
        return obj

    @property
    def points(self) -> list[SpherePoint]:
        return [
            SpherePoint(float(x), float(y), float(z), float(t), float(p))
            for (x, y, z), t, p in zip(self.xyz, self.theta, self.phi)
        ]

    @property
    def n(self) -> int:
        return self.xyz.shape[0]

    def __len__(self) -> int:
        return self.xyz.shape[0]

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> SpherePoint:
        return self.points[i]

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return np.array_equal(self.xyz, other.xyz)

    __hash__ = None

    def __repr__(self):
        label = f", label={self.label!r}" if self.label else ""
        return f"Design(n={self.n}{label})"

    def with_label(self, label: str | None) -> "Design":
        obj = Design.__new__(Design)
        obj._set(self.xyz, self.theta, self.phi, label)
        return obj

    def rotated(self, rotation: np.ndarray) -> "Design":
        """Apply a 3x3 orthogonal matrix to every point."""
        return Design.from_vectors(self.xyz @ np.asarray(rotation).T, label=self.label)


def random_design(n: int, seed: int) -> Design:
    """``n`` independent uniform points on the sphere.

    Uses ``numpy.random.default_rng(seed)`` (PCG64). Two vectors ``u`` and
    ``v`` of ``n`` uniforms are drawn in that order and mapped through
    ``theta = arccos(1 - 2u)``, ``phi = 2 pi v - pi``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    v = rng.random(n)
    theta = np.arccos(1.0 - 2.0 * u)
    phi = 2.0 * np.pi * v - np.pi
    return Design.from_angles(theta, phi, label=f"random-{n}-seed{seed}")


def random_rotation(seed: int) -> np.ndarray:
    """Haar-random proper rotation from a seeded generator."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
