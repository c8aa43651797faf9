"""Built-in designs: Platonic solids and longitude-latitude product designs.

Product designs take ``n_theta`` equally weighted polar nodes ``x_i = cos theta_i``
and ``n_phi`` equally spaced azimuths. With ``n_phi >= 2d+1`` the azimuth
sums kill every harmonic with ``0 < |m| <= 2d``. Making the polar nodes an
equal-weight quadrature that is exact through degree ``2d`` on ``[-1, 1]``
removes the ``m = 0`` terms as well, so the product is a spherical
``2d``-design.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .sphere import Design

__all__ = [
    "PLATONIC_NAMES",
    "TABLE1",
    "ProductDesignSpec",
    "Table1Row",
    "default_product_spec",
    "lower_bound",
    "platonic",
    "polar_nodes",
    "product_design",
]

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class Table1Row:
    """Published minimum point counts for order-``d`` regression.

    ``n_2d`` and ``n_2d1`` are the smallest known spherical ``2d``- and
    ``(2d+1)``-designs of Hardin and Sloane; ``n_theta``/``n_phi`` are the
    product-design settings of Dette, Melas and Pepelyshev.
    """

    d: int
    n_2d: int
    n_2d1: int
    n_theta: int
    n_phi: int

    @property
    def n_params(self) -> int:
        return (self.d + 1) ** 2

    @property
    def t_min(self) -> int:
        return 2 * self.d

    @property
    def n_min(self) -> int:
        return min(self.n_2d, self.n_2d1)

    @property
    def n_tot(self) -> int:
        return self.n_theta * self.n_phi


TABLE1 = {
    row.d: row
    for row in (
        Table1Row(1, 4, 6, 2, 3),
        Table1Row(2, 14, 12, 4, 5),
        Table1Row(3, 26, 24, 6, 7),
        Table1Row(4, 36, 48, 9, 9),
        Table1Row(5, 60, 70, 13, 11),
        Table1Row(6, 84, 94, 17, 13),
        Table1Row(7, 108, 120, 23, 15),
    )
}


def lower_bound(t: int) -> int:
    """Fewest points any spherical t-design on S^2 can have."""
    if t < 0 or int(t) != t:
        raise DomainError("t must be a nonnegative integer")
    if t % 2 == 0:
        return (t + 2) ** 2 // 4
    return (t + 1) * (t + 3) // 4


def _platonic_vectors(name: str) -> np.ndarray:
    g = GOLDEN
    if name == "tetrahedron":
        v = [s for s in itertools.product((1, -1), repeat=3) if s[0] * s[1] * s[2] > 0]
        return np.array(v, dtype=float) / math.sqrt(3.0)
    if name == "octahedron":
        return np.array(
            [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
            dtype=float,
        )
    if name == "cube":
        return np.array(list(itertools.product((1, -1), repeat=3)), dtype=float) / math.sqrt(3.0)
    if name == "icosahedron":
        base = [(0.0, s1, s2 * g) for s1 in (1, -1) for s2 in (1, -1)]
        v = [np.roll(b, k) for k in range(3) for b in base]
        return np.array(v) / math.sqrt(1.0 + g * g)
    if name == "dodecahedron":
        # face centres of the icosahedron above
        cube = list(itertools.product((1.0, -1.0), repeat=3))
        base = [(0.0, s1 * g, s2 / g) for s1 in (1, -1) for s2 in (1, -1)]
        v = [np.array(c) for c in cube] + [np.roll(b, k) for k in range(3) for b in base]
        return np.array(v) / math.sqrt(3.0)
    raise DomainError(f"unknown solid {name!r}; choose from {', '.join(PLATONIC_NAMES)}")


PLATONIC_NAMES = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")


def platonic(name: str) -> Design:
    """Vertices of a Platonic solid inscribed in the unit sphere.

    Orientations are fixed: the tetrahedron uses the cube vertices with even
    sign product, the icosahedron the cyclic permutations of ``(0, +-1, +-g)``,
    the dodecahedron its dual ``(+-1, +-1, +-1)`` plus cyclic permutations of
    ``(0, +-g, +-1/g)``, all scaled to unit length.
    """
    return Design.from_vectors(_platonic_vectors(name), label=name)


def _legendre_with_derivative(kmax: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``P_l(x)`` and ``P_l'(x)`` for ``l = 0..kmax``; arrays of shape (kmax+1, len(x))."""
    p = np.zeros((kmax + 1, x.size))
    dp = np.zeros_like(p)
    p[0] = 1.0
    if kmax >= 1:
        p[1] = x
        dp[1] = 1.0
    for l in range(1, kmax):
        p[l + 1] = ((2 * l + 1) * x * p[l] - l * p[l - 1]) / (l + 1)
        dp[l + 1] = dp[l - 1] + (2 * l + 1) * p[l]
    return p, dp


def _moment_system(pairs: np.ndarray, d: int, n: int, odd: bool):
    p, dp = _legendre_with_derivative(2 * d, pairs)
    even = np.arange(2, 2 * d + 1, 2)
    resid = 2.0 * p[even].sum(axis=1)
    if odd:
        resid += _legendre_with_derivative(2 * d, np.zeros(1))[0][even, 0]
    return resid / n, 2.0 * dp[even] / n


def _solve_pairs(start: np.ndarray, d: int, n: int, odd: bool, max_iter: int = 500):
    a = start.copy()
    lam = 1e-3
    F, J = _moment_system(a, d, n, odd)
    cost = float(F @ F)
    for _ in range(max_iter):
        if cost < 1e-30:
            break
        # minimum-norm damped step, valid for square and underdetermined systems
        step = -J.T @ np.linalg.solve(J @ J.T + lam * np.eye(J.shape[0]), F)
        trial = a + step
        Ft, Jt = _moment_system(trial, d, n, odd)
        ct = float(Ft @ Ft)
        if ct < cost and np.all(np.abs(trial) < 1.0):
            a, F, J, cost = trial, Ft, Jt, ct
            lam = max(lam / 3.0, 1e-15)
        else:
            lam *= 4.0
            if lam > 1e12:
                break
    return np.abs(a), cost


def polar_nodes(d: int, n_theta: int, retries: int = 20, seed: int = 0) -> np.ndarray:
    """Equal-weight nodes ``x_i = cos theta_i`` exact for ``P_2..P_2d``.

    Nodes are symmetric about 0 (``n_theta // 2`` pairs ``+-a_k``, plus 0 when
    ``n_theta`` is odd), so odd moments vanish by construction and the even
    moment equations ``sum_i P_2k(x_i) = 0``, ``k = 1..d``, are solved by a
    damped (Levenberg-Marquardt) Newton iteration starting from equispaced
    nodes. Returned in descending order (north to south).

    Raises :class:`ConvergenceError` when no interior, distinct solution is
    found after ``retries`` jittered restarts.
    """
    if d < 0 or n_theta < 1:
        raise DomainError("need d >= 0 and n_theta >= 1")
    if n_theta < d + 1:
        raise DomainError(f"n_theta={n_theta} is below the minimum d+1={d + 1}")
    if d == 0:
        x = -1.0 + (2.0 * np.arange(1, n_theta + 1) - 1.0) / n_theta
        return np.sort(x)[::-1]
    npairs = n_theta // 2
    odd = bool(n_theta % 2)
    grid = -1.0 + (2.0 * np.arange(1, n_theta + 1) - 1.0) / n_theta
    start = np.sort(grid[grid > 1e-12])
    rng = np.random.default_rng(seed)
    for attempt in range(retries + 1):
        init = start if attempt == 0 else np.clip(
            start + rng.normal(scale=0.5 / n_theta, size=npairs), 1e-3, 1 - 1e-3
        )
        a, cost = _solve_pairs(init, d, n_theta, odd)
        a = np.sort(a)
        gaps = np.diff(np.concatenate(([0.0] if odd else [-a[0]], a)))
        if cost < 1e-28 and a[-1] < 1.0 and a[0] > 0.0 and np.all(gaps > 1e-8):
            x = np.concatenate((a, -a, [0.0] if odd else []))
            return np.sort(x)[::-1]
    raise ConvergenceError(
        f"no equal-weight polar nodes found for d={d}, n_theta={n_theta} "
        f"after {retries + 1} attempts"
    )


@dataclass(frozen=True)
class ProductDesignSpec:
    """Settings of a longitude-latitude product design of order ``d``."""

    d: int
    n_theta: int
    n_phi: int
    alpha: float = 0.0

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("d must be nonnegative")
        if self.n_phi < 2 * self.d + 1:
            raise DomainError(f"n_phi={self.n_phi} must be at least 2d+1={2 * self.d + 1}")
        if self.n_theta < self.d + 1:
            raise DomainError(f"n_theta={self.n_theta} must be at least d+1={self.d + 1}")


def default_product_spec(d: int, alpha: float = 0.0) -> ProductDesignSpec:
    """Table 1 settings for ``d <= 7``; beyond that, the smallest ``n_theta`` that solves."""
    if d in TABLE1:
        row = TABLE1[d]
        return ProductDesignSpec(d, row.n_theta, row.n_phi, alpha)
    if d == 0:
        return ProductDesignSpec(0, 1, 1, alpha)
    for n_theta in range(d + 1, 6 * d + 1):
        try:
            polar_nodes(d, n_theta, retries=5)
        except ConvergenceError:
            continue
        return ProductDesignSpec(d, n_theta, 2 * d + 1, alpha)
    raise ConvergenceError(f"no polar node count up to {6 * d} solved for d={d}")


def product_design(spec: ProductDesignSpec) -> Design:
    """All points ``(theta_i, alpha + 2 pi j / n_phi - pi)``, nodes outer, azimuths inner."""
    x = polar_nodes(spec.d, spec.n_theta)
    theta = np.arccos(x)
    j = np.arange(1, spec.n_phi + 1)
    phi = spec.alpha + 2.0 * np.pi * j / spec.n_phi - np.pi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    label = f"product-d{spec.d}-{spec.n_theta}x{spec.n_phi}"
    return Design.from_angles(tt.ravel(), pp.ravel(), label=label)
