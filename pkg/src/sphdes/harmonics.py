"""Associated Legendre functions and the real spherical harmonic basis.

The real harmonics are orthonormal under the *normalized* uniform measure on
the sphere (total mass 1), carry no Condon-Shortley phase, and are indexed by
degree ``l`` and order ``-l <= m <= l``::

    Y_l^0      = sqrt(2l+1) P_l(cos theta)
    Y_l^m      = sqrt(2(2l+1)(l-|m|)!/(l+|m|)!) P_l^|m|(cos theta) sin(|m| phi),  m < 0
    Y_l^m      = sqrt(2(2l+1)(l-m)!/(l+m)!)     P_l^m(cos theta)   cos(m phi),    m > 0

Basis vectors of order ``d`` list ``Y_l^m`` for ``l = 0..d`` with ``m``
ascending inside each degree, so the entry for ``(l, m)`` sits at index
``l*l + l + m``.

High-degree values come from a fully normalized ascending recurrence on
``Pbar_l^m = sqrt((2l+1)(l-m)!/(l+m)!) P_l^m`` that never forms a factorial
ratio. :func:`assoc_legendre` is the unnormalized reference path, limited to
``l <= 40``.
"""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .errors import DomainError
from .sphere import SpherePoint, _check_polar

__all__ = [
    "ASSOC_LEGENDRE_MAX_DEGREE",
    "HARMONIC_MAX_DEGREE",
    "assoc_legendre",
    "basis_index",
    "basis_labels",
    "basis_matrix",
    "basis_size",
    "basis_vector",
    "degree_blocks",
    "normalized_legendre",
    "real_sph_harm",
]

ASSOC_LEGENDRE_MAX_DEGREE = 40
HARMONIC_MAX_DEGREE = 200


def basis_size(d: int) -> int:
    return (d + 1) ** 2


def basis_index(l: int, m: int) -> int:
    """Position of ``Y_l^m`` in a basis vector."""
    _check_index(l, m, signed=True)
    return l * l + l + m


def basis_labels(d: int) -> list[tuple[int, int]]:
    """``(l, m)`` pairs in basis-vector order."""
    return [(l, m) for l in range(d + 1) for m in range(-l, l + 1)]


def _check_index(l, m, signed):
    if int(l) != l or int(m) != m:
        raise DomainError(f"indices must be integers, got l={l!r}, m={m!r}")
    if l < 0:
        raise DomainError(f"degree l={l} must be nonnegative")
    lo = -l if signed else 0
    if not lo <= m <= l:
        rng = "|m| <= l" if signed else "0 <= m <= l"
        raise DomainError(f"order m={m} violates {rng} for l={l}")


def assoc_legendre(l: int, m: int, x):
    """Unnormalized associated Legendre function without Condon-Shortley phase.

    ``P_l^m(x) = (1 - x^2)^(m/2) d^m/dx^m P_l(x)``. Evaluated by the standard
    three-term recurrence in ``l`` starting from ``P_m^m = (2m-1)!! (1-x^2)^(m/2)``.
    Limited to ``l <= 40``; above that use :func:`normalized_legendre`.
    """
    _check_index(l, m, signed=False)
    if l > ASSOC_LEGENDRE_MAX_DEGREE:
        raise DomainError(
            f"assoc_legendre is a reference path for l <= {ASSOC_LEGENDRE_MAX_DEGREE}"
        )
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0) or not np.all(np.isfinite(x)):
        raise DomainError("x must lie in [-1, 1]")
    s = np.sqrt((1.0 - x) * (1.0 + x))
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = pmm * (2 * k - 1) * s
    if l == m:
        out = pmm
    else:
        p0, p1 = pmm, x * (2 * m + 1) * pmm
        for ll in range(m + 2, l + 1):
            p0, p1 = p1, (x * (2 * ll - 1) * p1 - (ll + m - 1) * p0) / (ll - m)
        out = p1
    return float(out) if out.ndim == 0 else out


def _recurrence_coeffs(l: int, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lm = (l - m) * (l + m)
    a = np.sqrt((2 * l + 1) * (2 * l - 1) / lm)
    b = np.sqrt((2 * l + 1) * (l + m - 1) * (l - m - 1) / ((2 * l - 3) * lm))
    return a, b


def normalized_legendre(l: int, m: int, x):
    """``Pbar_l^m(x) = sqrt((2l+1)(l-m)!/(l+m)!) P_l^m(x)`` for ``0 <= m <= l``.

    Ascending recurrence in ``l`` at fixed ``m``; safe for large ``l``.
    """
    _check_index(l, m, signed=False)
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = pmm * math.sqrt((2 * k + 1) / (2 * k)) * s
    if l == m:
        out = pmm
    else:
        p0, p1 = pmm, math.sqrt(2 * m + 3) * x * pmm
        for ll in range(m + 2, l + 1):
            a, b = _recurrence_coeffs(ll, np.array(m))
            p0, p1 = p1, a * x * p1 - b * p0
        out = p1
    return float(out) if out.ndim == 0 else out


def real_sph_harm(l: int, m: int, theta, phi):
    """Real spherical harmonic ``Y_l^m(theta, phi)``, ``l <= 200``."""
    _check_index(l, m, signed=True)
    if l > HARMONIC_MAX_DEGREE:
        raise DomainError(f"degree l={l} exceeds supported maximum {HARMONIC_MAX_DEGREE}")
    theta = _check_polar(theta)
    phi = np.asarray(phi, dtype=float)
    pbar = normalized_legendre(l, abs(m), np.cos(theta))
    if m == 0:
        out = pbar * np.ones_like(phi)
    elif m > 0:
        out = math.sqrt(2.0) * pbar * np.cos(m * phi)
    else:
        out = math.sqrt(2.0) * pbar * np.sin(-m * phi)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def degree_blocks(lmax: int, theta, phi) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(l, Y)`` for ``l = 0..lmax`` where ``Y`` has shape ``(2l+1, n)``.

    Rows of ``Y`` run over ``m = -l..l``. Memory stays ``O(lmax * n)``, so
    this is the path for residuals at high degree.
    """
    if lmax < 0:
        raise DomainError("lmax must be nonnegative")
    if lmax > HARMONIC_MAX_DEGREE:
        raise DomainError(f"degree {lmax} exceeds supported maximum {HARMONIC_MAX_DEGREE}")
    theta = np.atleast_1d(_check_polar(theta))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    x = np.cos(theta)
    s = np.sin(theta)
    ms = np.arange(1, lmax + 1)[:, None]
    root2 = math.sqrt(2.0)
    cos_m = root2 * np.cos(ms * phi)
    sin_m = root2 * np.sin(ms * phi)

    prev2 = None
    prev1 = np.ones((1, x.size))
    yield 0, prev1.copy()
    for l in range(1, lmax + 1):
        cur = np.empty((l + 1, x.size))
        if l >= 2:
            m = np.arange(l - 1)
            a, b = _recurrence_coeffs(l, m)
            cur[: l - 1] = a[:, None] * x * prev1[: l - 1] - b[:, None] * prev2[: l - 1]
        cur[l - 1] = math.sqrt(2 * l + 1) * x * prev1[l - 1]
        cur[l] = math.sqrt((2 * l + 1) / (2 * l)) * s * prev1[l - 1]
        block = np.empty((2 * l + 1, x.size))
        block[l] = cur[0]
        block[l + 1 :] = cur[1:] * cos_m[:l]
        block[:l] = (cur[1:] * sin_m[:l])[::-1]
        yield l, block
        prev2, prev1 = prev1, cur


def basis_matrix(d: int, theta, phi) -> np.ndarray:
    """Design matrix of shape ``(n, (d+1)^2)``: row ``i`` is the basis at point ``i``."""
    if d < 0:
        raise DomainError("order d must be nonnegative")
    n = np.atleast_1d(theta).size
    out = np.empty((n, basis_size(d)))
    for l, block in degree_blocks(d, theta, phi):
        out[:, l * l : (l + 1) ** 2] = block.T
    return out


def basis_vector(d: int, p: SpherePoint) -> np.ndarray:
    """All ``Y_l^m(p)`` with ``l <= d`` in basis order; entry 0 is exactly 1."""
    return basis_matrix(d, p.theta, p.phi)[0]
