"""Information matrices, Kiefer criteria and regression for order-``d`` models.

The model is ``y_i = sum_{l<=d} sum_m c_l^m Y_l^m(x_i) + e_i``. For an
equally weighted design the (normalized) information matrix is
``M = n^-1 sum_i f(x_i) f(x_i)^T`` with ``f`` the order-``d`` basis vector.
Uniform measure on the sphere gives ``M = I``, which every criterion below
scores as 1; any spherical ``2d``-design reproduces it exactly because the
entries of ``M`` are design averages of harmonics of degree at most ``2d``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, SingularMatrixError
from .harmonics import basis_labels, basis_matrix, basis_size
from .sphere import Design

__all__ = [
    "CoefficientVector",
    "CriteriaReport",
    "InformationMatrix",
    "ResultCheck",
    "check_result",
    "criteria",
    "fit",
    "information_matrix",
    "simulate",
]

SINGULAR_RTOL = 1e-12
IDENTITY_FAST_PATH_TOL = 1e-10


@dataclass(frozen=True)
class InformationMatrix:
    d: int
    entries: np.ndarray

    def __post_init__(self):
        k = basis_size(self.d)
        if self.entries.shape != (k, k):
            raise DomainError(f"expected a {k}x{k} matrix for d={self.d}")
        self.entries.setflags(write=False)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def identity_deviation(self) -> float:
        return float(np.max(np.abs(self.entries - np.eye(self.k))))


class ResultCheck(NamedTuple):
    holds: bool
    deviation: float


@dataclass(frozen=True)
class CriteriaReport:
    """Scalar design criteria, scaled so that bigger is better and ``M = I`` scores 1.

    With ``k`` parameters and eigenvalues ``lam`` of ``M``:
    ``D = det(M)^(1/k)``, ``A = k / tr(M^-1)``, ``E = min(lam)`` and
    ``phi[p] = (mean(lam^-p))^(-1/p)`` for ``p > 0``. Because the uniform
    design is optimal with ``M = I``, each value doubles as the efficiency
    relative to the optimum. Singular matrices score 0 throughout.
    """

    d: int | None
    D: float
    A: float
    E: float
    phi: dict[float, float]
    identity_deviation: float
    singular: bool
    eigenvalues: tuple[float, ...] = field(repr=False, default=())

    @property
    def efficiencies(self) -> dict[str, float]:
        out = {"D": self.D, "A": self.A, "E": self.E}
        out.update({f"phi_{p:g}": v for p, v in self.phi.items()})
        return out

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n_params": len(self.eigenvalues),
            "D": self.D,
            "A": self.A,
            "E": self.E,
            "phi": {f"{p:g}": v for p, v in self.phi.items()},
            "identity_deviation": self.identity_deviation,
            "singular": self.singular,
            "min_eigenvalue": min(self.eigenvalues),
            "max_eigenvalue": max(self.eigenvalues),
        }


@dataclass(frozen=True)
class CoefficientVector:
    """Regression coefficients ``c_l^m`` in basis order."""

    d: int
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.shape != (basis_size(self.d),):
            raise DomainError(
                f"order {self.d} needs {basis_size(self.d)} coefficients, got {c.size}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def labelled(self) -> list[tuple[int, int, float]]:
        return [(l, m, float(v)) for (l, m), v in zip(basis_labels(self.d), self.c)]


def _check_order(d):
    if int(d) != d or d < 0:
        raise DomainError(f"order d must be a nonnegative integer, got {d!r}")


def information_matrix(design: Design, d: int) -> InformationMatrix:
    _check_order(d)
    F = basis_matrix(d, design.theta, design.phi)
    M = F.T @ F / design.n
    M = 0.5 * (M + M.T)
    return InformationMatrix(d, M)


def criteria(M, p_list: Sequence[float] = (1.0,)) -> CriteriaReport:
    """Evaluate D, A, E and ``Phi_p`` for each ``p`` in ``p_list``.

    ``M`` is an :class:`InformationMatrix` or any symmetric square array.
    """
    ps = [float(p) for p in p_list]
    if any(not p > 0 or not math.isfinite(p) for p in ps):
        raise DomainError("Phi_p is defined here for finite p > 0")
    if isinstance(M, InformationMatrix):
        entries, d, dev = M.entries, M.d, M.identity_deviation()
    else:
        entries = np.asarray(M, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError("criteria needs a square matrix")
        root = math.isqrt(entries.shape[0])
        d = root - 1 if root * root == entries.shape[0] else None
        dev = float(np.max(np.abs(entries - np.eye(entries.shape[0]))))
    lam = np.linalg.eigvalsh(0.5 * (entries + entries.T))
    k = lam.size
    lmax = float(lam[-1])
    lmin = float(lam[0])
    singular = lmax <= 0.0 or lmin < SINGULAR_RTOL * lmax
    if singular:
        D = A = E = 0.0
        phi = {p: 0.0 for p in ps}
    else:
        D = float(np.exp(np.mean(np.log(lam))))
        A = float(k / np.sum(1.0 / lam))
        E = lmin
        # factor out lam_min so lam^-p cannot overflow for large p
        rel = lam / lmin
        phi = {p: lmin * float(np.mean(rel ** (-p))) ** (-1.0 / p) for p in ps}
    return CriteriaReport(
        d=d,
        D=D,
        A=A,
        E=E,
        phi=phi,
        identity_deviation=dev,
        singular=singular,
        eigenvalues=tuple(float(v) for v in lam),
    )


def check_result(design: Design, d: int, tol: float = 1e-10) -> ResultCheck:
    """Whether the order-``d`` information matrix equals the identity within ``tol``.

    Expected to hold whenever the design is a spherical ``2d``-design.
    """
    dev = information_matrix(design, d).identity_deviation()
    return ResultCheck(dev <= tol, dev)


def fit(design: Design, y, d: int) -> CoefficientVector:
    """Least-squares coefficients ``M^-1 n^-1 sum_i y_i f(x_i)``.

    When ``M`` is the identity to within 1e-10 the solve is skipped.
    """
    _check_order(d)
    y = np.asarray(y, dtype=float).ravel()
    if y.size != design.n:
        raise DomainError(f"got {y.size} observations for a design of {design.n} points")
    F = basis_matrix(d, design.theta, design.phi)
    rhs = F.T @ y / design.n
    M = InformationMatrix(d, 0.5 * (F.T @ F + (F.T @ F).T) / design.n)
    if M.identity_deviation() <= IDENTITY_FAST_PATH_TOL:
        return CoefficientVector(d, rhs)
    lam = np.linalg.eigvalsh(M.entries)
    if lam[-1] <= 0.0 or lam[0] < SINGULAR_RTOL * lam[-1]:
        raise SingularMatrixError(
            f"information matrix is singular for order d={d} with n={design.n} points"
        )
    return CoefficientVector(d, np.linalg.solve(M.entries, rhs))


def simulate(design: Design, c: CoefficientVector, noise_sd: float = 1.0, seed: int = 0) -> np.ndarray:
    """Observations from the model with i.i.d. ``N(0, noise_sd^2)`` errors.

    Errors are ``noise_sd * numpy.random.default_rng(seed).standard_normal(n)``.
    """
    if not noise_sd >= 0:
        raise DomainError("noise_sd must be nonnegative")
    F = basis_matrix(c.d, design.theta, design.phi)
    y = F @ c.c
    if noise_sd > 0:
        y = y + noise_sd * np.random.default_rng(seed).standard_normal(design.n)
    return y
