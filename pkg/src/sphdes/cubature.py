"""Cubature exactness of equally weighted designs.

A design ``Y`` is a spherical t-design when its point average reproduces
the uniform-sphere average of every polynomial of degree ``<= t``. Every
real harmonic of degree ``l >= 1`` integrates to zero, so exactness at
degree ``l`` is equivalent to the residual

    r_l = sum_m ( mean_i Y_l^m(x_i) )^2

vanishing. ``r_l`` is the squared norm of the degree-``l`` component of
the empirical measure and is invariant under rotations.

:func:`monomial_check` is an independent route to the same question. It
compares design averages of ``x^a y^b z^c`` against closed-form sphere
integrals and never touches the harmonic code.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .harmonics import HARMONIC_MAX_DEGREE, degree_blocks
from .kernels import legendre_kernel_value
from .sphere import Design

__all__ = [
    "DEFAULT_TOL",
    "StrengthReport",
    "kernel_residual_total",
    "monomial_check",
    "monomial_integral",
    "residuals",
    "strength",
]

DEFAULT_TOL = 1e-10
MONOMIAL_MAX_DEGREE = 60


@dataclass(frozen=True)
class StrengthReport:
    """Per-degree residuals ``r_1..r_tmax`` and the strength they imply.

    ``residuals[l - 1]`` holds ``r_l``. ``strength`` is the length of the
    longest prefix of residuals that are all ``<= tol`` (``None`` when the
    report was produced by :func:`residuals` alone).
    """

    residuals: tuple[float, ...]
    tol: float | None = None
    strength: int | None = None
    n: int = 0
    label: str | None = field(default=None, compare=False)

    @property
    def t_max(self) -> int:
        return len(self.residuals)

    def residual(self, l: int) -> float:
        return self.residuals[l - 1]

    def total(self, t: int | None = None) -> float:
        """``A_t = r_1 + ... + r_t``."""
        t = self.t_max if t is None else t
        return float(sum(self.residuals[:t]))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "t_max": self.t_max,
            "tol": self.tol,
            "strength": self.strength,
            "residuals": {str(l): r for l, r in enumerate(self.residuals, start=1)},
        }


def residuals(design: Design, t_max: int) -> StrengthReport:
    """Residuals ``r_l`` for ``l = 1..t_max`` (no strength decision)."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    if t_max > HARMONIC_MAX_DEGREE:
        raise ValueError(f"t_max exceeds supported maximum {HARMONIC_MAX_DEGREE}")
    out = []
    for l, block in degree_blocks(t_max, design.theta, design.phi):
        if l == 0:
            continue
        means = block.mean(axis=1)
        out.append(float(np.dot(means, means)))
    return StrengthReport(residuals=tuple(out), n=design.n, label=design.label)


def _prefix_strength(values, tol) -> int:
    s = 0
    for r in values:
        if r > tol:
            break
        s += 1
    return s


def strength(design: Design, t_max: int, tol: float = DEFAULT_TOL) -> StrengthReport:
    """Largest ``t <= t_max`` with ``r_1, ..., r_t`` all ``<= tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    rep = residuals(design, t_max)
    return StrengthReport(
        residuals=rep.residuals,
        tol=tol,
        strength=_prefix_strength(rep.residuals, tol),
        n=rep.n,
        label=rep.label,
    )


def kernel_residual_total(design: Design, t: int) -> float:
    """``A_t`` through the pair-kernel identity ``n^-2 sum_ij sum_l (2l+1) P_l(x_i.x_j)``.

    Cheaper than the per-harmonic sum for small designs but limited by
    cancellation to an absolute accuracy near ``1e-15 * t^2``.
    """
    return legendre_kernel_value(design.xyz, t)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def monomial_integral(a: int, b: int, c: int) -> float:
    """Average of ``x^a y^b z^c`` over the sphere under the normalized uniform measure.

    Zero if any exponent is odd, otherwise
    ``(a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!``.
    """
    for e in (a, b, c):
        if int(e) != e or e < 0:
            raise ValueError("exponents must be nonnegative integers")
    if a + b + c > MONOMIAL_MAX_DEGREE:
        raise ValueError(f"total degree exceeds {MONOMIAL_MAX_DEGREE}")
    if a % 2 or b % 2 or c % 2:
        return 0.0
    num = _double_factorial(a - 1) * _double_factorial(b - 1) * _double_factorial(c - 1)
    return float(Fraction(num, _double_factorial(a + b + c + 1)))


def exponent_triples(t: int) -> list[tuple[int, int, int]]:
    """All ``(a, b, c)`` with ``1 <= a+b+c <= t`` in lexicographic order."""
    return [
        (a, b, c)
        for a, b, c in itertools.product(range(t + 1), repeat=3)
        if 1 <= a + b + c <= t
    ]


def monomial_check(
    design: Design, t: int, trials: int | None = 200, seed: int = 0
) -> float:
    """Largest ``|mean x^a y^b z^c - sphere integral|`` over sampled exponents.

    ``trials`` triples are drawn without replacement (seeded) from all
    triples of total degree ``1..t``; when ``trials`` is ``None`` or covers
    the whole set, every triple is checked.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    triples = exponent_triples(t)
    if trials is not None and trials < len(triples):
        rng = np.random.default_rng(seed)
        pick = np.sort(rng.choice(len(triples), size=trials, replace=False))
        triples = [triples[i] for i in pick]
    x, y, z = design.xyz.T
    worst = 0.0
    for a, b, c in triples:
        avg = float(np.mean(x**a * y**b * z**c))
        worst = max(worst, abs(avg - monomial_integral(a, b, c)))
    return worst
