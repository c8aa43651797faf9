"""Numerical construction of spherical t-designs.

A design is a spherical t-design exactly when

    A_t = sum_{l=1..t} r_l = n^-2 sum_ij sum_{l=1..t} (2l+1) P_l(x_i . x_j)

vanishes. We minimize ``A_t`` over point positions by gradient descent on the
product of spheres: the Euclidean gradient of the pair-kernel form is
projected onto each point's tangent plane, a step is chosen by Armijo
backtracking (the trial step is the Barzilai-Borwein length, halved until
sufficient decrease holds) and points are renormalized after every step.
The landscape has many local minima, so several seeded random starts are
run and the best one wins.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .catalog import lower_bound
from .cubature import residuals
from .errors import DomainError
from .kernels import legendre_kernel, legendre_kernel_value
from .sphere import Design, _angles_from_xyz, random_design

__all__ = [
    "ConstructOptions",
    "ConstructOutcome",
    "minimize",
    "objective",
    "objective_gradient",
    "objective_kernel",
    "refine",
    "tangent_gradient",
]

# Below this the kernel form loses too many digits to cancellation; the
# per-harmonic sum is used instead.
_KERNEL_FLOOR = 1e-8


@dataclass(frozen=True)
class ConstructOptions:
    """Settings for :func:`minimize` and :func:`refine`.

    ``tol`` decides convergence. The winning start is then polished towards
    ``polish_tol`` (at most ``polish_iters`` extra iterations) so that the
    result also passes independent monomial checks at the 1e-9 level. A run
    stops early when ``A_t`` has not fallen by ``stall_factor`` over the last
    ``stall_window`` iterations.
    """

    t: int
    n: int
    starts: int = 20
    seed: int = 0
    max_iters: int = 5000
    tol: float = 1e-10
    armijo: float = 1e-4
    shrink: float = 0.5
    initial_step: float = 0.1
    min_step: float = 1e-16
    max_step: float = 1e3
    grad_tol: float = 1e-14
    stall_window: int = 300
    stall_factor: float = 0.999
    polish_tol: float = 1e-26
    polish_iters: int = 3000
    workers: int = 1

    def __post_init__(self):
        if self.t < 1:
            raise DomainError("target strength t must be at least 1")
        if self.n < lower_bound(self.t):
            raise DomainError(
                f"n={self.n} is below the lower bound {lower_bound(self.t)} "
                f"for a spherical {self.t}-design"
            )
        if self.starts < 1:
            raise DomainError("starts must be at least 1")
        if not 0.0 < self.shrink < 1.0:
            raise DomainError("shrink must lie in (0, 1)")


@dataclass(frozen=True)
class ConstructOutcome:
    design: Design
    residual: float
    iterations: int
    start_index: int
    converged: bool
    history: tuple[float, ...] = field(default=(), repr=False)
    start_residuals: tuple[float, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.design.n,
            "residual": self.residual,
            "iterations": self.iterations,
            "start_index": self.start_index,
            "converged": self.converged,
            "start_residuals": list(self.start_residuals),
        }


def _design_view(xyz, theta, phi) -> Design:
    obj = Design.__new__(Design)
    obj._set(xyz.copy(), theta, phi, None)
    return obj


def _objective_xyz(xyz: np.ndarray, t: int) -> float:
    theta, phi = _angles_from_xyz(xyz)
    return float(sum(residuals(_design_view(xyz, theta, phi), t).residuals))


def objective(design: Design, t: int) -> float:
    """``A_t`` as the sum of per-degree harmonic residuals (never negative)."""
    if t < 1:
        raise DomainError("t must be at least 1")
    return float(sum(residuals(design, t).residuals))


def objective_kernel(design: Design, t: int) -> float:
    """``A_t`` from the pair-kernel identity; agrees with :func:`objective` to ~1e-15."""
    if t < 1:
        raise DomainError("t must be at least 1")
    return legendre_kernel_value(design.xyz, t)


def objective_gradient(xyz, t: int) -> np.ndarray:
    """Euclidean gradient of the kernel form of ``A_t`` w.r.t. raw coordinates (n, 3)."""
    return legendre_kernel(np.asarray(xyz, dtype=float), t)[1]


def tangent_gradient(xyz, t: int) -> np.ndarray:
    """Gradient projected onto the tangent plane at each (unit) point."""
    xyz = np.asarray(xyz, dtype=float)
    g = objective_gradient(xyz, t)
    return g - np.einsum("ij,ij->i", g, xyz)[:, None] * xyz


def _value(xyz, t):
    v = legendre_kernel_value(xyz, t)
    if v < _KERNEL_FLOOR:
        v = _objective_xyz(xyz, t)
    return v


def _normalize(xyz):
    return xyz / np.sqrt(np.einsum("ij,ij->i", xyz, xyz))[:, None]


def _descend(xyz, t, opts: ConstructOptions, target: float, max_iters: int):
    """One projected-gradient run. Returns (xyz, value, iterations, history)."""
    f = _value(xyz, t)
    g = tangent_gradient(xyz, t)
    step = opts.initial_step
    history = [f]
    checkpoint = f
    it = 0
    while it < max_iters:
        if f <= target:
            break
        gn2 = float(np.einsum("ij,ij->", g, g))
        if math.sqrt(gn2) <= opts.grad_tol:
            break
        a = step
        while True:
            trial = _normalize(xyz - a * g)
            ft = _value(trial, t)
            if ft <= f - opts.armijo * a * gn2:
                break
            a *= opts.shrink
            if a < opts.min_step:
                return xyz, f, it, history
        gt = tangent_gradient(trial, t)
        s = (trial - xyz).ravel()
        y = (gt - g).ravel()
        sy = float(s @ y)
        step = float(s @ s) / sy if sy > 0 else opts.initial_step
        step = min(max(step, opts.min_step), opts.max_step)
        xyz, f, g = trial, ft, gt
        it += 1
        history.append(f)
        if it % opts.stall_window == 0:
            if f > opts.stall_factor * checkpoint:
                break
            checkpoint = f
    return xyz, f, it, history


def _finish(xyz, t, opts, label, start_index, iterations, history, start_residuals=()):
    f = history[-1]
    converged = f <= opts.tol
    if converged and opts.polish_tol < f:
        xyz, f, extra, more = _descend(xyz, t, opts, opts.polish_tol, opts.polish_iters)
        iterations += extra
        history = history + more[1:]
    design = Design.from_vectors(xyz, label=label)
    f = objective(design, t)
    return ConstructOutcome(
        design=design,
        residual=f,
        iterations=iterations,
        start_index=start_index,
        converged=f <= opts.tol,
        history=tuple(history),
        start_residuals=tuple(start_residuals),
    )


def _run_start(opts: ConstructOptions, index: int):
    xyz = np.array(random_design(opts.n, opts.seed + index).xyz)
    xyz, f, it, history = _descend(xyz, opts.t, opts, opts.tol, opts.max_iters)
    return f, index, xyz, it, history


def minimize(opts: ConstructOptions) -> ConstructOutcome:
    """Best of ``opts.starts`` seeded descent runs.

    Start ``k`` begins from ``random_design(n, seed + k)``. The winner is the
    run with the smallest ``(residual, start index)``, so running starts
    concurrently (``workers > 1``) cannot change the outcome.
    """
    indices = range(opts.starts)
    if opts.workers > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            runs = list(pool.map(lambda k: _run_start(opts, k), indices))
    else:
        runs = [_run_start(opts, k) for k in indices]
    best = min(runs, key=lambda r: (r[0], r[1]))
    f, index, xyz, it, history = best
    label = f"constructed-t{opts.t}-n{opts.n}"
    return _finish(xyz, opts.t, opts, label, index, it, history, [r[0] for r in runs])


def refine(design: Design, t: int, opts: ConstructOptions | None = None) -> ConstructOutcome:
    """Single descent run started from ``design`` (e.g. to polish catalog data)."""
    if opts is None:
        opts = ConstructOptions(t=t, n=design.n, starts=1)
    else:
        opts = replace(opts, t=t, n=design.n)
    xyz = np.array(design.xyz)
    xyz, f, it, history = _descend(xyz, t, opts, opts.tol, opts.max_iters)
    return _finish(xyz, t, opts, design.label, 0, it, history, [f])
