"""Pure-numpy versions of the compiled kernels in ``_ckernels.pyx``.

Both modules expose the same functions with the same signatures; see
:mod:`sphdes.kernels` for how one is chosen.
"""
import numpy as np


def legendre_kernel(X, t):
    """Kernel-form energy and its ambient gradient.

    For rows ``x_i`` of ``X`` (n, 3) returns ``(value, grad)`` with::

        value = n^-2 sum_ij K(x_i . x_j),   K(s) = sum_{l=1..t} (2l+1) P_l(s)
        grad  = 2 n^-2 sum_j K'(x_k . x_j) x_j      (row k)

    The formula is a polynomial in the raw coordinates, so ``grad`` is the
    exact gradient even for points off the sphere.
    """
    X = np.ascontiguousarray(X, dtype=float)
    n = X.shape[0]
    G = X @ X.T
    p0 = np.ones_like(G)
    p1 = G.copy()
    dp0 = np.zeros_like(G)
    dp1 = np.ones_like(G)
    K = 3.0 * p1
    dK = 3.0 * dp1
    for l in range(1, t):
        p2 = ((2 * l + 1) * G * p1 - l * p0) / (l + 1)
        dp2 = dp0 + (2 * l + 1) * p1
        K += (2 * l + 3) * p2
        dK += (2 * l + 3) * dp2
        p0, p1, dp0, dp1 = p1, p2, dp1, dp2
    if t < 1:
        K[:] = 0.0
        dK[:] = 0.0
    return float(K.sum()) / n**2, (2.0 / n**2) * (dK @ X)


def legendre_kernel_value(X, t):
    return legendre_kernel(X, t)[0]
