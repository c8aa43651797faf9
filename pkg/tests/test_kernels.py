import numpy as np
import pytest

from sphdes import _pykernels, kernels
from sphdes.sphere import random_design

ckernels = pytest.importorskip("sphdes._ckernels")


def test_backend_selected():
    assert kernels.BACKEND in {"cython", "python"}


@pytest.mark.parametrize("n, t", [(1, 1), (2, 3), (12, 5), (24, 7), (57, 12)])
def test_backends_agree(n, t):
    X = random_design(n, n + t).xyz
    v_py, g_py = _pykernels.legendre_kernel(X, t)
    v_c, g_c = ckernels.legendre_kernel(X, t)
    assert v_c == pytest.approx(v_py, abs=1e-12)
    np.testing.assert_allclose(g_c, g_py, atol=1e-12)
    assert ckernels.legendre_kernel_value(X, t) == pytest.approx(v_c, abs=1e-13)


def test_off_sphere_polynomial_extension():
    X = 1.3 * random_design(6, 1).xyz
    v_py, g_py = _pykernels.legendre_kernel(X, 4)
    v_c, g_c = ckernels.legendre_kernel(X, 4)
    assert v_c == pytest.approx(v_py, rel=1e-12)
    np.testing.assert_allclose(g_c, g_py, rtol=1e-12)


def test_zero_degree():
    X = random_design(5, 1).xyz
    assert ckernels.legendre_kernel(X, 0)[0] == 0.0
    assert _pykernels.legendre_kernel(X, 0)[0] == 0.0
