"""Backend selection for the pair kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy fallback ``_pykernels`` is loaded. Setting the environment
variable ``SPHDES_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("SPHDES_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import legendre_kernel, legendre_kernel_value

    BACKEND = "python"
else:
    try:
        from ._ckernels import legendre_kernel, legendre_kernel_value

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import legendre_kernel, legendre_kernel_value

        BACKEND = "python"

__all__ = ["BACKEND", "legendre_kernel", "legendre_kernel_value"]
