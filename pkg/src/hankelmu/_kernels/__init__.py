"""Hot loops, compiled when the extension is built.

The compiled module is picked at import time; set ``HANKELMU_PURE_PYTHON=1``
to force the numpy fallback.  Both backends take float64 contiguous arrays;
the wrappers below do the coercion and length checks once.
"""
import os

import numpy as np

from . import _pykernels

if os.environ.get("HANKELMU_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

__all__ = ["BACKEND", "hankel_matvec", "power_sums", "horner_real",
           "horner_complex", "backend_module"]


def _f64(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def backend_module(name=None):
    """Return the kernel module for ``name`` ('cython', 'python') or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def hankel_matvec(moments, a, impl=None):
    moments, a = _f64(moments), _f64(a)
    if moments.ndim != 1 or a.ndim != 1:
        raise ValueError("hankel_matvec expects 1-D arrays")
    if moments.shape[0] < 2 * a.shape[0] - 1:
        raise ValueError("need at least 2N-1 moments for an N-vector")
    return (impl or _impl).hankel_matvec(moments, a)


def power_sums(t, c, n_max, impl=None):
    t, c = _f64(t), _f64(c)
    if t.shape != c.shape:
        raise ValueError("nodes and weights differ in length")
    return (impl or _impl).power_sums(t, c, int(n_max))


def horner_real(coeffs, x, impl=None):
    coeffs = _f64(coeffs)
    if coeffs.shape[0] == 0:
        coeffs = np.zeros(1)
    return (impl or _impl).horner_real(coeffs, _f64(np.atleast_1d(x)))


def horner_complex(coeffs, z, impl=None):
    coeffs = _f64(coeffs)
    if coeffs.shape[0] == 0:
        coeffs = np.zeros(1)
    z = np.ascontiguousarray(np.atleast_1d(z), dtype=np.complex128)
    return (impl or _impl).horner_complex(coeffs, z)
