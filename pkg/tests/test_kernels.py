import os
import subprocess
import sys

import numpy as np
import pytest

from hankelmu import _kernels
from hankelmu._kernels import backend_module

try:
    backend_module("cython")
    HAVE_C = True
except ImportError:
    HAVE_C = False

needs_c = pytest.mark.skipif(not HAVE_C, reason="compiled kernels not built")


def test_active_backend_reported():
    assert _kernels.BACKEND in ("cython", "python")


def test_env_var_forces_fallback():
    env = dict(os.environ, HANKELMU_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import hankelmu; print(hankelmu.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        backend_module("fortran")


@needs_c
@pytest.mark.parametrize("n", [1, 2, 17, 256, 1000])
def test_matvec_backends_agree(n):
    rng = np.random.default_rng(n)
    mom = rng.random(2 * n - 1)
    a = rng.standard_normal(n)
    c = _kernels.hankel_matvec(mom, a, impl=backend_module("cython"))
    p = _kernels.hankel_matvec(mom, a, impl=backend_module("python"))
    assert np.allclose(c, p, rtol=1e-13, atol=1e-13 * np.abs(a).sum())


@needs_c
def test_power_sums_backends_agree():
    rng = np.random.default_rng(1)
    t, w = rng.random(300), rng.random(300)
    c = _kernels.power_sums(t, w, 500, impl=backend_module("cython"))
    p = _kernels.power_sums(t, w, 500, impl=backend_module("python"))
    assert np.allclose(c, p, rtol=1e-13, atol=0)


@needs_c
def test_horner_backends_agree():
    rng = np.random.default_rng(2)
    coeffs = rng.standard_normal(200)
    x = rng.uniform(-1, 1, 50)
    z = x * np.exp(1j * rng.uniform(0, 6.3, 50))
    for name in ("horner_real", "horner_complex"):
        arg = x if name == "horner_real" else z
        c = getattr(_kernels, name)(coeffs, arg, impl=backend_module("cython"))
        p = getattr(_kernels, name)(coeffs, arg, impl=backend_module("python"))
        assert np.allclose(c, p, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("impl", ["python"] + (["cython"] if HAVE_C else []))
def test_kernels_against_numpy(impl):
    mod = backend_module(impl)
    rng = np.random.default_rng(3)
    mom = rng.random(19)
    a = rng.random(10)
    dense = mom[np.add.outer(np.arange(10), np.arange(10))]
    assert np.allclose(_kernels.hankel_matvec(mom, a, impl=mod), dense @ a, rtol=1e-14)
    t, w = rng.random(5), rng.random(5)
    ref = np.array([np.sum(w * t ** n) for n in range(8)])
    assert np.allclose(_kernels.power_sums(t, w, 7, impl=mod), ref, rtol=1e-14)
    coeffs = rng.random(6)
    assert np.allclose(_kernels.horner_real(coeffs, t, impl=mod),
                       np.polyval(coeffs[::-1], t), rtol=1e-14)


def test_wrapper_checks():
    with pytest.raises(ValueError):
        _kernels.hankel_matvec(np.ones(4), np.ones(3))
    with pytest.raises(ValueError):
        _kernels.power_sums(np.ones(3), np.ones(2), 4)
    assert _kernels.horner_real([], [0.5])[0] == 0.0
