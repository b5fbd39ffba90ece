"""Pure numpy versions of the compiled kernels (same signatures)."""
import numpy as np


def hankel_matvec(moments, a):
    dim = a.shape[0]
    b = np.zeros(dim)
    for k in range(dim):
        if a[k] != 0.0:
            b += moments[k:k + dim] * a[k]
    return b


def power_sums(t, c, n_max):
    pw = np.array(c, dtype=np.float64, copy=True)
    out = np.empty(n_max + 1)
    for n in range(n_max + 1):
        out[n] = pw.sum()
        pw *= t
    return out


def horner_real(coeffs, x):
    acc = np.zeros(x.shape[0])
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def horner_complex(coeffs, z):
    acc = np.zeros(z.shape[0], dtype=np.complex128)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc
