"""The moment Hankel operator on truncations.

``apply_naive`` is the O(N^2) reference; ``apply_fast`` computes the same
cross-correlation through a zero-padded circulant embedding in
O(N log N).  Spectral estimates are matrix-free and only ever call
``apply_fast``.
"""
from dataclasses import dataclass
import csv
import math

import numpy as np

from . import _kernels
from .analytic import TaylorFunction
from .errors import ConvergenceError, IntegrabilityError, DomainError, ParameterError
from .measures import _rule, _atom_arrays, integrate, moments_upto

DENSE_LIMIT = 256


@dataclass(frozen=True, eq=False)
class HankelOp:
    """``N x N`` matrix with entries ``moments[n + k]``."""

    dim: int
    moments: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.moments, dtype=float)
        if self.dim < 1:
            raise ParameterError("dimension must be at least 1")
        if m.shape[0] < 2 * self.dim - 1:
            raise ParameterError(f"need {2 * self.dim - 1} moments, got {m.shape[0]}")
        m = m[:2 * self.dim - 1].copy()
        m.setflags(write=False)
        object.__setattr__(self, "moments", m)
        size = 1 << (2 * self.dim - 1).bit_length()
        # reversed moments; the product picks out entries N-1 .. 2N-2 of m * a_reversed
        object.__setattr__(self, "_fft_size", size)
        object.__setattr__(self, "_moments_hat", np.fft.rfft(m, n=size))

    @classmethod
    def from_measure(cls, mu, dim):
        return cls(dim, moments_upto(mu, 2 * dim - 2).values)

    def entry(self, n, k):
        return float(self.moments[n + k])

    def dense(self):
        """Materialised matrix; debug path for small ``dim``."""
        if self.dim > DENSE_LIMIT:
            raise ParameterError(f"dense form is limited to N <= {DENSE_LIMIT}")
        idx = np.arange(self.dim)
        return self.moments[idx[:, None] + idx[None, :]]

    def dump_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in self.dense():
                writer.writerow([repr(float(x)) for x in row])


def _vector(H, a):
    a = np.ascontiguousarray(a, dtype=float)
    if a.ndim != 1 or a.shape[0] != H.dim:
        raise ParameterError(f"vector of length {a.shape[0] if a.ndim == 1 else a.shape} "
                             f"does not match dimension {H.dim}")
    return a


def apply_naive(H, a):
    """``b_n = sum_{k<N} mu_{n+k} a_k``, accumulated in increasing ``k``."""
    return _kernels.hankel_matvec(H.moments, _vector(H, a))


def apply_fast(H, a):
    """Same product as :func:`apply_naive` through one real FFT convolution.

    With ``c = moments`` and ``a~`` the reversed vector, ``b_n`` is entry
    ``n + N - 1`` of the linear convolution ``c * a~``.  A transform
    length of at least ``2N`` keeps those entries free of wrap-around.
    """
    a = _vector(H, a)
    n = H.dim
    ahat = np.fft.rfft(a[::-1], n=H._fft_size)
    conv = np.fft.irfft(H._moments_hat * ahat, n=H._fft_size)
    return conv[n - 1:2 * n - 1].copy()


def as_linear_operator(H):
    """``scipy.sparse.linalg.LinearOperator`` view backed by :func:`apply_fast`."""
    from scipy.sparse.linalg import LinearOperator
    return LinearOperator((H.dim, H.dim), matvec=lambda v: apply_fast(H, np.ravel(v)),
                          rmatvec=lambda v: apply_fast(H, np.ravel(v)), dtype=float)


def top_singular_value(H, tol=1e-9, max_iter=10_000):
    """Largest singular value by power iteration on ``H^2``.

    Seed is the normalised all-ones vector.  Stops when the Rayleigh
    quotient ``||H v||^2`` changes by at most ``tol`` relative.
    """
    v = np.full(H.dim, 1.0 / math.sqrt(H.dim))
    rho_prev = None
    for it in range(1, max_iter + 1):
        hv = apply_fast(H, v)
        rho = float(np.dot(hv, hv))
        if rho == 0.0:
            return 0.0
        w = apply_fast(H, hv)
        v = w / np.linalg.norm(w)
        if rho_prev is not None and abs(rho - rho_prev) <= tol * rho:
            hv = apply_fast(H, v)
            return math.sqrt(float(np.dot(hv, hv)))
        rho_prev = rho
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps",
                           last=math.sqrt(rho_prev or 0.0), iterations=max_iter)


def hankel_coefficients_via_fubini(mu, f, n_out=None):
    """``(int t^n f(t) d mu(t))_{n < n_out}`` by quadrature against ``mu``.

    ``n_out`` defaults to ``f.degree + 1``.  For a polynomial ``f`` of
    degree below ``n_out`` this equals the Hankel product of its
    coefficients exactly; the difference from :func:`apply_naive` on a
    shorter truncation is the truncation gap.
    """
    coeffs = f.coeffs
    n_out = coeffs.shape[0] if n_out is None else int(n_out)
    n_ref = n_out - 1 + coeffs.shape[0] - 1
    out = np.zeros(n_out)
    if mu.is_tail:
        # int phi d mu = phi(0) F(0) + int phi' F dt, phi = t^n f
        t, _, w = _rule(mu, n_ref)
        fv = _kernels.horner_real(coeffs, t)
        dfv = _kernels.horner_real(coeffs[1:] * np.arange(1, coeffs.shape[0]), t)
        p_f = _kernels.power_sums(t, w * fv, n_out)
        p_df = _kernels.power_sums(t, w * dfv, n_out)
        out[0] = coeffs[0] * float(mu.tail_spec(np.array([1.0]))[0])
        out += p_df[:n_out]
        out[1:] += np.arange(1, n_out) * p_f[:n_out - 1]
    else:
        if mu.density is not None:
            t, _, w = _rule(mu, n_ref)
            out += _kernels.power_sums(t, w * _kernels.horner_real(coeffs, t), n_out - 1)
        ta, ma = _atom_arrays(mu)
        if ta.size:
            out += _kernels.power_sums(ta, ma * _kernels.horner_real(coeffs, ta), n_out - 1)
    if not np.all(np.isfinite(out)):
        raise IntegrabilityError("Fubini coefficients are not finite")
    return out


@dataclass
class FubiniComparison:
    dim: int
    naive: np.ndarray
    fubini: np.ndarray
    gap: float


def fubini_gap(mu, f, dim, reference_degree=None):
    """Compare the ``dim``-truncated matrix action with ``int t^n f d mu``.

    ``f`` is taken at ``reference_degree`` (default: its stored degree, or
    ``64 dim`` when a generator is available) as the "full" function.
    """
    if reference_degree is None:
        reference_degree = f.degree if f.generator is None else max(64 * dim, f.degree)
    full = TaylorFunction(f.coefficients(reference_degree), f.generator)
    H = HankelOp.from_measure(mu, dim)
    a = np.zeros(dim)
    c = full.coefficients(min(dim - 1, full.degree))
    a[:c.shape[0]] = c
    naive = apply_naive(H, a)
    fub = hankel_coefficients_via_fubini(mu, full, n_out=dim)
    return FubiniComparison(dim, naive, fub, float(np.max(np.abs(fub - naive))))


def series_value(b, z):
    """Evaluate ``sum b_n z^n`` for the stored outputs."""
    return complex(_kernels.horner_complex(b, np.array([complex(z)]))[0])


@dataclass
class IMuValue:
    value: complex
    abs_integral: float
    series_value: complex
    gap: float


def i_mu_eval(mu, f, z, dim=None):
    """``I_mu(f)(z) = int f(t) / (1 - t z) d mu(t)``, with the series comparison.

    The absolute integral ``int |f(t)| / |1 - t z| d mu`` is computed first;
    a non-finite value raises :class:`IntegrabilityError`.  The returned
    record also evaluates the ``dim``-truncated Hankel output series at
    ``z`` and reports the gap.
    """
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"|z| = {abs(z)} is not inside the unit disc")
    coeffs = f.coeffs
    dcoeffs = coeffs[1:] * np.arange(1, coeffs.shape[0]) if coeffs.shape[0] > 1 else np.zeros(1)
    n_ref = coeffs.shape[0]

    def fv(t):
        return _kernels.horner_real(coeffs, np.asarray(t, dtype=float))

    def dfv(t):
        return _kernels.horner_real(dcoeffs, np.asarray(t, dtype=float))

    def h(t, u):
        return fv(t) / (1.0 - t * z)

    def dh(t, u):
        d = 1.0 - t * z
        return dfv(t) / d + z * fv(t) / (d * d)

    def habs(t, u):
        return np.abs(fv(t)) / np.abs(1.0 - t * z)

    def dhabs(t, u):
        # derivative of |f(t)| / |1 - t z| with respect to t
        f_t, df_t = fv(t), dfv(t)
        d = 1.0 - t * z
        mod = np.abs(d)
        dmod = -np.real(np.conj(d) * z) / mod
        return (np.sign(f_t) * df_t * mod - np.abs(f_t) * dmod) / (mod * mod)

    try:
        absval = float(np.real(integrate(mu, habs, dhabs, n_ref=n_ref)))
    except ArithmeticError as exc:
        raise IntegrabilityError(f"integrability check failed: {exc}") from None
    if not math.isfinite(absval):
        raise IntegrabilityError("int |f(t)|/|1 - t z| d mu is not finite")
    value = complex(integrate(mu, h, dh, n_ref=n_ref))
    dim = coeffs.shape[0] if dim is None else int(dim)
    a = np.zeros(dim)
    k = min(dim, coeffs.shape[0])
    a[:k] = coeffs[:k]
    b = apply_naive(HankelOp.from_measure(mu, dim), a)
    sv = series_value(b, z)
    return IMuValue(value=value, abs_integral=absval, series_value=sv, gap=abs(value - sv))
