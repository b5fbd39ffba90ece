"""Gauss-Legendre panels on dyadic scales.

Both weight integrals and measure integrals have endpoint behaviour of
power type, so the integrands are smooth on every panel ``[a, 2a]``.  A
fixed 16-point rule per panel resolves them to near machine precision.
"""
import numpy as np

GAUSS_ORDER = 16
_X, _W = np.polynomial.legendre.leggauss(GAUSS_ORDER)


def gauss_nodes(a, b):
    """Nodes and weights of the fixed-order rule on ``[a, b]``."""
    half = 0.5 * (b - a)
    return a + half * (_X + 1.0), half * _W


def panel_integral(func, a, b):
    x, w = gauss_nodes(a, b)
    return float(np.dot(w, func(x)))


def dyadic_down(func, top, rel_tol=1e-12, max_panels=1000, min_panels=4):
    """Integrate ``func`` over ``(0, top]`` on panels ``[top 2^-k-1, top 2^-k]``.

    Stops once a panel adds less than ``rel_tol`` of the running sum.
    Returns ``(value, converged)``; ``converged`` is False when the panel
    budget runs out or when panel sums stop shrinking, which is how a
    non-integrable endpoint shows up.
    """
    total = 0.0
    prev = None
    stalls = 0
    for k in range(max_panels):
        hi = top * 2.0 ** (-k)
        lo = 0.5 * hi
        if lo == 0.0:
            return total, False
        part = panel_integral(func, lo, hi)
        total += part
        if k + 1 >= min_panels and abs(part) <= rel_tol * abs(total):
            return total, True
        if prev is not None and abs(part) >= abs(prev) * (1.0 - 1e-9) and part != 0.0:
            stalls += 1
            if stalls >= 40:
                return total, False
        else:
            stalls = 0
        prev = part
    return total, False


def dyadic_up(func, lo, hi, rel_tol=1e-12):
    """Integrate ``func`` over ``[lo, hi]`` on panels ``[lo 2^k, lo 2^k+1]``.

    The range is finite, so every panel is taken unless the panel sum falls
    below ``rel_tol`` of the running total first.
    """
    if hi <= lo:
        return 0.0
    total = 0.0
    a = lo
    while a < hi:
        b = min(2.0 * a, hi)
        part = panel_integral(func, a, b)
        total += part
        if b < hi and abs(part) <= rel_tol * abs(total) and a > 4.0 * lo:
            break
        a = b
    return total
