"""Truncated Taylor series: evaluation, integral means and dyadic blocks.

Membership in a mean Lipschitz space is read off two characterisations
that only need Taylor coefficients: the H^p norms of the dyadic blocks
and the integral means of the derivative.  Verdicts are tied to the
largest block index computed.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import _kernels
from .errors import ConfigError, DomainError, ParameterError, PreconditionError
from .quadrature import dyadic_up
from .trends import trends_up
from .weights import weight_from_config

DEFAULT_J = 14


# -- coefficient generators --------------------------------------------------

class Generator:
    """Rule ``n -> a_n`` for extending a truncation.  Subclasses set ``tag``."""

    tag = "generator"

    def __call__(self, n):
        n = np.asarray(n, dtype=np.int64)
        out = np.zeros(n.shape, dtype=float)
        pos = n >= 1
        out[pos] = self._positive(n[pos].astype(float))
        return out

    def _positive(self, n):
        raise NotImplementedError

    def to_dict(self):
        return {"generator": self.tag}


class OneOverN(Generator):
    """``log(1/(1-z))``: a_n = 1/n."""

    tag = "one_over_n"

    def _positive(self, n):
        return 1.0 / n


class PowerDecay(Generator):
    tag = "power"

    def __init__(self, gamma):
        self.gamma = float(gamma)

    def _positive(self, n):
        return n ** (-self.gamma)

    def to_dict(self):
        return {"generator": self.tag, "gamma": self.gamma}


class LogOverN(Generator):
    tag = "log_over_n"

    def _positive(self, n):
        return np.log1p(n) / n


class OmegaExtremal(Generator):
    """a_n = omega(1/n) / n**(1 - 1/p)."""

    tag = "omega_extremal"

    def __init__(self, weight, p):
        self.weight, self.p = weight, float(p)

    def _positive(self, n):
        return self.weight(1.0 / n) / n ** (1.0 - 1.0 / self.p)

    def to_dict(self):
        return {"generator": self.tag, "p": self.p, "weight": self.weight.to_dict()}


class BlockIndicator(Generator):
    """Constant on each dyadic block: a_n = omega(2^-j) / 2**(j(1-1/p)) for 2^j <= n < 2^(j+1)."""

    tag = "block_indicator"

    def __init__(self, weight, p):
        self.weight, self.p = weight, float(p)

    def _positive(self, n):
        j = np.floor(np.log2(n) + 1e-12)
        return self.weight(2.0 ** -j) / 2.0 ** (j * (1.0 - 1.0 / self.p))

    def to_dict(self):
        return {"generator": self.tag, "p": self.p, "weight": self.weight.to_dict()}


class Derivative(Generator):
    tag = "derivative"

    def __init__(self, base):
        self.base = base

    def __call__(self, n):
        n = np.asarray(n, dtype=np.int64)
        return (n + 1) * self.base(n + 1)

    def to_dict(self):
        return {"generator": self.tag, "of": self.base.to_dict()}


# -- Taylor functions --------------------------------------------------------

@dataclass
class TaylorFunction:
    """Coefficients ``a_0..a_N`` with an optional rule for extending them."""

    coeffs: np.ndarray
    generator: Generator = None

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        self.coeffs = c if c.size else np.zeros(1)

    @classmethod
    def from_generator(cls, gen, degree):
        return cls(gen(np.arange(degree + 1)), gen)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    @property
    def tag(self):
        return "explicit" if self.generator is None else self.generator.tag

    def coefficients(self, degree):
        """``a_0..a_degree``, extended by the generator when needed."""
        if degree <= self.degree:
            return self.coeffs[:degree + 1]
        if self.generator is None:
            raise ParameterError(
                f"need degree {degree} but only {self.degree} is stored and no generator is set")
        extra = self.generator(np.arange(self.degree + 1, degree + 1))
        return np.concatenate([self.coeffs, extra])

    def extended(self, degree):
        return TaylorFunction(self.coefficients(degree), self.generator)

    def truncated(self, degree):
        return TaylorFunction(self.coeffs[:degree + 1].copy(), self.generator)

    def to_dict(self):
        d = {"degree": self.degree}
        if self.generator is None:
            d["generator"] = "explicit"
            d["coeffs"] = [float(x) for x in self.coeffs]
        else:
            d.update(self.generator.to_dict())
        return d


def function_from_config(spec, weight=None, p=None, degree=1024):
    """A generator name, ``{"generator": name, ...}`` or ``{"generator": "explicit", "coeffs": [...]}``."""
    if isinstance(spec, TaylorFunction):
        return spec
    if isinstance(spec, dict) and "function" in spec:
        spec = spec["function"]
    if isinstance(spec, str):
        spec = {"generator": spec}
    if not isinstance(spec, dict):
        raise ConfigError("function spec must be an object")
    name = spec.get("generator", "explicit")
    if name == "explicit":
        if "coeffs" not in spec:
            raise ConfigError("explicit function needs 'coeffs'")
        return TaylorFunction(np.asarray(spec["coeffs"], dtype=float))
    if "weight" in spec:
        weight = weight_from_config(spec["weight"])
    p = spec.get("p", p)
    gen = make_generator(name, weight=weight, p=p, gamma=spec.get("gamma"))
    return TaylorFunction.from_generator(gen, int(spec.get("degree", degree)))


def make_generator(name, weight=None, p=None, gamma=None):
    if name == "one_over_n":
        return OneOverN()
    if name == "log_over_n":
        return LogOverN()
    if name == "power":
        if gamma is None:
            raise ConfigError("power generator needs 'gamma'")
        return PowerDecay(gamma)
    if name in ("omega_extremal", "block_indicator"):
        if weight is None or p is None:
            raise ConfigError(f"{name} generator needs a weight and p")
        cls = OmegaExtremal if name == "omega_extremal" else BlockIndicator
        return cls(weight, p)
    raise ConfigError(f"unknown generator {name!r}")


# -- evaluation and means ----------------------------------------------------

def evaluate(f, z):
    """Horner evaluation of the stored truncation at ``|z| < 1``."""
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"|z| = {abs(z)} is not inside the unit disc")
    return complex(_kernels.horner_complex(f.coeffs, np.array([z]))[0])


def derivative(f):
    c = f.coeffs
    dc = c[1:] * np.arange(1, c.shape[0]) if c.shape[0] > 1 else np.zeros(1)
    gen = None if f.generator is None else Derivative(f.generator)
    return TaylorFunction(dc, gen)


def dyadic_block(f, j):
    """``Delta_j f``: coefficients ``2^j .. 2^(j+1)-1`` (``a_0 + a_1 z`` for ``j = 0``)."""
    j = int(j)
    if j < 0:
        raise ParameterError("block index must be nonnegative")
    lo, hi = (0, 2) if j == 0 else (2 ** j, 2 ** (j + 1))
    if lo > f.degree and f.generator is None:
        raise ParameterError(f"block {j} starts beyond the stored degree {f.degree}")
    top = hi - 1 if f.generator is not None else min(hi - 1, f.degree)
    c = np.zeros(top + 1)
    c[lo:] = f.coefficients(top)[lo:]
    return TaylorFunction(c)


def sample_count(degree):
    """Smallest power of two that is at least ``4 (degree + 1)``."""
    need = 4 * (degree + 1)
    return 1 << (need - 1).bit_length()


def circle_samples(f, r, m=None):
    """Values of ``f`` at ``m`` equispaced points of ``|z| = r`` (one FFT)."""
    r = float(r)
    if not (0.0 <= r <= 1.0):
        raise DomainError(f"radius {r} outside [0, 1]")
    deg = f.degree
    if m is None:
        m = sample_count(deg)
    elif m < 4 * (deg + 1):
        raise ParameterError(f"{m} samples undersample a degree-{deg} polynomial")
    c = f.coeffs
    if r != 1.0:
        with np.errstate(under="ignore"):
            c = c * r ** np.arange(deg + 1)
    return np.fft.ifft(c, n=m) * m


def circle_means(f, r, p, m=None):
    """``M_p(r, f)``, with ``p = inf`` giving the maximum modulus."""
    p = float(p)
    if not p > 1.0:
        raise ParameterError(f"p must exceed 1, got {p}")
    v = np.abs(circle_samples(f, r, m))
    if math.isinf(p):
        return float(v.max())
    if p == 2.0:
        return float(math.sqrt(np.mean(v * v)))
    scale = v.max()
    if scale == 0.0:
        return 0.0
    return float(scale * np.mean((v / scale) ** p) ** (1.0 / p))


# -- dyadic blocks -----------------------------------------------------------

@dataclass
class BlockNorms:
    p: float
    values: list

    def __getitem__(self, j):
        return self.values[j]


def _block_norm(f, j, p):
    blk = dyadic_block(f, j)
    if p == 2.0:
        return float(math.sqrt(np.sum(blk.coeffs ** 2)))
    # |Delta_j f| on the circle does not see the z^(2^j) factor
    lo = 0 if j == 0 else 2 ** j
    return circle_means(TaylorFunction(blk.coeffs[lo:]), 1.0, p)


def block_norms(f, p, J):
    """``||Delta_j f||_{H^p}`` for ``j = 0..J``; exact (Parseval) for ``p = 2``."""
    p, J = float(p), int(J)
    need = 2 ** (J + 1) - 1
    if f.degree < need:
        f = f.extended(need)
    return BlockNorms(p, [_block_norm(f, j, p) for j in range(J + 1)])


def pavlovic_ratio(f, p, N):
    """``||Delta_N f||_{H^p} / (a_{2^N} 2^{N(1-1/p)})``."""
    p = float(p)
    a = f.coefficients(2 ** (N + 1) - 1)
    return _block_norm(TaylorFunction(a, f.generator), N, p) / (a[2 ** N] * 2.0 ** (N * (1.0 - 1.0 / p)))


# -- membership diagnostics --------------------------------------------------

@dataclass
class NormProxyReport:
    p: float
    J: int
    weight: dict
    j_grid: list
    r_grid: list
    block_trace: list
    mean_trace: list
    bloch_trace: list
    growth_trace: list
    growth_integral_trace: list
    block_proxy: float
    mean_proxy: float
    bloch_proxy: float
    growth_proxy: float
    block_trend_up: bool
    mean_trend_up: bool
    member_at_scale: bool
    notes: list = field(default_factory=list)

    def to_dict(self):
        return dict(self.__dict__)


def default_r_grid(J):
    return [1.0 - 2.0 ** (-k) for k in range(1, max(J - 3, 4) + 1)]


def growth_integral(w, p, delta):
    """``int_delta^1 omega(t) t^(-1-1/p) dt``: the size of ``|f|`` allowed at ``1 - |z| = delta``."""
    return dyadic_up(lambda t: w(t) * t ** (-1.0 - 1.0 / p), delta, 1.0)


def lambda_membership(f, p, w, J=DEFAULT_J, r_grid=None):
    """Block, derivative-mean, Bloch and growth proxies for ``f`` in ``Lambda(p, omega)``.

    ``member_at_scale`` holds when both the block trace and the
    derivative-mean trace are finite and neither trends up at the end.
    """
    p, J = float(p), int(J)
    need = 2 ** (J + 1) - 1
    if f.degree < need:
        f = f.extended(need)
    else:
        f = f.truncated(need)
    r_grid = default_r_grid(J) if r_grid is None else [float(r) for r in r_grid]
    if any(not (0.0 < r < 1.0) for r in r_grid):
        raise ParameterError("radii must lie in (0, 1)")

    bn = block_norms(f, p, J).values
    block_trace = [bn[j] / float(w(2.0 ** -j)) for j in range(J + 1)]
    df = derivative(f)
    mean_trace, bloch_trace, growth_trace, gint_trace = [], [], [], []
    m = sample_count(f.degree)
    for r in r_grid:
        d = 1.0 - r
        vals_df = np.abs(circle_samples(df, r, m))
        vals_f = np.abs(circle_samples(f, r, m))
        if math.isinf(p):
            mp_df = vals_df.max()
        else:
            scale = vals_df.max()
            mp_df = 0.0 if scale == 0.0 else scale * np.mean((vals_df / scale) ** p) ** (1.0 / p)
        om = float(w(d))
        mean_trace.append(float(d * mp_df / om))
        bloch_trace.append(float((1.0 - r * r) * vals_df.max()))
        growth_trace.append(float(vals_f.max() * d ** (1.0 / p) / om))
        gint_trace.append(float(vals_f.max() / (abs(f.coeffs[0]) + growth_integral(w, p, d))))

    block_up, mean_up = trends_up(block_trace), trends_up(mean_trace)
    finite = all(map(math.isfinite, block_trace + mean_trace))
    return NormProxyReport(
        p=p, J=J, weight=w.to_dict(), j_grid=list(range(J + 1)), r_grid=r_grid,
        block_trace=block_trace, mean_trace=mean_trace, bloch_trace=bloch_trace,
        growth_trace=growth_trace, growth_integral_trace=gint_trace,
        block_proxy=abs(float(f.coeffs[0])) + max(block_trace),
        mean_proxy=max(mean_trace), bloch_proxy=max(bloch_trace),
        growth_proxy=max(growth_trace),
        block_trend_up=block_up, mean_trend_up=mean_up,
        member_at_scale=finite and not block_up and not mean_up,
    )


@dataclass
class DecreasingCoefReport:
    p: float
    J: int
    weight: dict
    generator: str
    n_ladder: list
    coef_trace: list
    coef_sup: float
    block_trace: list
    block_proxy: float
    coef_trend_up: bool
    block_trend_up: bool
    verdict: str

    def to_dict(self):
        return dict(self.__dict__)


def decreasing_coef_test(a, p, w, J=DEFAULT_J):
    """Compare ``sup_n a_n n^(1-1/p) / omega(1/n)`` with the block proxy.

    ``a`` is a generator or a :class:`TaylorFunction`.  The sequence must be
    nonnegative and nonincreasing from ``n = 1`` on; the constant term does
    not affect membership and is not checked.
    """
    p, J = float(p), int(J)
    f = a if isinstance(a, TaylorFunction) else TaylorFunction.from_generator(a, 2 ** (J + 1) - 1)
    coeffs = f.coefficients(2 ** (J + 1) - 1)
    if np.any(coeffs < 0.0):
        raise PreconditionError("coefficients must be nonnegative")
    if np.any(np.diff(coeffs[1:]) > 1e-15 * coeffs[1:-1]):
        raise PreconditionError("coefficients must be nonincreasing from n = 1")

    n = np.arange(1, 2 ** J + 1, dtype=float)
    ratios = coeffs[1:2 ** J + 1] * n ** (1.0 - 1.0 / p) / w(1.0 / n)
    ladder = [2 ** j for j in range(J + 1)]
    coef_trace = [float(ratios[k - 1]) for k in ladder]
    bn = block_norms(TaylorFunction(coeffs, f.generator), p, J).values
    block_trace = [bn[j] / float(w(2.0 ** -j)) for j in range(J + 1)]
    coef_up, block_up = trends_up(coef_trace), trends_up(block_trace)
    if coef_up == block_up:
        verdict = "agree-diverging" if coef_up else "agree-bounded"
    else:
        verdict = "disagree"
    return DecreasingCoefReport(
        p=p, J=J, weight=w.to_dict(), generator=f.tag, n_ladder=ladder,
        coef_trace=coef_trace, coef_sup=float(ratios.max()),
        block_trace=block_trace, block_proxy=abs(float(coeffs[0])) + max(block_trace),
        coef_trend_up=coef_up, block_trend_up=block_up, verdict=verdict,
    )
