"""Positive Borel measures on [0, 1): moments, tails and Carleson ratios.

All quadrature runs in the variable ``u = 1 - t`` so that the region next
to ``t = 1``, where ``t**n`` concentrates for large ``n``, keeps full
relative precision.  Densities and tail functions are therefore written
as functions of ``u``.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np

from . import _kernels
from .errors import ConfigError, DivergenceError, DomainError, ParameterError
from .quadrature import gauss_nodes
from .trends import rises_per_decade
from .weights import Weight, weight_from_config

RULE_TOL = 1e-14
MAX_PANELS = 1000
CARLESON_GRID_EXP = 40


# -- densities and tails (functions of u = 1 - t) ---------------------------

@dataclass(frozen=True)
class PowerDensity:
    """``d mu = scale * (1 - t)**(-sigma) dt``; ``sigma = 0`` is Lebesgue measure."""

    sigma: float = 0.0
    scale: float = 1.0

    @property
    def exponent(self):
        return -self.sigma

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if self.sigma == 0.0:
            return np.full_like(u, self.scale)
        return self.scale * u ** (-self.sigma)

    def to_dict(self):
        return {"kind": "power", "sigma": self.sigma, "scale": self.scale}


@dataclass(frozen=True)
class PowerTail:
    """``mu([b, 1)) = scale * (1 - b)**s``."""

    s: float
    scale: float = 1.0

    @property
    def exponent(self):
        return self.s

    def __call__(self, u):
        return self.scale * np.asarray(u, dtype=float) ** self.s

    def to_dict(self):
        return {"kind": "power", "s": self.s, "scale": self.scale}


@dataclass(frozen=True)
class LogCarlesonTail:
    """``mu([b, 1)) = (1 - b) / log(e / (1 - b))``, a 1-logarithmic 1-Carleson tail."""

    @property
    def exponent(self):
        return 1.0

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        return u / (1.0 - np.log(u))

    def to_dict(self):
        return {"kind": "log_carleson"}


@dataclass(frozen=True)
class WeightedPowerTail:
    """``mu([b, 1)) = scale * (1 - b)**s * omega(1 - b)``."""

    s: float
    weight: Weight
    scale: float = 1.0

    @property
    def exponent(self):
        lead = self.weight.alpha if self.weight.family != "custom" else 0.0
        return self.s + lead

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        return self.scale * u ** self.s * self.weight(u)

    def to_dict(self):
        return {"kind": "power_weight", "s": self.s, "scale": self.scale,
                "weight": self.weight.to_dict()}


# -- the measure -------------------------------------------------------------

@dataclass(frozen=True)
class Measure:
    """Either atoms plus an optional density, or a tail function ``F(b) = mu([b,1))``."""

    atoms: tuple = ()
    density: object = None
    tail_spec: object = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        atoms = tuple((float(t), float(m)) for t, m in self.atoms)
        for t, m in atoms:
            if not (0.0 <= t < 1.0):
                raise ParameterError(f"atom location {t} outside [0, 1)")
            if not m > 0.0:
                raise ParameterError(f"atom mass {m} must be positive")
        object.__setattr__(self, "atoms", atoms)
        if self.tail_spec is not None and (atoms or self.density is not None):
            raise ParameterError("a measure is either atoms+density or a tail function")
        if self.tail_spec is None and not atoms and self.density is None:
            raise ParameterError("empty measure")

    @property
    def is_tail(self):
        return self.tail_spec is not None

    def label(self):
        return self.name or "custom"

    def to_dict(self):
        return {
            "atoms": [list(a) for a in self.atoms],
            "density": None if self.density is None else self.density.to_dict(),
            "tail": None if self.tail_spec is None else self.tail_spec.to_dict(),
        }


def lebesgue():
    return Measure(density=PowerDensity(0.0), name="lebesgue")


def power_sigma(sigma=0.5, scale=1.0):
    return Measure(density=PowerDensity(float(sigma), float(scale)), name=f"power_sigma({sigma:g})")


def log_carleson_1_1():
    return Measure(tail_spec=LogCarlesonTail(), name="log_carleson_1_1")


def atom(t=0.0, mass=1.0):
    return Measure(atoms=((t, mass),), name=f"atom({t:g},{mass:g})")


def power_tail(s, scale=1.0):
    return Measure(tail_spec=PowerTail(float(s), float(scale)), name=f"tail(1-b)^{s:g}")


def weighted_power_tail(s, weight, scale=1.0):
    return Measure(tail_spec=WeightedPowerTail(float(s), weight, float(scale)),
                   name=f"tail(1-b)^{s:g}*omega")


BUILTINS = {
    "lebesgue": lebesgue,
    "power_sigma": power_sigma,
    "log_carleson_1_1": log_carleson_1_1,
}


def _density_from_config(spec):
    kind = spec.get("kind", "power")
    if kind == "lebesgue":
        return PowerDensity(0.0, float(spec.get("scale", 1.0)))
    if kind == "power":
        return PowerDensity(float(spec.get("sigma", 0.0)), float(spec.get("scale", 1.0)))
    raise ConfigError(f"unknown density kind {kind!r}")


def _tail_from_config(spec):
    kind = spec.get("kind")
    if kind == "power":
        return PowerTail(float(spec["s"]), float(spec.get("scale", 1.0)))
    if kind == "log_carleson":
        return LogCarlesonTail()
    if kind == "power_weight":
        return WeightedPowerTail(float(spec["s"]), weight_from_config(spec["weight"]),
                                 float(spec.get("scale", 1.0)))
    raise ConfigError(f"unknown tail kind {kind!r}")


def measure_from_config(spec):
    """Build a :class:`Measure` from a name, ``{"builtin": name, ...}`` or a component dict."""
    if isinstance(spec, Measure):
        return spec
    if isinstance(spec, dict) and "measure" in spec:
        spec = spec["measure"]
    if isinstance(spec, str):
        spec = {"builtin": spec}
    if not isinstance(spec, dict):
        raise ConfigError("measure spec must be a name or an object")
    try:
        if "builtin" in spec:
            name = spec["builtin"]
            if name not in BUILTINS:
                raise ConfigError(f"unknown built-in measure {name!r}")
            params = {k: v for k, v in spec.items() if k != "builtin"}
            return BUILTINS[name](**params)
        tail_cfg = spec.get("tail")
        if tail_cfg is not None:
            return Measure(tail_spec=_tail_from_config(tail_cfg), name=spec.get("name", ""))
        dens_cfg = spec.get("density")
        density = None if dens_cfg is None else _density_from_config(dens_cfg)
        atoms = tuple(tuple(a) for a in spec.get("atoms") or ())
        return Measure(atoms=atoms, density=density, name=spec.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad measure spec: {exc}") from None
    except ParameterError as exc:
        raise ConfigError(str(exc)) from None


# -- quadrature rules in u ---------------------------------------------------

def _pow1m(u, n):
    """(1 - u)**n, accurate for tiny u."""
    u = np.asarray(u, dtype=float)
    if n == 0:
        return np.ones_like(u)
    with np.errstate(divide="ignore"):
        return np.exp(n * np.log1p(-u))


def _build_rule(phi_ref, top, exponent, n_ref):
    """Nodes/weights for integrals over ``(0, top]`` in ``u``.

    Panels ``[top 2^-k-1, top 2^-k]`` are added until the reference
    integrand is past its peak (``u < 1/(n_ref+1)``) and both the last
    panel and the power-law remainder below it are negligible.  The
    remainder is kept as one extra node placed at the centroid of
    ``u**exponent`` on ``(0, u_K]``.
    """
    if exponent <= -1.0:
        raise DivergenceError(f"integrand ~ u^{exponent:g} is not integrable at t=1")
    peak = 1.0 / (n_ref + 1.0)
    xs, ws = [], []
    total = 0.0
    for k in range(MAX_PANELS):
        hi = top * 2.0 ** (-k)
        lo = 0.5 * hi
        if lo == 0.0:
            break
        x, w = gauss_nodes(lo, hi)
        part = float(np.dot(w, phi_ref(x)))
        xs.append(x)
        ws.append(w)
        total += part
        if hi > peak or k < 3:
            continue
        rem = abs(float(phi_ref(np.array([lo]))[0])) * lo / (1.0 + exponent)
        if abs(part) <= RULE_TOL * abs(total) and rem <= RULE_TOL * abs(total):
            uc = lo * (1.0 + exponent) / (2.0 + exponent)
            xs.append(np.array([uc]))
            ws.append(np.array([lo / (1.0 + exponent) * (lo / uc) ** exponent]))
            return np.concatenate(xs), np.concatenate(ws)
        if not math.isfinite(total):
            break
    raise DivergenceError("quadrature did not converge toward t=1")


@lru_cache(maxsize=256)
def _rule(mu, n_ref, top=1.0, shift=0.0):
    """Quadrature for the continuous part of ``mu``: returns ``(t, u, w_eff)``.

    For a density, ``sum w_eff h(t)`` approximates ``int h g dt``.  For a
    tail function, ``sum w_eff h(t)`` approximates ``int h(t) F(t) dt``,
    which integration by parts turns into ``int ... d mu``.  ``shift`` is
    the power of ``u`` the caller's integrand adds near ``t = 1``; the
    panel count is sized for it.
    """
    if mu.is_tail:
        fn = mu.tail_spec
        n1 = max(n_ref, 1)
        phi = lambda u: fn(u) * n1 * _pow1m(u, n1 - 1) * u ** shift
    elif mu.density is not None:
        fn = mu.density
        phi = lambda u: fn(u) * _pow1m(u, n_ref) * u ** shift
    else:
        return np.empty(0), np.empty(0), np.empty(0)
    u, w = _build_rule(phi, top, fn.exponent + shift, n_ref)
    w_eff = w * fn(u)
    t = 1.0 - u
    for arr in (t, u, w_eff):
        arr.setflags(write=False)
    return t, u, w_eff


def _check_finite(vals, what):
    if not np.all(np.isfinite(vals)):
        raise DivergenceError(f"{what} is not finite")
    return vals


def _atom_arrays(mu):
    if not mu.atoms:
        return np.empty(0), np.empty(0)
    a = np.asarray(mu.atoms, dtype=float)
    return a[:, 0], a[:, 1]


# -- moments -----------------------------------------------------------------

@dataclass
class MomentVector:
    n_max: int
    values: np.ndarray

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return self.values.shape[0]

    def is_nonincreasing(self, rtol=1e-12):
        v = self.values
        return bool(np.all(v[1:] <= v[:-1] * (1.0 + rtol) + 1e-300))

    def is_log_convex(self, rtol=1e-9):
        v = self.values
        if v.size < 3:
            return True
        return bool(np.all(v[1:-1] ** 2 <= v[:-2] * v[2:] * (1.0 + rtol) + 1e-300))

    def to_list(self):
        return [float(x) for x in self.values]


def moments_upto(mu, n_max):
    """``(mu_0, ..., mu_n_max)`` with one shared quadrature rule."""
    n_max = int(n_max)
    if n_max < 0:
        raise ParameterError("n_max must be nonnegative")
    vals = np.zeros(n_max + 1)
    if mu.is_tail:
        # mu_n = n int_0^1 F(t) t^(n-1) dt, mu_0 = F(0)
        t, _, w = _rule(mu, n_max)
        vals[0] = float(mu.tail_spec(np.array([1.0]))[0])
        if n_max >= 1:
            p = _kernels.power_sums(t, w, n_max - 1)
            vals[1:] = np.arange(1, n_max + 1) * p
    else:
        if mu.density is not None:
            t, _, w = _rule(mu, n_max)
            vals += _kernels.power_sums(t, w, n_max)
        ta, ma = _atom_arrays(mu)
        if ta.size:
            vals += _kernels.power_sums(ta, ma, n_max)
    return MomentVector(n_max, _check_finite(vals, "moment"))


def moment(mu, n):
    """``mu_n = int t^n d mu(t)``."""
    n = int(n)
    if n < 0:
        raise ParameterError("moment order must be nonnegative")
    return float(moments_upto(mu, n).values[n])


# -- tails -------------------------------------------------------------------

def _continuous_tail(mu, u):
    if mu.is_tail:
        return float(mu.tail_spec(np.array([u]))[0])
    if mu.density is None:
        return 0.0
    _, _, w = _rule(mu, 0, u)
    val = float(w.sum())
    if not math.isfinite(val):
        raise DivergenceError("tail mass is not finite")
    return val


def tail_u(mu, u):
    """``mu([1 - u, 1))`` for ``u`` in ``(0, 1]``, with ``u`` given exactly."""
    u = float(u)
    if not (0.0 < u <= 1.0):
        raise DomainError(f"tail offset {u} outside (0, 1]")
    return _continuous_tail(mu, u) + sum(m for t, m in mu.atoms if 1.0 - t <= u)


def tail(mu, b):
    """``mu([b, 1))`` for ``b`` in ``[0, 1)``."""
    b = float(b)
    if not (0.0 <= b < 1.0):
        raise DomainError(f"tail point {b} outside [0, 1)")
    return _continuous_tail(mu, 1.0 - b) + sum(m for t, m in mu.atoms if t >= b)


# -- integrals against mu ----------------------------------------------------

def integrate(mu, h, dh=None, n_ref=0, shift=0.0):
    """``int h d mu`` for a vectorised ``h(t, u)``.

    Tail-specified measures need the t-derivative ``dh(t, u)``:
    ``int h d mu = h(0) F(0) + int_0^1 h'(t) F(t) dt``.
    """
    if mu.is_tail:
        if dh is None:
            raise ParameterError("tail-specified measures need the derivative of the integrand")
        t, u, w = _rule(mu, n_ref, 1.0, shift)
        h0 = complex(np.asarray(h(np.array([0.0]), np.array([1.0])))[0])
        val = h0 * float(mu.tail_spec(np.array([1.0]))[0]) + np.sum(w * dh(t, u))
    else:
        val = 0.0
        if mu.density is not None:
            t, u, w = _rule(mu, n_ref, 1.0, shift)
            val = val + np.sum(w * h(t, u))
        ta, ma = _atom_arrays(mu)
        if ta.size:
            val = val + np.sum(ma * h(ta, 1.0 - ta))
    val = complex(val)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise DivergenceError("integral against the measure is not finite")
    return val if val.imag != 0.0 else val.real


def log_moment(mu, n):
    """``int t^n log(1/(1-t)) d mu(t)`` for ``n >= 1``."""
    n = int(n)
    if n < 1:
        raise ParameterError("log_moment needs n >= 1")
    if mu.is_tail and mu.tail_spec.exponent <= 0.0:
        raise DivergenceError("tail decays too slowly for the logarithmic moment")

    def h(t, u):
        return _pow1m(u, n) * -np.log(u)

    def dh(t, u):
        return n * _pow1m(u, n - 1) * -np.log(u) + _pow1m(u, n) / u

    shift = -1.0 if mu.is_tail else 0.0
    return float(integrate(mu, h, dh, n_ref=n, shift=shift))


# -- Carleson tests ----------------------------------------------------------

@dataclass
class CarlesonReport:
    s: float
    alpha: float
    sup_ratio: float
    witness_b: float
    grid: list
    trace: list
    verdict: str
    grid_slack: float
    log_normalization: str = "log(2*pi/(1-b))"

    def to_dict(self):
        return dict(self.__dict__)


def carleson_grid(k_max=CARLESON_GRID_EXP):
    """``b_k = 1 - 2**-k`` for ``k = 1..k_max``."""
    return [1.0 - 2.0 ** (-k) for k in range(1, k_max + 1)]


def carleson_ratio(mu, s, alpha=0.0, b_grid=None):
    """Sup over the grid of ``mu([b,1)) log(2 pi/(1-b))**alpha / (1-b)**s``.

    ``verdict`` is ``diverging`` when the ratio still rises by 10% or more
    over the last ten grid points, ``bounded`` otherwise; this is a trend
    reading, not a proof.  ``grid_slack`` bounds how far the sup over all
    ``b`` can exceed the sup over a doubling grid.
    """
    s, alpha = float(s), float(alpha)
    if s <= 0.0 or alpha < 0.0:
        raise ParameterError("need s > 0 and alpha >= 0")
    if b_grid is None:
        us = [2.0 ** (-k) for k in range(1, CARLESON_GRID_EXP + 1)]
    else:
        bs = np.asarray(b_grid, dtype=float)
        if bs.size < 2 or np.any(np.diff(bs) <= 0.0) or bs[0] < 0.0 or bs[-1] >= 1.0:
            raise ParameterError("Carleson grid must increase inside [0, 1)")
        us = list(1.0 - bs)
    trace = []
    for u in us:
        mass = tail_u(mu, u)
        trace.append(mass * math.log(2.0 * math.pi / u) ** alpha / u ** s)
    i = int(np.argmax(trace))
    ratio_steps = [us[j] / us[j + 1] for j in range(len(us) - 1)]
    step = max(ratio_steps) if ratio_steps else 2.0
    slack = step ** s * (math.log(2.0 * math.pi * step) / math.log(2.0 * math.pi)) ** alpha
    return CarlesonReport(
        s=s, alpha=alpha, sup_ratio=float(trace[i]), witness_b=1.0 - us[i],
        grid=[1.0 - u for u in us], trace=trace,
        verdict="diverging" if rises_per_decade(trace) else "bounded",
        grid_slack=slack,
    )
