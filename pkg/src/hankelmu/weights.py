"""Moduli of continuity on [0, pi] and the admissibility tests for them.

A weight is admissible when it is continuous, increasing, vanishes only at
0, satisfies the Dini condition and satisfies the b1 condition.  The
integral conditions are checked as ratio traces on a finite grid of
scales; a finite sup on the grid is the numerical stand-in for the
asymptotic statement.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError, DivergenceError, DomainError, ParameterError
from .quadrature import dyadic_down, dyadic_up
from .trends import rises_per_decade

PI = math.pi
LOG_E_PI = 1.0 + math.log(math.pi)
DEFAULT_GRID_FLOOR_EXP = 30
GROWTH_RISE = 0.01


@dataclass(frozen=True)
class Weight:
    """An increasing modulus ``omega`` on ``[0, pi]``.

    Families
    --------
    ``power``
        ``t**alpha`` with ``0 < alpha <= 1``.
    ``power_log``
        ``t**alpha * log(e*pi/t)**beta``.  When ``beta > alpha`` this
        expression turns over before ``pi``; past the turning point
        ``pi*exp(1 - beta/alpha)`` the weight is held at its maximum so
        that it stays nondecreasing on the whole interval.
    ``custom``
        Samples on a log-spaced grid, interpolated monotonically in
        log-log coordinates.  Below the first sample the first segment's
        power law is continued; above the last sample the weight is flat.
    """

    family: str
    alpha: float = 0.5
    beta: float = 0.0
    table_t: tuple = field(default=(), repr=False)
    table_w: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.family in ("power", "power_log"):
            if not (0.0 < self.alpha <= 1.0):
                raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        elif self.family == "custom":
            t = np.asarray(self.table_t, dtype=float)
            w = np.asarray(self.table_w, dtype=float)
            if t.ndim != 1 or t.size < 2 or t.shape != w.shape:
                raise ParameterError("custom weight needs matching sample tables")
            if np.any(t <= 0.0) or np.any(t > PI * (1 + 1e-12)) or np.any(np.diff(t) <= 0.0):
                raise ParameterError("custom sample points must increase inside (0, pi]")
            if np.any(w <= 0.0) or np.any(np.diff(w) < 0.0):
                raise ParameterError("custom samples must be positive and nondecreasing")
            if w[1] <= w[0]:
                raise ParameterError("first custom segment must increase strictly")
            log_t, log_w = np.log(t), np.log(w)
            object.__setattr__(self, "_interp", PchipInterpolator(log_t, log_w, extrapolate=False))
            object.__setattr__(self, "_slope0", (log_w[1] - log_w[0]) / (log_t[1] - log_t[0]))
        else:
            raise ParameterError(f"unknown weight family {self.family!r}")

    @classmethod
    def power(cls, alpha):
        return cls("power", alpha=float(alpha))

    @classmethod
    def power_log(cls, alpha, beta):
        return cls("power_log", alpha=float(alpha), beta=float(beta))

    @classmethod
    def from_samples(cls, t, values):
        return cls("custom", table_t=tuple(float(x) for x in t),
                   table_w=tuple(float(x) for x in values))

    @classmethod
    def tabulate(cls, other, n=241, t_min=2.0 ** -40, t_max=PI):
        """Sample ``other`` on a log-spaced grid and wrap it as a custom weight."""
        t = np.geomspace(t_min, t_max, n)
        return cls.from_samples(t, other(t))

    @property
    def turnover(self):
        """Point past which a ``power_log`` weight is held constant (pi if never)."""
        if self.family == "power_log" and self.beta > self.alpha:
            return min(PI, PI * math.exp(1.0 - self.beta / self.alpha))
        return PI

    def __call__(self, t):
        """Vectorised evaluation without domain checks (see :func:`eval_weight`)."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0.0
        tp = t[pos]
        if self.family == "power":
            out[pos] = tp ** self.alpha
        elif self.family == "power_log":
            tp = np.minimum(tp, self.turnover)
            out[pos] = tp ** self.alpha * (LOG_E_PI - np.log(tp)) ** self.beta
        else:
            t0, t1 = self.table_t[0], self.table_t[-1]
            vals = np.empty_like(tp)
            below, above = tp < t0, tp > t1
            mid = ~(below | above)
            vals[mid] = np.exp(self._interp(np.log(tp[mid])))
            vals[below] = self.table_w[0] * (tp[below] / t0) ** self._slope0
            vals[above] = self.table_w[-1]
            out[pos] = vals
        return out if out.ndim else float(out)

    def to_dict(self):
        if self.family == "power":
            return {"family": "power", "alpha": self.alpha}
        if self.family == "power_log":
            return {"family": "power_log", "alpha": self.alpha, "beta": self.beta}
        return {"family": "custom", "t": list(self.table_t), "omega": list(self.table_w)}

    def label(self):
        if self.family == "power":
            return f"t^{self.alpha:g}"
        if self.family == "power_log":
            return f"t^{self.alpha:g} log(e pi/t)^{self.beta:g}"
        return f"custom[{len(self.table_t)}]"


def weight_from_config(spec):
    """Build a :class:`Weight` from ``{"family": ..., ...}`` (or ``{"weight": {...}}``)."""
    if isinstance(spec, Weight):
        return spec
    if not isinstance(spec, dict):
        raise ConfigError(f"weight spec must be an object, got {type(spec).__name__}")
    if "weight" in spec and isinstance(spec["weight"], dict):
        spec = spec["weight"]
    family = spec.get("family")
    try:
        if family == "power":
            return Weight.power(spec["alpha"])
        if family == "power_log":
            return Weight.power_log(spec["alpha"], spec.get("beta", 1.0))
        if family == "custom":
            return Weight.from_samples(spec["t"], spec["omega"])
    except KeyError as exc:
        raise ConfigError(f"weight spec missing field {exc}") from None
    except ParameterError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown weight family {family!r}")


def eval_weight(w, t):
    """``omega(t)`` for ``t`` in ``[0, pi]``."""
    t = float(t)
    if not (0.0 <= t <= PI) or math.isnan(t):
        raise DomainError(f"weight argument {t} outside [0, pi]")
    return float(w(np.array([t]))[0])


def _check_delta(delta):
    delta = float(delta)
    if not (0.0 < delta <= PI):
        raise DomainError(f"scale {delta} outside (0, pi]")
    return delta


def dini_ratio(w, delta):
    """``int_0^delta omega(t)/t dt / omega(delta)``."""
    delta = _check_delta(delta)
    func = lambda t: w(t) / t
    kink = w.turnover
    if kink < delta:
        val, ok = dyadic_down(func, kink)
        val += dyadic_up(func, kink, delta)
    else:
        val, ok = dyadic_down(func, delta)
    if not ok:
        raise DivergenceError(f"Dini integral did not converge at delta={delta}")
    return val / eval_weight(w, delta)


def b1_ratio(w, delta):
    """``delta * int_delta^pi omega(t)/t^2 dt / omega(delta)``."""
    delta = _check_delta(delta)
    if delta >= PI:
        return 0.0
    func = lambda t: w(t) / (t * t)
    kink = w.turnover
    if delta < kink < PI:
        # the power_log envelope has a corner at its turnover
        val = dyadic_up(func, delta, kink) + dyadic_up(func, kink, PI)
    else:
        val = dyadic_up(func, delta, PI)
    if not math.isfinite(val):
        raise DivergenceError(f"b1 integral did not converge at delta={delta}")
    return delta * val / eval_weight(w, delta)


def default_grid(floor_exp=DEFAULT_GRID_FLOOR_EXP):
    """``delta_k = 2**-k`` for ``k = 0..floor_exp``, decreasing from 1."""
    return [2.0 ** (-k) for k in range(floor_exp + 1)]


@dataclass
class AdmissibilityReport:
    p: float
    grid: list
    dini_trace: list
    b1_trace: list
    growth_trace: list
    dini_sup: float
    b1_sup: float
    monotone_ok: bool
    positivity_ok: bool
    growth_class: str
    dini_divergent: bool = False
    b1_divergent: bool = False
    dini_trend_up: bool = False
    b1_trend_up: bool = False

    @property
    def admissible(self):
        return (not self.dini_divergent and not self.b1_divergent
                and math.isfinite(self.dini_sup) and math.isfinite(self.b1_sup)
                and self.monotone_ok and self.positivity_ok)

    def to_dict(self):
        d = dict(self.__dict__)
        d["admissible"] = self.admissible
        return d


def classify_growth(grid, values):
    """Classify ``delta**(-1/p) * omega(delta)`` along a decreasing grid.

    ``nonmonotone`` if it ever decreases as delta shrinks, ``blows_up`` if
    it still rises by at least 1% across the last factor of ten in delta,
    ``bounded`` otherwise.
    """
    g = np.asarray(values, dtype=float)
    if np.any(g[1:] < g[:-1] * (1.0 - 1e-12)):
        return "nonmonotone"
    d = np.asarray(grid, dtype=float)
    earlier = np.nonzero(d >= 10.0 * d[-1])[0]
    i = earlier[-1] if earlier.size else 0
    if g[i] > 0.0 and g[-1] >= (1.0 + GROWTH_RISE) * g[i]:
        return "blows_up"
    return "bounded"


def admissibility(w, p, delta_grid=None):
    """Grid-level check of the admissible-weight conditions plus the growth class."""
    grid = default_grid() if delta_grid is None else [float(d) for d in delta_grid]
    if len(grid) < 16:
        raise ParameterError("admissibility grid needs at least 16 points")
    arr = np.asarray(grid)
    if np.any(np.diff(arr) >= 0.0):
        raise ParameterError("admissibility grid must decrease strictly toward 0")
    if arr[-1] <= 0.0 or arr[0] > PI:
        raise ParameterError("admissibility grid must lie in (0, pi]")
    p = float(p)

    omega = w(arr)
    positivity_ok = bool(np.all(omega > 0.0)) and eval_weight(w, 0.0) == 0.0
    monotone_ok = bool(np.all(omega[1:] <= omega[:-1]))

    dini, b1 = [], []
    dini_div = b1_div = False
    for d in grid:
        try:
            dini.append(dini_ratio(w, d))
        except DivergenceError:
            dini.append(math.inf)
            dini_div = True
        try:
            b1.append(b1_ratio(w, d))
        except DivergenceError:
            b1.append(math.inf)
            b1_div = True

    growth = list(arr ** (-1.0 / p) * omega)
    return AdmissibilityReport(
        p=p, grid=grid, dini_trace=dini, b1_trace=b1, growth_trace=growth,
        dini_sup=max(dini), b1_sup=max(b1),
        monotone_ok=monotone_ok, positivity_ok=positivity_ok,
        growth_class=classify_growth(grid, growth),
        dini_divergent=dini_div, b1_divergent=b1_div,
        dini_trend_up=rises_per_decade(dini), b1_trend_up=rises_per_decade(b1),
    )
