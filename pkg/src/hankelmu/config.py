"""Experiment configuration files (JSON).

A config names the experiment and carries whatever it needs::

    {"experiment": "widom", "measure": "lebesgue", "sizes": [16, 32, 64]}

Measures, weights and functions use the same specs as
:func:`hankelmu.measures.measure_from_config`,
:func:`hankelmu.weights.weight_from_config` and
:func:`hankelmu.analytic.function_from_config`.
"""
from dataclasses import dataclass, field
import json
import math

from .errors import ConfigError, HankelMuError
from .measures import measure_from_config
from .weights import weight_from_config

EXPERIMENTS = ("thdec", "lemmom", "thhlao", "logcond", "widom",
               "admissible", "moments", "carleson", "apply")

REQUIRED = {
    "thdec": ("weight", "p"),
    "lemmom": ("measure", "weight", "p"),
    "thhlao": ("measure", "weight", "p"),
    "logcond": ("measure",),
    "widom": ("measure",),
    "admissible": ("weight", "p"),
    "moments": ("measure",),
    "carleson": ("measure",),
    "apply": ("measure",),
}

# sizes are block indices J for these, matrix/moment sizes N otherwise
BLOCK_EXPERIMENTS = ("thdec",)

KNOWN_KEYS = {"experiment", "measure", "weight", "p", "sizes", "tol", "max_iter",
              "max_n", "output", "function", "s", "alpha", "z", "name"}

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000
DEFAULT_MAX_N = 16384


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    measure: object = None
    weight: object = None
    p: float = None
    sizes: tuple = ()
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    max_n: int = DEFAULT_MAX_N
    output: str = None
    function: object = None
    s: float = 1.0
    alpha: float = 0.0
    z: tuple = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    def echo(self):
        """Config as it was used, after defaults and overrides."""
        out = {"experiment": self.experiment, "sizes": list(self.sizes),
               "tol": self.tol, "max_iter": self.max_iter, "max_n": self.max_n}
        for key in ("measure", "weight", "p", "function", "s", "alpha", "z"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val) if isinstance(val, tuple) else val
        return out


def _number(value, key, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"{key!r} must be an integer, got {value!r}")
    if not math.isfinite(value) and not (key == "p" and value == math.inf):
        raise ConfigError(f"{key!r} must be finite")
    return int(value) if integer else float(value)


def config_from_dict(data, experiment=None, tol=None, max_n=None):
    """Validate ``data`` and apply command-line overrides."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    name = experiment or data.get("experiment")
    if name is None:
        raise ConfigError("no experiment given")
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {name!r}")
    if experiment and data.get("experiment") not in (None, experiment):
        raise ConfigError(f"config is for {data['experiment']!r}, not {experiment!r}")
    missing = [k for k in REQUIRED[name] if k not in data]
    if missing:
        raise ConfigError(f"{name} needs {', '.join(missing)}")

    cap = _number(data.get("max_n", DEFAULT_MAX_N) if max_n is None else max_n, "max_n", True)
    if cap < 1:
        raise ConfigError("max_n must be positive")
    sizes = data.get("sizes", [])
    if not isinstance(sizes, list):
        raise ConfigError("'sizes' must be a list")
    sizes = [_number(s, "sizes", True) for s in sizes]
    if any(s < 1 for s in sizes):
        raise ConfigError("sizes must be positive")
    if name in BLOCK_EXPERIMENTS:
        sizes = [j for j in sizes if 2 ** j <= cap]
    else:
        sizes = [n for n in sizes if n <= cap]
    if data.get("sizes") and not sizes:
        raise ConfigError(f"every size exceeds max_n = {cap}")

    p = data.get("p")
    if p is not None:
        p = _number(p, "p")
    z = data.get("z")
    if z is not None:
        if not (isinstance(z, list) and len(z) == 2):
            raise ConfigError("'z' must be [re, im]")
        z = (_number(z[0], "z"), _number(z[1], "z"))

    tol_val = _number(data.get("tol", DEFAULT_TOL) if tol is None else tol, "tol")
    if not tol_val > 0.0:
        raise ConfigError("tol must be positive")
    cfg = ExperimentConfig(
        experiment=name, measure=data.get("measure"), weight=data.get("weight"), p=p,
        sizes=tuple(sizes), tol=tol_val,
        max_iter=_number(data.get("max_iter", DEFAULT_MAX_ITER), "max_iter", True),
        max_n=cap, output=data.get("output"), function=data.get("function"),
        s=_number(data.get("s", 1.0), "s"), alpha=_number(data.get("alpha", 0.0), "alpha"),
        z=z, raw=dict(data),
    )
    # surface malformed specs now rather than halfway through a run
    try:
        if cfg.measure is not None:
            measure_from_config(cfg.measure)
        if cfg.weight is not None:
            weight_from_config(cfg.weight)
    except ConfigError:
        raise
    except HankelMuError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def load_config(path, experiment=None, tol=None, max_n=None):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return config_from_dict(data, experiment=experiment, tol=tol, max_n=max_n)
