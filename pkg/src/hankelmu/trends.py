"""Finite-scale trend heuristics shared by every experiment.

Boundedness is an asymptotic property; these rules only classify what a
trace does over the scales that were actually computed.
"""
import math

import numpy as np

TREND_STEPS = 3
TREND_RISE = 0.03
FLAT_RATIO = 4.0
DECADE_SPAN = 10
DECADE_RISE = 0.10

HEURISTICS = {
    "trend_steps": TREND_STEPS,
    "trend_rise": TREND_RISE,
    "flat_ratio": FLAT_RATIO,
    "decade_span": DECADE_SPAN,
    "decade_rise": DECADE_RISE,
}


def trends_up(trace, steps=TREND_STEPS, rise=TREND_RISE):
    """True if each of the last ``steps`` steps increases by at least ``rise``."""
    vals = [float(v) for v in trace]
    if len(vals) < steps + 1:
        return False
    tail = vals[-(steps + 1):]
    for prev, cur in zip(tail[:-1], tail[1:]):
        if not (prev > 0.0 and cur >= (1.0 + rise) * prev):
            return False
    return True


def is_flat(trace, ratio=FLAT_RATIO):
    """True if max/min over the trace is at most ``ratio`` (all-zero counts as flat)."""
    vals = np.abs(np.asarray(trace, dtype=float))
    if vals.size == 0 or not np.all(np.isfinite(vals)):
        return False
    hi, lo = vals.max(), vals.min()
    if hi == 0.0:
        return True
    return bool(lo > 0.0 and hi <= ratio * lo)


def rises_per_decade(trace, span=DECADE_SPAN, rise=DECADE_RISE):
    """True if the trace's last value exceeds the one ``span`` points back by ``rise``."""
    vals = [float(v) for v in trace]
    if len(vals) <= span:
        span = len(vals) - 1
    if span < 1:
        return False
    before, last = vals[-1 - span], vals[-1]
    if not math.isfinite(last):
        return True
    return before > 0.0 and last >= (1.0 + rise) * before


def growth_ratio(trace):
    """last/first of a trace, inf if it starts at zero and ends positive."""
    vals = [float(v) for v in trace]
    if not vals:
        return float("nan")
    if vals[0] == 0.0:
        return 1.0 if vals[-1] == 0.0 else float("inf")
    return vals[-1] / vals[0]
