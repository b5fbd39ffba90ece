import math

import mpmath
import numpy as np
import pytest

from hankelmu.errors import ConfigError, DomainError, ParameterError
from hankelmu.weights import (Weight, admissibility, b1_ratio, classify_growth, default_grid,
                              dini_ratio, eval_weight, weight_from_config)


def test_eval_power():
    w = Weight.power(0.5)
    assert eval_weight(w, 0.0) == 0.0
    assert eval_weight(w, 0.25) == pytest.approx(0.5, abs=1e-15)


def test_eval_power_log_against_mpmath():
    w = Weight.power_log(0.5, 1.0)
    t = mpmath.mpf("0.25")
    ref = mpmath.sqrt(t) * mpmath.log(mpmath.e * mpmath.pi / t)
    assert eval_weight(w, 0.25) == pytest.approx(float(ref), rel=1e-14)
    assert eval_weight(w, 0.25) == pytest.approx(1.7655, abs=1e-4)


@pytest.mark.parametrize("t", [-1e-9, math.pi + 1e-9, math.nan])
def test_eval_outside_domain(t):
    with pytest.raises(DomainError):
        eval_weight(Weight.power(0.5), t)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("delta", [math.pi, 1.0, 1e-3, 1e-8])
def test_dini_power_closed_form(alpha, delta):
    assert dini_ratio(Weight.power(alpha), delta) == pytest.approx(1.0 / alpha, rel=1e-8)


def test_dini_custom_table():
    w = Weight.tabulate(Weight.power(0.5))
    assert dini_ratio(w, 0.1) == pytest.approx(2.0, rel=1e-6)


@pytest.mark.parametrize("delta", [1.0, 1e-2, 1e-6])
def test_b1_power_closed_form(delta):
    expected = (1.0 - (delta / math.pi) ** 0.5) / 0.5
    assert b1_ratio(Weight.power(0.5), delta) == pytest.approx(expected, rel=1e-10)


def test_b1_endpoint_and_powerlog():
    assert b1_ratio(Weight.power(0.5), math.pi) == 0.0
    v = b1_ratio(Weight.power_log(0.5, 1.0), 1e-4)
    assert 0.5 <= v <= 4.0


def test_b1_against_mpmath():
    w = Weight.power_log(0.5, 1.0)
    d = 1e-3
    top = mpmath.pi / mpmath.e  # weight is held flat past its maximum
    om = lambda t: mpmath.sqrt(min(t, top)) * mpmath.log(mpmath.e * mpmath.pi / min(t, top))
    ref = d * mpmath.quad(lambda t: om(t) / t ** 2, [d, 0.01, 0.1, top, mpmath.pi])
    ref /= eval_weight(w, d)
    assert b1_ratio(w, d) == pytest.approx(float(ref), rel=1e-10)


@pytest.mark.parametrize("delta", [0.0, -1.0, 4.0])
def test_ratio_domain(delta):
    with pytest.raises(DomainError):
        dini_ratio(Weight.power(0.5), delta)


def test_growth_classes():
    assert admissibility(Weight.power(0.5), 2).growth_class == "bounded"
    rep = admissibility(Weight.power_log(0.5, 1.0), 2)
    assert rep.growth_class == "blows_up"
    assert math.isfinite(rep.dini_sup) and math.isfinite(rep.b1_sup) and rep.admissible
    # delta^(-1/2) delta^(1/4) = delta^(-1/4) does grow without bound
    assert admissibility(Weight.power(0.25), 2).growth_class == "blows_up"
    assert admissibility(Weight.power(0.75), 2).growth_class == "nonmonotone"


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
def test_power_family_admissible(alpha):
    rep = admissibility(Weight.power(alpha), 2)
    assert rep.admissible
    assert rep.dini_sup >= 0.5 and rep.b1_sup >= 0.5
    assert rep.dini_sup == pytest.approx(1.0 / alpha, rel=1e-8)


def test_power_one_b1_trend_flagged():
    # b1 ratio for t is log(pi/delta): finite on the grid but rising
    rep = admissibility(Weight.power(1.0), 2)
    assert rep.b1_trend_up and not rep.dini_trend_up


def test_admissibility_grid_checks():
    w = Weight.power(0.5)
    with pytest.raises(ParameterError):
        admissibility(w, 2, [2.0 ** -k for k in range(10)])
    with pytest.raises(ParameterError):
        admissibility(w, 2, [2.0 ** -k for k in range(20)][::-1])
    assert len(default_grid()) == 31


def test_powerlog_held_constant_past_turnover():
    w = Weight.power_log(0.25, 1.0)
    t = np.linspace(0.0, math.pi, 4001)
    v = w(t)
    assert np.all(np.diff(v) >= 0.0)
    assert w.turnover < math.pi


def test_custom_monotone_and_extrapolation():
    w = Weight.from_samples([0.01, 0.1, 1.0, math.pi], [0.1, 0.3, 0.9, 1.0])
    t = np.geomspace(1e-6, math.pi, 500)
    assert np.all(np.diff(w(t)) >= 0.0)
    assert eval_weight(w, 0.0) == 0.0
    with pytest.raises(ParameterError):
        Weight.from_samples([0.1, 0.2], [0.5, 0.4])


def test_classify_growth_rules():
    grid = default_grid()
    assert classify_growth(grid, [1.0] * len(grid)) == "bounded"
    assert classify_growth(grid, [1.0 + k for k in range(len(grid))]) == "blows_up"
    assert classify_growth(grid, [1.0 / (1 + k) for k in range(len(grid))]) == "nonmonotone"


def test_weight_config():
    assert weight_from_config({"weight": {"family": "power", "alpha": 0.5}}) == Weight.power(0.5)
    w = weight_from_config({"family": "power_log", "alpha": 0.5, "beta": 1.0})
    assert w.to_dict() == {"family": "power_log", "alpha": 0.5, "beta": 1.0}
    for bad in ({"family": "nope"}, {"family": "power"}, {"family": "power", "alpha": 2.0}, 3):
        with pytest.raises(ConfigError):
            weight_from_config(bad)


@pytest.mark.parametrize("alpha,delta", [(0.5, 0.01), (0.5, 1e-7), (0.25, 3.0)])
def test_dini_power_log_closed_form(alpha, delta):
    # int_0^a t^(alpha-1) log(e pi/t) dt = a^alpha/alpha (log(e pi/a) + 1/alpha), flat past the turnover
    w = Weight.power_log(alpha, 1.0)
    a = min(delta, w.turnover)
    val = a ** alpha / alpha * (math.log(math.e * math.pi / a) + 1.0 / alpha)
    val += float(w(a)) * math.log(delta / a)
    assert dini_ratio(w, delta) == pytest.approx(val / float(w(delta)), rel=1e-10)
