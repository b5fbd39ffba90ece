import math

import mpmath
import numpy as np
import pytest
from scipy.special import beta as beta_fn

from hankelmu import measures as M
from hankelmu.errors import ConfigError, DivergenceError, DomainError, ParameterError


def riemann(g, n=2_000_000):
    # midpoint rule oracle on [0, 1]
    t = (np.arange(n) + 0.5) / n
    return float(np.mean(g(t)))


def test_lebesgue_moments_exact():
    mv = M.moments_upto(M.lebesgue(), 100)
    assert np.max(np.abs(mv.values - 1.0 / np.arange(1, 102))) <= 1e-12
    assert M.moment(M.lebesgue(), 3) == pytest.approx(0.25, abs=1e-15)


def test_atom_moments():
    assert M.moment(M.atom(0.5, 1.0), 2) == 0.25
    mv = M.moments_upto(M.atom(0.0, 1.0), 6)
    assert list(mv.values) == [1.0, 0, 0, 0, 0, 0, 0]


def test_linear_density_moments():
    mu = M.Measure(density=M.PowerDensity(-1.0))
    assert M.moment(mu, 2) == pytest.approx(1 / 12, rel=1e-12)
    assert M.moment(mu, 2) == pytest.approx(riemann(lambda t: (1 - t) * t * t), rel=1e-9)
    assert np.allclose(M.moments_upto(mu, 2).values, [1 / 2, 1 / 6, 1 / 12], rtol=1e-12)


@pytest.mark.parametrize("n", [0, 1, 7, 100, 4096, 32766])
def test_power_sigma_beta(n):
    assert M.moment(M.power_sigma(), n) == pytest.approx(beta_fn(n + 1, 0.5), rel=1e-10)


@pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("n", [1, 10, 1000])
def test_tail_measure_moments(s, n):
    mu = M.power_tail(s)
    assert M.moment(mu, n) == pytest.approx(n * beta_fn(n, s + 1.0), rel=1e-10)
    assert M.moment(mu, 0) == 1.0


def test_tail_moment_consistency_for_densities():
    # moment by direct quadrature vs n int F(t) t^(n-1) dt, F the tail of the density
    mu = M.power_sigma()
    nu = M.power_tail(0.5, scale=2.0)
    direct = M.moments_upto(mu, 256).values
    via_tail = M.moments_upto(nu, 256).values
    assert np.max(np.abs(direct - via_tail) / direct) <= 1e-8


def test_tails():
    assert M.tail(M.lebesgue(), 0.75) == pytest.approx(0.25, abs=1e-14)
    assert M.tail(M.power_sigma(), 0.75) == pytest.approx(1.0, rel=1e-12)
    assert M.tail(M.atom(0.5, 2.0), 0.6) == 0.0
    assert M.tail(M.atom(0.5, 2.0), 0.5) == 2.0
    with pytest.raises(DomainError):
        M.tail(M.lebesgue(), 1.0)


def test_log_moments():
    assert M.log_moment(M.atom(0.5, 1.0), 1) == pytest.approx(0.5 * math.log(2), rel=1e-14)
    assert M.log_moment(M.atom(0.0, 5.0), 1) == 0.0
    ref = float(mpmath.quad(lambda t: t ** 8 * mpmath.log(1 / (1 - t)), [0, 0.5, 0.9, 0.99, 1]))
    assert M.log_moment(M.lebesgue(), 8) == pytest.approx(ref, rel=1e-10)


def test_lebesgue_log_moment_tracks_log_n():
    ratios = [n * M.log_moment(M.lebesgue(), n) / math.log(n) for n in (8, 32, 128, 512, 1024)]
    assert max(ratios) / min(ratios) < 2.0


def test_log_moment_tail_and_density_agree():
    a = M.log_moment(M.power_sigma(), 50)
    b = M.log_moment(M.power_tail(0.5, scale=2.0), 50)
    assert a == pytest.approx(b, rel=1e-10)


def test_log_carleson_log_moment_bounded():
    mu = M.log_carleson_1_1()
    vals = [n * M.log_moment(mu, n) for n in (64, 1024, 16384)]
    assert max(vals) < 1.0


def test_carleson_examples():
    r = M.carleson_ratio(M.lebesgue(), 1.0)
    assert r.sup_ratio == pytest.approx(1.0, rel=1e-12) and r.verdict == "bounded"
    assert M.carleson_ratio(M.power_sigma(), 1.0).verdict == "diverging"
    r = M.carleson_ratio(M.power_sigma(), 0.5)
    assert r.sup_ratio == pytest.approx(2.0, rel=1e-12) and r.verdict == "bounded"
    mu = M.log_carleson_1_1()
    r1 = M.carleson_ratio(mu, 1.0, 1.0)
    assert r1.verdict == "bounded" and r1.sup_ratio <= 2 * math.pi
    assert M.carleson_ratio(mu, 1.0, 0.0).verdict == "bounded"
    assert M.carleson_ratio(mu, 1.0, 2.0).verdict == "diverging"


def test_carleson_grid_and_slack():
    r = M.carleson_ratio(M.lebesgue(), 1.0)
    assert r.grid[0] == 0.5 and len(r.grid) == 40
    assert r.grid_slack == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        M.carleson_ratio(M.lebesgue(), 1.0, b_grid=[0.9, 0.5])


def test_divergent_density():
    mu = M.Measure(density=M.PowerDensity(1.5))
    with pytest.raises(DivergenceError):
        M.moment(mu, 3)


@pytest.mark.parametrize("mu", [M.lebesgue(), M.power_sigma(), M.log_carleson_1_1(),
                                M.atom(0.3, 2.0), M.power_tail(0.25)])
def test_moment_vector_invariants(mu):
    mv = M.moments_upto(mu, 512)
    assert mv.is_nonincreasing() and mv.is_log_convex()


def test_measure_validation():
    with pytest.raises(ParameterError):
        M.Measure(atoms=((1.0, 1.0),))
    with pytest.raises(ParameterError):
        M.Measure(atoms=((0.5, -1.0),))
    with pytest.raises(ParameterError):
        M.Measure()
    with pytest.raises(ParameterError):
        M.Measure(atoms=((0.5, 1.0),), tail_spec=M.PowerTail(1.0))


def test_measure_config():
    mu = M.measure_from_config({"measure": {"atoms": [[0.5, 1.0]],
                                            "density": {"kind": "power", "sigma": 0.5}}})
    assert M.moment(mu, 0) == pytest.approx(3.0, rel=1e-12)
    assert M.measure_from_config("lebesgue").to_dict() == M.lebesgue().to_dict()
    assert M.measure_from_config({"tail": {"kind": "log_carleson"}}).is_tail
    for bad in ("nope", {"builtin": "nope"}, {"tail": {"kind": "power"}}, 5):
        with pytest.raises(ConfigError):
            M.measure_from_config(bad)
