"""Experiment drivers.

Each ``run_*`` takes an :class:`~hankelmu.config.ExperimentConfig` and
returns a :class:`~hankelmu.report.VerificationReport`.  Hypotheses are
checked before any heavy computation; a violated one raises
:class:`~hankelmu.errors.HypothesisRefusal` and nothing else is computed.
"""
import math

import numpy as np

from . import corpus
from .analytic import (OmegaExtremal, TaylorFunction, block_norms, decreasing_coef_test,
                       function_from_config, lambda_membership)
from .errors import (ConvergenceError, DivergenceError, HypothesisRefusal, ParameterError,
                     PreconditionError)
from .hankel import (HankelOp, apply_fast, apply_naive, fubini_gap, i_mu_eval,
                     top_singular_value)
from .measures import (carleson_ratio, log_moment, measure_from_config, moments_upto,
                       tail_u)
from .report import VerificationReport, provenance
from .trends import growth_ratio, is_flat, rises_per_decade, trends_up
from .weights import admissibility, weight_from_config

DEFAULT_MOMENT_N = 100
DEFAULT_LOG_N = 2 ** 14
DEFAULT_APPLY_SIZES = (16, 64, 256)


def _report(cfg, columns, rows, verdicts, traces, failures=()):
    failures = list(failures)
    return VerificationReport(
        experiment=cfg.experiment, columns=columns, rows=rows, verdicts=verdicts,
        traces=traces, provenance=provenance(cfg.echo()),
        status="numeric_failure" if failures else "ran", failures=failures,
    )


def _weight_and_p(cfg):
    return weight_from_config(cfg.weight), float(cfg.p)


def _require_p(p, allow_inf=True):
    if not p > 1.0 or (not allow_inf and math.isinf(p)):
        rng = "(1, inf]" if allow_inf else "(1, inf)"
        raise HypothesisRefusal("p_out_of_range", f"p = {p} is outside {rng}", {"p": p})


def _require_admissible(w, p, need_growth=False):
    rep = admissibility(w, p)
    if not rep.admissible:
        raise HypothesisRefusal(
            "weight_not_admissible", f"weight {w.label()} fails the admissibility checks",
            {"dini_sup": rep.dini_sup, "b1_sup": rep.b1_sup,
             "monotone_ok": rep.monotone_ok, "positivity_ok": rep.positivity_ok})
    if need_growth and rep.growth_class != "blows_up":
        raise HypothesisRefusal(
            "growth_hypothesis", f"delta^(-1/p) omega(delta) is {rep.growth_class}, "
            "not increasing to infinity", {"growth_class": rep.growth_class,
                                           "growth_trace": rep.growth_trace})
    return rep


def _doubling(sizes, default):
    sizes = list(sizes) if sizes else list(default)
    if len(sizes) < 2 or any(b != 2 * a for a, b in zip(sizes[:-1], sizes[1:])):
        raise HypothesisRefusal("not_doubling", "sizes must form a doubling ladder",
                                {"sizes": sizes})
    return sizes


def _span_growth(sizes, trace, lo=2 ** 6, hi=2 ** 12):
    """trace[hi]/trace[lo] when both sizes are present, else last/first."""
    if lo in sizes and hi in sizes:
        a, b = trace[sizes.index(lo)], trace[sizes.index(hi)]
        return b / a if a > 0 else (math.inf if b > 0 else 1.0)
    return growth_ratio(trace)


# -- weights, moments, Carleson, raw operator -------------------------------

def run_admissible(cfg):
    w, p = _weight_and_p(cfg)
    _require_p(p)
    rep = admissibility(w, p)
    rows = [[d, a, b, g] for d, a, b, g in
            zip(rep.grid, rep.dini_trace, rep.b1_trace, rep.growth_trace)]
    verdicts = {k: v for k, v in rep.to_dict().items() if not isinstance(v, list)}
    return _report(cfg, ["delta", "dini_ratio", "b1_ratio", "growth"], rows, verdicts,
                   {"dini": rep.dini_trace, "b1": rep.b1_trace, "growth": rep.growth_trace})


def run_moments(cfg):
    mu = measure_from_config(cfg.measure)
    n_max = max(cfg.sizes) if cfg.sizes else DEFAULT_MOMENT_N
    mv = moments_upto(mu, n_max)
    vals = mv.values
    rows = [[n, float(vals[n])] for n in range(n_max + 1)]
    verdicts = {"nonincreasing": mv.is_nonincreasing(), "log_convex": mv.is_log_convex(),
                "measure": mu.label()}
    return _report(cfg, ["n", "moment"], rows, verdicts, {"moments": vals})


def run_carleson(cfg):
    mu = measure_from_config(cfg.measure)
    rep = carleson_ratio(mu, cfg.s, cfg.alpha)
    rows = [[b, r] for b, r in zip(rep.grid, rep.trace)]
    verdicts = {"verdict": rep.verdict, "sup_ratio": rep.sup_ratio,
                "witness_b": rep.witness_b, "grid_slack": rep.grid_slack,
                "s": rep.s, "alpha": rep.alpha, "rule": "rises_per_decade"}
    return _report(cfg, ["b", "ratio"], rows, verdicts, {"ratio": rep.trace})


def run_apply(cfg):
    """Fast vs naive products, the Fubini gap and optionally I_mu at ``z``."""
    mu = measure_from_config(cfg.measure)
    spec = cfg.function if cfg.function is not None else {"generator": "one_over_n"}
    w = weight_from_config(cfg.weight) if cfg.weight is not None else None
    sizes = list(cfg.sizes) if cfg.sizes else list(DEFAULT_APPLY_SIZES)
    f = function_from_config(spec, weight=w, p=cfg.p, degree=max(sizes) - 1)
    z = None if cfg.z is None else complex(*cfg.z)
    rows, rel_errs, gaps = [], [], []
    for n in sizes:
        H = HankelOp.from_measure(mu, n)
        a = np.zeros(n)
        c = f.coefficients(min(n - 1, f.degree)) if f.generator is not None else f.coeffs[:n]
        a[:c.shape[0]] = c
        bn, bf = apply_naive(H, a), apply_fast(H, a)
        scale = float(np.max(np.abs(bn)))
        rel = float(np.max(np.abs(bf - bn))) / scale if scale > 0 else float(np.max(np.abs(bf)))
        gap = fubini_gap(mu, f, n).gap if f.generator is not None else math.nan
        row = [n, rel, gap]
        if z is not None:
            im = i_mu_eval(mu, TaylorFunction(a), z)
            row += [im.value, im.series_value, im.gap]
        rows.append(row)
        rel_errs.append(rel)
        gaps.append(gap)
    columns = ["N", "fast_naive_rel", "fubini_gap"]
    if z is not None:
        columns += ["i_mu", "series", "series_gap"]
    ratios = [b / a for a, b in zip(gaps[:-1], gaps[1:]) if a > 0 and math.isfinite(a)]
    verdicts = {"fast_matches_naive": max(rel_errs) <= 1e-10,
                "max_fast_naive_rel": max(rel_errs),
                "fubini_gap_ratios": ratios}
    return _report(cfg, columns, rows, verdicts, {"fast_naive_rel": rel_errs, "fubini_gap": gaps})


# -- spectral dichotomy ------------------------------------------------------

def run_widom(cfg):
    mu = measure_from_config(cfg.measure)
    sizes = _doubling(cfg.sizes, corpus.OPERATOR_LADDER)
    car = carleson_ratio(mu, 1.0)
    rows, sigma, failures = [], [], []
    for n in sizes:
        H = HankelOp.from_measure(mu, n)
        try:
            s, ok = top_singular_value(H, tol=cfg.tol, max_iter=cfg.max_iter), True
        except ConvergenceError as exc:
            s, ok = exc.last, False
            failures.append({"N": n, "error": str(exc), "last": exc.last})
        inc = (s / sigma[-1] - 1.0) if sigma and sigma[-1] > 0 else math.nan
        sigma.append(s)
        rows.append([n, s, inc, ok])
    last_inc = rows[-1][2]
    climbing = trends_up(sigma)
    consistent = (car.verdict == "bounded") != climbing
    verdicts = {
        "carleson": car.verdict, "carleson_sup": car.sup_ratio,
        "sigma_nondecreasing": all(b >= a * (1 - 1e-12) for a, b in zip(sigma[:-1], sigma[1:])),
        "sigma_trend_up": climbing,
        "last_increment": last_inc,
        "plateau": bool(math.isfinite(last_inc) and last_inc < corpus.PLATEAU_INCREMENT),
        "growth_6_to_12": _span_growth(sizes, sigma),
        "below_pi": max(sigma) <= math.pi,
        "combined": "consistent" if consistent else "inconsistent",
    }
    return _report(cfg, ["N", "sigma_max", "increment", "converged"], rows, verdicts,
                   {"sigma": sigma, "carleson": car.trace}, failures)


# -- operator on the mean Lipschitz scale ------------------------------------

def _image_proxy(mu_moments, a, p, w):
    """Block proxy of ``H_N a``: ``|b_0| + max_j ||Delta_j b||_p / omega(2^-j)``.

    Uses the index-order product so that exact zeros stay exact.
    """
    n = a.shape[0]
    H = HankelOp(n, mu_moments[:2 * n - 1])
    b = apply_naive(H, a)
    J = int(math.floor(math.log2(n))) - 1
    bn = block_norms(TaylorFunction(b[:2 ** (J + 1)]), p, J).values
    return abs(float(b[0])) + max(bn[j] / float(w(2.0 ** -j)) for j in range(J + 1))


def run_thhlao(cfg):
    w, p = _weight_and_p(cfg)
    _require_p(p, allow_inf=False)
    _require_admissible(w, p, need_growth=True)
    mu = measure_from_config(cfg.measure)
    sizes = _doubling(cfg.sizes, corpus.OPERATOR_LADDER)
    if sizes[0] < 4:
        raise HypothesisRefusal("ladder_too_short", "sizes must start at N >= 4", {"sizes": sizes})
    car = carleson_ratio(mu, 1.0)

    members = []
    for name, gen in corpus.corpus_generators(w, p):
        rep = lambda_membership(TaylorFunction.from_generator(gen, 16), p, w)
        if rep.member_at_scale:
            members.append((name, gen))
    if "omega_extremal" not in [m for m, _ in members]:
        members.insert(0, ("omega_extremal", OmegaExtremal(w, p)))

    moments = moments_upto(mu, 2 * sizes[-1] - 2).values
    traces = {}
    for name, gen in members:
        traces[name] = [_image_proxy(moments, gen(np.arange(n)), p, w) for n in sizes]
    ext = traces["omega_extremal"]
    flat, up = is_flat(ext, corpus.FLAT_RATIO), trends_up(ext)
    if car.verdict == "bounded":
        consistent = flat
    else:
        consistent = up
    names = [m for m, _ in members]
    rows = [[n] + [traces[m][i] for m in names] for i, n in enumerate(sizes)]
    verdicts = {
        "carleson": car.verdict, "carleson_sup": car.sup_ratio,
        "members_in_space": names,
        "extremal_flat": flat, "extremal_trend_up": up,
        "extremal_max_over_min": (max(ext) / min(ext)) if min(ext) > 0 else
                                 (1.0 if max(ext) == 0 else math.inf),
        "extremal_growth_6_to_12": _span_growth(sizes, ext),
        "member_flat": {m: is_flat(traces[m], corpus.FLAT_RATIO) for m in names},
        "combined": "consistent" if consistent else "inconsistent",
    }
    return _report(cfg, ["N"] + [f"proxy_{m}" for m in names], rows, verdicts,
                   {"proxy": traces, "carleson": car.trace})


# -- coefficient / block equivalence -----------------------------------------

def _expected_thdec(w, p):
    for i, (pp, wd) in enumerate(corpus.PAIRS):
        if pp == p and weight_from_config(wd) == w:
            return corpus.EXPECTED_THDEC[i]
    return None


def run_thdec(cfg):
    w, p = _weight_and_p(cfg)
    _require_p(p)
    _require_admissible(w, p)
    J = max(cfg.sizes) if cfg.sizes else corpus.BLOCK_LADDER[-1]
    if cfg.function is not None:
        f = function_from_config(cfg.function, weight=w, p=p, degree=2 ** (J + 1) - 1)
        cases = [(f.tag, f)]
    else:
        cases = corpus.corpus_generators(w, p)
    results = []
    for name, gen in cases:
        try:
            results.append((name, decreasing_coef_test(gen, p, w, J=J)))
        except PreconditionError as exc:
            raise HypothesisRefusal("coefficients_not_decreasing", str(exc),
                                    {"generator": name}) from None
    expected = _expected_thdec(w, p) if cfg.function is None else None
    rows, verdicts, traces = [], {}, {}
    for name, rep in results:
        for j, (n, c, b) in enumerate(zip(rep.n_ladder, rep.coef_trace, rep.block_trace)):
            rows.append([name, j, n, c, b])
        entry = {"verdict": rep.verdict, "coef_sup": rep.coef_sup,
                 "block_proxy": rep.block_proxy, "coef_trend_up": rep.coef_trend_up,
                 "block_trend_up": rep.block_trend_up}
        if expected is not None:
            entry["expected"] = expected[name]
        verdicts[name] = entry
        traces[name] = {"coef": rep.coef_trace, "block": rep.block_trace}
    agree = [r.verdict != "disagree" for _, r in results]
    summary = {"cases": verdicts, "J": J, "agreement_rate": sum(agree) / len(agree)}
    if expected is not None:
        summary["matches_expected"] = all(verdicts[n]["verdict"] == expected[n] for n, _ in results)
    return _report(cfg, ["generator", "j", "n", "coef_ratio", "block_ratio"], rows,
                   summary, traces)


# -- moment / tail equivalences ----------------------------------------------

def run_lemmom(cfg):
    w, p = _weight_and_p(cfg)
    _require_p(p, allow_inf=False)
    _require_admissible(w, p, need_growth=True)
    mu = measure_from_config(cfg.measure)
    n_max = max(cfg.sizes) if cfg.sizes else 2 ** 14
    vals = moments_upto(mu, n_max).values
    n = np.arange(1, n_max + 1, dtype=float)
    mom_ratio = n ** (1.0 - 1.0 / p) * vals[1:] / w(1.0 / n)
    ladder = [2 ** k for k in range(int(math.log2(n_max)) + 1)]
    mom_trace = [float(mom_ratio[k - 1]) for k in ladder]
    us = [2.0 ** -k for k in range(1, 41)]
    tail_trace = [tail_u(mu, u) / (u ** (1.0 - 1.0 / p) * float(w(u))) for u in us]
    mom_side = "diverging" if trends_up(mom_trace) else "bounded"
    tail_side = "diverging" if rises_per_decade(tail_trace) else "bounded"
    mom_sup, tail_sup = float(mom_ratio.max()), max(tail_trace)
    quotient = None
    if mom_side == tail_side == "bounded" and mom_sup > 0 and tail_sup > 0:
        quotient = mom_sup / tail_sup
    lo, hi = corpus.LEMMOM_QUOTIENT_BAND
    rows = [["moment", k, 1.0 / k, r] for k, r in zip(ladder, mom_trace)]
    rows += [["tail", k + 1, 1.0 - u, r] for k, (u, r) in enumerate(zip(us, tail_trace))]
    verdicts = {
        "moment_side": mom_side, "tail_side": tail_side,
        "moment_sup": mom_sup, "tail_sup": tail_sup,
        "agree": mom_side == tail_side, "quotient": quotient,
        "quotient_in_band": None if quotient is None else bool(lo <= quotient <= hi),
        "moment_rule": "trends_up", "tail_rule": "rises_per_decade",
    }
    return _report(cfg, ["side", "index", "point", "ratio"], rows, verdicts,
                   {"moment": mom_trace, "tail": tail_trace})


def run_logcond(cfg):
    mu = measure_from_config(cfg.measure)
    n_max = max(cfg.sizes) if cfg.sizes else DEFAULT_LOG_N
    car = carleson_ratio(mu, 1.0, 1.0)
    ladder = [2 ** k for k in range(int(math.log2(n_max)) + 1)]
    failures, trace = [], []
    for k in ladder:
        try:
            trace.append(k * log_moment(mu, k))
        except DivergenceError as exc:
            failures.append({"n": k, "error": str(exc)})
            trace.append(math.inf)
    mom_side = "diverging" if (failures or trends_up(trace)) else "bounded"
    rows = [["log_moment", k, v] for k, v in zip(ladder, trace)]
    rows += [["log_carleson", b, r] for b, r in zip(car.grid, car.trace)]
    verdicts = {"log_carleson": car.verdict, "log_carleson_sup": car.sup_ratio,
                "log_moment_side": mom_side, "log_moment_sup": max(trace),
                "agree": car.verdict == mom_side,
                "moment_rule": "trends_up", "tail_rule": "rises_per_decade"}
    return _report(cfg, ["side", "point", "ratio"], rows, verdicts,
                   {"log_moment": trace, "log_carleson": car.trace}, failures)


RUNNERS = {
    "thdec": run_thdec, "lemmom": run_lemmom, "thhlao": run_thhlao,
    "logcond": run_logcond, "widom": run_widom, "admissible": run_admissible,
    "moments": run_moments, "carleson": run_carleson, "apply": run_apply,
}


def run(cfg):
    """Dispatch on ``cfg.experiment``."""
    try:
        return RUNNERS[cfg.experiment](cfg)
    except ParameterError as exc:
        raise HypothesisRefusal("bad_parameter", str(exc)) from None
