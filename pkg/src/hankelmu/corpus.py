"""Frozen regression corpus.

Everything an experiment compares against lives here: the generators,
the (p, omega) pairs, the test measures with their expected verdicts and
the constants frozen after the first oracle runs.  ``MANIFEST_HASH`` is
recorded in every report so a change to any of it is visible.
"""
import hashlib
import json

from .analytic import BlockIndicator, LogOverN, OmegaExtremal, OneOverN, PowerDecay
from .trends import HEURISTICS
from .weights import Weight

GENERATOR_NAMES = ("one_over_n", "omega_extremal", "power_quarter", "log_over_n", "block_indicator")


def corpus_generators(weight, p):
    """The five corpus generators for a given ``(p, omega)``, in manifest order."""
    return [
        ("one_over_n", OneOverN()),
        ("omega_extremal", OmegaExtremal(weight, p)),
        ("power_quarter", PowerDecay(0.25)),
        ("log_over_n", LogOverN()),
        ("block_indicator", BlockIndicator(weight, p)),
    ]


PAIRS = (
    (2.0, {"family": "power", "alpha": 0.5}),
    (2.0, {"family": "power_log", "alpha": 0.5, "beta": 1.0}),
    (4.0, {"family": "power", "alpha": 0.5}),
    (4.0 / 3.0, {"family": "power", "alpha": 0.75}),
)


def corpus_pairs():
    return [(p, Weight(**{k: v for k, v in w.items()})) for p, w in PAIRS]


# Expected coefficient/block verdicts at J = 14, keyed by pair index then
# generator.  ``bounded`` entries follow from the decreasing-coefficient
# criterion; ``diverging`` ones are the frozen counterexamples.
EXPECTED_THDEC = (
    {"one_over_n": "agree-bounded", "omega_extremal": "agree-bounded",
     "power_quarter": "agree-diverging", "log_over_n": "agree-diverging",
     "block_indicator": "agree-bounded"},
    {"one_over_n": "agree-bounded", "omega_extremal": "agree-bounded",
     "power_quarter": "agree-diverging", "log_over_n": "agree-bounded",
     "block_indicator": "agree-bounded"},
    {"one_over_n": "agree-diverging", "omega_extremal": "agree-bounded",
     "power_quarter": "agree-diverging", "log_over_n": "agree-diverging",
     "block_indicator": "agree-bounded"},
    {"one_over_n": "agree-bounded", "omega_extremal": "agree-bounded",
     "power_quarter": "agree-diverging", "log_over_n": "agree-diverging",
     "block_indicator": "agree-bounded"},
)

# Two-sided block/coefficient band, measured over every corpus generator,
# every pair and N = 1..14 (observed range 0.5773 .. 1.5261, the extremes
# from omega_extremal at p = 4 and block_indicator at p = 4/3), then
# widened by 10% on each side and frozen.
PAVLOVIC_BAND = (0.52, 1.68)
PAVLOVIC_P = (4.0 / 3.0, 2.0, 4.0)

# Operator experiments run on these built-ins plus the atom at the origin.
OPERATOR_MEASURES = ("lebesgue", "power_sigma", "log_carleson_1_1", "atom_origin")
EXPECTED_CARLESON = {"lebesgue": "bounded", "power_sigma": "diverging",
                     "log_carleson_1_1": "bounded", "atom_origin": "bounded"}

# Lemma-style moment/tail comparison at (p, omega) = (2, PowerLog(1/2, 1)).
LEMMOM_PAIR = (2.0, {"family": "power_log", "alpha": 0.5, "beta": 1.0})
LEMMOM_MEASURES = (
    ("weighted_tail_half", {"tail": {"kind": "power_weight", "s": 0.5,
                                     "weight": LEMMOM_PAIR[1]}}, "bounded"),
    ("atom_origin", {"atoms": [[0.0, 1.0]]}, "bounded"),
    ("tail_quarter", {"tail": {"kind": "power", "s": 0.25}}, "diverging"),
    ("power_sigma", "power_sigma", "diverging"),
)
LEMMOM_QUOTIENT_BAND = (1.0 / 50.0, 50.0)

LOGCOND_MEASURES = (
    ("log_carleson_1_1", "log_carleson_1_1", "bounded"),
    ("lebesgue", "lebesgue", "diverging"),
    ("atom_origin", {"atoms": [[0.0, 1.0]]}, "bounded"),
)

# Desk-scale dichotomy thresholds, frozen after the first dense-oracle runs.
PLATEAU_INCREMENT = 0.01
GROWTH_FACTOR = 1.25
FLAT_RATIO = 4.0

OPERATOR_LADDER = tuple(2 ** k for k in range(4, 15))
BLOCK_LADDER = tuple(range(4, 15))


def manifest():
    """Plain-data view of the corpus, used for hashing and report provenance."""
    return {
        "generators": list(GENERATOR_NAMES),
        "pairs": [[p, w] for p, w in PAIRS],
        "expected_thdec": list(EXPECTED_THDEC),
        "pavlovic_band": list(PAVLOVIC_BAND),
        "pavlovic_p": list(PAVLOVIC_P),
        "operator_measures": list(OPERATOR_MEASURES),
        "expected_carleson": EXPECTED_CARLESON,
        "lemmom_pair": [LEMMOM_PAIR[0], LEMMOM_PAIR[1]],
        "lemmom_measures": [list(m) for m in LEMMOM_MEASURES],
        "lemmom_quotient_band": list(LEMMOM_QUOTIENT_BAND),
        "logcond_measures": [list(m) for m in LOGCOND_MEASURES],
        "plateau_increment": PLATEAU_INCREMENT,
        "growth_factor": GROWTH_FACTOR,
        "flat_ratio": FLAT_RATIO,
        "operator_ladder": list(OPERATOR_LADDER),
        "block_ladder": list(BLOCK_LADDER),
        "heuristics": HEURISTICS,
    }


def _hash():
    blob = json.dumps(manifest(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


MANIFEST_HASH = _hash()
