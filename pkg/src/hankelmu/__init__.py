"""Moment Hankel operators, Carleson tests and mean Lipschitz diagnostics."""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .weights import Weight, admissibility, eval_weight, dini_ratio, b1_ratio
from .measures import (Measure, moment, moments_upto, tail, log_moment, carleson_ratio,
                       measure_from_config)
from .analytic import (TaylorFunction, evaluate, circle_means, block_norms,
                       lambda_membership, decreasing_coef_test, pavlovic_ratio)
from .hankel import (HankelOp, apply_naive, apply_fast, hankel_coefficients_via_fubini,
                     i_mu_eval, top_singular_value)

__all__ = [
    "BACKEND", "Weight", "admissibility", "eval_weight", "dini_ratio", "b1_ratio",
    "Measure", "moment", "moments_upto", "tail", "log_moment", "carleson_ratio",
    "measure_from_config", "TaylorFunction", "evaluate", "circle_means", "block_norms",
    "lambda_membership", "decreasing_coef_test", "pavlovic_ratio", "HankelOp",
    "apply_naive", "apply_fast", "hankel_coefficients_via_fubini", "i_mu_eval",
    "top_singular_value",
]
