"""Variable-bandwidth local polynomial regression.

Thin re-export of the compiled extension module.
"""

from ._laser import (  # noqa: F401
    CvReport,
    FitResult,
    add_noise,
    baseline_fixed_bandwidth,
    cv_lambda,
    default_lambda,
    effective_noise,
    estimate_sigma,
    fit,
    fit_at,
    generate,
    predict_at,
    q_form,
    rmse,
    scale_to_snr,
    t_stat,
)

__all__ = [
    "CvReport",
    "FitResult",
    "add_noise",
    "baseline_fixed_bandwidth",
    "cv_lambda",
    "default_lambda",
    "effective_noise",
    "estimate_sigma",
    "fit",
    "fit_at",
    "generate",
    "predict_at",
    "q_form",
    "rmse",
    "scale_to_snr",
    "t_stat",
]
