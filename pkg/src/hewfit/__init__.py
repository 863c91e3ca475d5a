"""Harris extended Weibull fitting toolkit."""

__version__ = "0.1.0"

from ._kernels import BACKEND_NAME as kernel_backend
from .distributions import (
    ExponentiatedWeibull,
    HewParams,
    TruncatedWeibull,
    Weibull,
    hew_cdf,
    hew_log_pdf,
    hew_pdf,
    hew_quantile,
    hew_sf,
)
from .estimation import FitConfig, FitResult, optimize
from .sampling import Sample, sample_hew

__all__ = [
    "ExponentiatedWeibull", "FitConfig", "FitResult", "HewParams", "Sample",
    "TruncatedWeibull", "Weibull", "hew_cdf", "hew_log_pdf", "hew_pdf",
    "hew_quantile", "hew_sf", "kernel_backend", "optimize", "sample_hew",
]
