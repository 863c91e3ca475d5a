"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the
pure-numpy twin is the fallback.  Set ``HEWFIT_PURE_PYTHON=1`` to force
the fallback (used by the benchmark and the backend-equivalence tests).
"""

import os

from . import pure

if os.environ.get("HEWFIT_PURE_PYTHON"):
    backend = pure
else:
    try:
        from . import _core as backend
    except ImportError:
        backend = pure

BACKEND_NAME = backend.BACKEND_NAME

hew_log_pdf = backend.hew_log_pdf
hew_log_sf = backend.hew_log_sf
hew_sf = backend.hew_sf
hew_cdf = backend.hew_cdf
hew_quantile = backend.hew_quantile
neg_log_likelihood = backend.neg_log_likelihood
ols_objective = backend.ols_objective
wls_objective = backend.wls_objective
mps_log_objective = backend.mps_log_objective
ad_objective = backend.ad_objective
cvm_objective = backend.cvm_objective
