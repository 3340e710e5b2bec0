"""Selects the compiled ODE kernel when available.

Setting ``ISOTAU_PURE_PYTHON=1`` forces the pure-Python fallback, which
is useful for benchmarking and for checking that both agree.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("ISOTAU_PURE_PYTHON", "") not in ("", "0"):
    kernel = _pykernels
else:
    try:
        from . import _kernels as kernel
    except ImportError:  # extension not built
        kernel = _pykernels

SYS_SCHLESINGER = _pykernels.SYS_SCHLESINGER
SYS_PII = _pykernels.SYS_PII
STATUS_OK = _pykernels.STATUS_OK
STATUS_STEP_COLLAPSE = _pykernels.STATUS_STEP_COLLAPSE
STATUS_MAX_STEPS = _pykernels.STATUS_MAX_STEPS
STATUS_NONFINITE = _pykernels.STATUS_NONFINITE


def backend_name() -> str:
    return kernel.IMPLEMENTATION


def integrate(system, y0, params, x0, x1, rtol, atol, h0=0.0,
              max_steps=2_000_000, min_step_rel=1e-13, impl=None):
    """Dispatch to the selected kernel (or to ``impl`` when given)."""
    mod = impl if impl is not None else kernel
    return mod.integrate(system, y0, params, float(x0), float(x1), float(rtol),
                         float(atol), float(h0), int(max_steps), float(min_step_rel))
