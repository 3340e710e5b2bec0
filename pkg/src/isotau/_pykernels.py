"""Pure-Python adaptive Dormand-Prince 8(5,3) integrator.

This is the reference implementation of the hot loops; the compiled
module ``_kernels`` mirrors it line by line.  Two right-hand sides are
built in:

``SYS_SCHLESINGER``
    state ``[A0 (4), A1 (4), Q]`` with logit time ``x = ln(t/(1-t))``,
    parameters ``A_inf`` (4 entries, row-major 2x2).
``SYS_PII``
    state ``[u, v, Q, u_s1, v_s1, u_s2, v_s2, R]`` with ``v = 2 u_t``,
    ``Q`` the running integral of the Hamiltonian and ``R`` that of u^2.
"""

from __future__ import annotations

import math

import numpy as np

from . import _tableau as tb

SYS_SCHLESINGER = 0
SYS_PII = 1

STATUS_OK = 0
STATUS_STEP_COLLAPSE = 1
STATUS_MAX_STEPS = 2
STATUS_NONFINITE = 3

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_EXPONENT = -1.0 / (tb.ORDER + 1)

IMPLEMENTATION = "python"


def _rhs_schlesinger(x, y, p):
    if x >= 0.0:
        e = math.exp(-x)
        t = 1.0 / (1.0 + e)
        omt = e / (1.0 + e)
    else:
        e = math.exp(x)
        t = e / (1.0 + e)
        omt = 1.0 / (1.0 + e)
    a0, b0, c0, d0 = y[0], y[1], y[2], y[3]
    a1, b1, c1, d1 = y[4], y[5], y[6], y[7]
    at = -p[0] - a0 - a1
    bt = -p[1] - b0 - b1
    ct = -p[2] - c0 - c1
    dt = -p[3] - d0 - d1
    # [At, A0]
    k00 = bt * c0 - b0 * ct
    k01 = at * b0 + bt * d0 - a0 * bt - b0 * dt
    k10 = ct * a0 + dt * c0 - c0 * at - d0 * ct
    # [At, A1]
    k20 = bt * c1 - b1 * ct
    k21 = at * b1 + bt * d1 - a1 * bt - b1 * dt
    k30 = ct * a1 + dt * c1 - c1 * at - d1 * ct
    tr0 = at * a0 + bt * c0 + ct * b0 + dt * d0
    tr1 = at * a1 + bt * c1 + ct * b1 + dt * d1
    return [
        omt * k00, omt * k01, omt * k10, -omt * k00,
        -t * k20, -t * k21, -t * k30, t * k20,
        omt * tr0 - t * tr1,
    ]


def _rhs_pii(t, y, p):
    u, v = y[0], y[1]
    u2 = u * u
    w = 2.0 * (6.0 * u2 + t)
    return [
        0.5 * v,
        4.0 * u2 * u + 2.0 * t * u,
        0.25 * v * v - t * u2 - u2 * u2,
        0.5 * y[4],
        w * y[3],
        0.5 * y[6],
        w * y[5],
        u2,
    ]


_RHS = {SYS_SCHLESINGER: _rhs_schlesinger, SYS_PII: _rhs_pii}
_DIM = {SYS_SCHLESINGER: 9, SYS_PII: 8}
# Components that enter the error norm.  The running integrals Q and R are
# pure quadratures that ride along on the step sequence chosen for the
# state; near a movable pole the Hamiltonian is a cancellation of O(u^4)
# terms and letting it steer the step size stalls the integration.
_CONTROLLED = {
    SYS_SCHLESINGER: (0, 1, 2, 3, 4, 5, 6, 7),
    SYS_PII: (0, 1, 3, 4, 5, 6),
}


def _rms(vec, scale):
    s = 0.0
    for a, b in zip(vec, scale):
        r = abs(a) / b
        s += r * r
    return math.sqrt(s / len(vec))


def _initial_step(fun, x0, y0, f0, p, direction, rtol, atol):
    scale = [atol + abs(v) * rtol for v in y0]
    d0 = _rms(y0, scale)
    d1 = _rms(f0, scale)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    y1 = [a + h0 * direction * b for a, b in zip(y0, f0)]
    f1 = fun(x0 + h0 * direction, y1, p)
    d2 = _rms([a - b for a, b in zip(f1, f0)], scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / (tb.ORDER + 1))
    return min(100.0 * h0, h1)


def integrate(system, y0, params, x0, x1, rtol, atol, h0=0.0,
              max_steps=2_000_000, min_step_rel=1e-13):
    """Integrate one of the built-in systems from x0 to x1.

    Returns ``(xs, ys, status, nfev, nrejected)`` where ``xs`` and ``ys``
    hold every accepted step including the initial point.
    """
    fun = _RHS[system]
    y = [complex(v) for v in y0]
    if len(y) != _DIM[system]:
        raise ValueError(f"state for system {system} must have {_DIM[system]} entries")
    p = [complex(v) for v in params]
    n = len(y)
    ctl = _CONTROLLED[system]
    nctl = len(ctl)
    direction = 1.0 if x1 >= x0 else -1.0
    x = float(x0)
    f = fun(x, y, p)
    nfev = 1
    if h0 <= 0.0:
        h_abs = _initial_step(fun, x, y, f, p, direction, rtol, atol)
        nfev += 1
    else:
        h_abs = abs(h0)
    xs = [x]
    ys = [list(y)]
    nrej = 0
    status = STATUS_OK
    A, B, C, E3, E5 = tb.A, tb.B, tb.C, tb.E3, tb.E5
    ns = tb.N_STAGES
    span = abs(x1 - x0)
    steps = 0
    while direction * (x1 - x) > 0.0:
        if steps >= max_steps:
            status = STATUS_MAX_STEPS
            break
        min_step = min_step_rel * max(abs(x), span, 1.0)
        if h_abs < min_step:
            status = STATUS_STEP_COLLAPSE
            break
        rejected_once = False
        while True:
            if h_abs < min_step:
                status = STATUS_STEP_COLLAPSE
                break
            h = h_abs * direction
            x_new = x + h
            if direction * (x_new - x1) > 0.0:
                x_new = x1
                h = x_new - x
                h_abs = abs(h)
            K = [f]
            for s in range(1, ns):
                row = A[s]
                ys_ = list(y)
                for j in range(s):
                    a = row[j]
                    if a != 0.0:
                        kj = K[j]
                        ha = h * a
                        for i in range(n):
                            ys_[i] += ha * kj[i]
                K.append(fun(x + C[s] * h, ys_, p))
            y_new = list(y)
            for j in range(ns):
                bj = B[j]
                if bj != 0.0:
                    kj = K[j]
                    hb = h * bj
                    for i in range(n):
                        y_new[i] += hb * kj[i]
            f_new = fun(x_new, y_new, p)
            nfev += ns
            K.append(f_new)
            finite = all(math.isfinite(v.real) and math.isfinite(v.imag) for v in y_new)
            if finite:
                e5n = 0.0
                e3n = 0.0
                for i in ctl:
                    sc = atol + max(abs(y[i]), abs(y_new[i])) * rtol
                    e5 = 0j
                    e3 = 0j
                    for j in range(ns + 1):
                        kv = K[j][i]
                        e5 += E5[j] * kv
                        e3 += E3[j] * kv
                    r5 = abs(e5) / sc
                    r3 = abs(e3) / sc
                    e5n += r5 * r5
                    e3n += r3 * r3
                if e5n == 0.0 and e3n == 0.0:
                    err = 0.0
                else:
                    err = h_abs * e5n / math.sqrt((e5n + 0.01 * e3n) * nctl)
            else:
                err = math.inf
            if err < 1.0:
                if err == 0.0:
                    factor = _MAX_FACTOR
                else:
                    factor = min(_MAX_FACTOR, _SAFETY * err ** _EXPONENT)
                if rejected_once:
                    factor = min(1.0, factor)
                h_abs *= factor
                break
            if not finite:
                factor = _MIN_FACTOR
            else:
                factor = max(_MIN_FACTOR, _SAFETY * err ** _EXPONENT)
            h_abs *= factor
            rejected_once = True
            nrej += 1
        if status != STATUS_OK:
            break
        x = x_new
        y = y_new
        f = f_new
        xs.append(x)
        ys.append(list(y))
        steps += 1
    return (np.asarray(xs, dtype=float), np.asarray(ys, dtype=complex), status, nfev, nrej)
