# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive Dormand-Prince 8(5,3) integrator.

Same algorithm, tableau and step-size controller as ``_pykernels``; the
two must stay in lock step so that the fallback reproduces the compiled
results to rounding.
"""

from libc.math cimport exp, sqrt, fabs, pow, isfinite, INFINITY
import numpy as np
cimport numpy as cnp

from . import _tableau as tb

cnp.import_array()

ctypedef double complex cplx

cdef extern from "complex.h" nogil:
    double cabs(double complex z)
    double creal(double complex z)
    double cimag(double complex z)

cdef enum:
    MAXDIM = 9
    NS = 12

SYS_SCHLESINGER = 0
SYS_PII = 1

STATUS_OK = 0
STATUS_STEP_COLLAPSE = 1
STATUS_MAX_STEPS = 2
STATUS_NONFINITE = 3

IMPLEMENTATION = "cython"

cdef double _A[NS][NS]
cdef double _B[NS]
cdef double _C[NS]
cdef double _E3[NS + 1]
cdef double _E5[NS + 1]

cdef int _i, _j
for _i in range(NS):
    _B[_i] = tb.B[_i]
    _C[_i] = tb.C[_i]
    for _j in range(NS):
        _A[_i][_j] = tb.A[_i][_j]
for _i in range(NS + 1):
    _E3[_i] = tb.E3[_i]
    _E5[_i] = tb.E5[_i]

cdef double _SAFETY = 0.9
cdef double _MIN_FACTOR = 0.2
cdef double _MAX_FACTOR = 10.0
cdef double _EXPONENT = -1.0 / (tb.ORDER + 1)


cdef inline void _rhs_schlesinger(double x, cplx* y, cplx* p, cplx* out) nogil:
    cdef double e, t, omt
    cdef cplx a0, b0, c0, d0, a1, b1, c1, d1, at, bt, ct, dt
    cdef cplx k00, k01, k10, k20, k21, k30, tr0, tr1
    if x >= 0.0:
        e = exp(-x)
        t = 1.0 / (1.0 + e)
        omt = e / (1.0 + e)
    else:
        e = exp(x)
        t = e / (1.0 + e)
        omt = 1.0 / (1.0 + e)
    a0 = y[0]; b0 = y[1]; c0 = y[2]; d0 = y[3]
    a1 = y[4]; b1 = y[5]; c1 = y[6]; d1 = y[7]
    at = -p[0] - a0 - a1
    bt = -p[1] - b0 - b1
    ct = -p[2] - c0 - c1
    dt = -p[3] - d0 - d1
    k00 = bt * c0 - b0 * ct
    k01 = at * b0 + bt * d0 - a0 * bt - b0 * dt
    k10 = ct * a0 + dt * c0 - c0 * at - d0 * ct
    k20 = bt * c1 - b1 * ct
    k21 = at * b1 + bt * d1 - a1 * bt - b1 * dt
    k30 = ct * a1 + dt * c1 - c1 * at - d1 * ct
    tr0 = at * a0 + bt * c0 + ct * b0 + dt * d0
    tr1 = at * a1 + bt * c1 + ct * b1 + dt * d1
    out[0] = omt * k00
    out[1] = omt * k01
    out[2] = omt * k10
    out[3] = -omt * k00
    out[4] = -t * k20
    out[5] = -t * k21
    out[6] = -t * k30
    out[7] = t * k20
    out[8] = omt * tr0 - t * tr1


cdef inline void _rhs_pii(double t, cplx* y, cplx* p, cplx* out) nogil:
    cdef cplx u = y[0]
    cdef cplx v = y[1]
    cdef cplx u2 = u * u
    cdef cplx w = 2.0 * (6.0 * u2 + t)
    out[0] = 0.5 * v
    out[1] = 4.0 * u2 * u + 2.0 * t * u
    out[2] = 0.25 * v * v - t * u2 - u2 * u2
    out[3] = 0.5 * y[4]
    out[4] = w * y[3]
    out[5] = 0.5 * y[6]
    out[6] = w * y[5]
    out[7] = u2


cdef inline void _rhs(int system, double x, cplx* y, cplx* p, cplx* out) nogil:
    if system == 0:
        _rhs_schlesinger(x, y, p, out)
    else:
        _rhs_pii(x, y, p, out)


cdef double _rms(cplx* v, double* scale, int n) nogil:
    cdef double s = 0.0, r
    cdef int i
    for i in range(n):
        r = cabs(v[i]) / scale[i]
        s += r * r
    return sqrt(s / n)


def integrate(int system, y0, params, double x0, double x1, double rtol,
              double atol, double h0=0.0, long max_steps=2000000,
              double min_step_rel=1e-13):
    """Integrate one of the built-in systems from x0 to x1.

    Returns ``(xs, ys, status, nfev, nrejected)`` like the Python kernel.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y0a = np.ascontiguousarray(y0, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] pa = np.zeros(4, dtype=np.complex128)
    cdef int n = y0a.shape[0]
    cdef int i, j, s
    cdef int nctl = n
    cdef int skip_a = -1, skip_b = -1
    if n > MAXDIM:
        raise ValueError("state dimension too large")
    if system == 0:
        if n != 9:
            raise ValueError("Schlesinger state must have 9 entries")
        skip_a = 8
        nctl = 8
    elif system == 1:
        if n != 8:
            raise ValueError("Painleve II state must have 8 entries")
        # Q and R are quadratures kept out of the error norm
        skip_a = 2
        skip_b = 7
        nctl = 6
    else:
        raise ValueError("unknown system")
    pp = np.ascontiguousarray(params, dtype=np.complex128)
    for i in range(min(4, pp.shape[0])):
        pa[i] = pp[i]

    cdef cplx y[MAXDIM]
    cdef cplx ynew[MAXDIM]
    cdef cplx ytmp[MAXDIM]
    cdef cplx K[NS + 1][MAXDIM]
    cdef cplx p[4]
    cdef double scale[MAXDIM]
    cdef double d0, d1, d2, h1, hh, x, x_new, h, h_abs, err, e5n, e3n, sc, r5, r3
    cdef double factor, direction, min_step, span, ha
    cdef cplx e5, e3, kv
    cdef bint rejected_once, finite
    cdef long steps = 0
    cdef long nfev = 0
    cdef long nrej = 0
    cdef int status = 0

    for i in range(4):
        p[i] = pa[i]
    for i in range(n):
        y[i] = y0a[i]

    direction = 1.0 if x1 >= x0 else -1.0
    x = x0
    _rhs(system, x, y, p, K[0])
    nfev = 1

    if h0 <= 0.0:
        for i in range(n):
            scale[i] = atol + cabs(y[i]) * rtol
        d0 = _rms(y, scale, n)
        d1 = _rms(K[0], scale, n)
        if d0 < 1e-5 or d1 < 1e-5:
            hh = 1e-6
        else:
            hh = 0.01 * d0 / d1
        for i in range(n):
            ytmp[i] = y[i] + hh * direction * K[0][i]
        _rhs(system, x + hh * direction, ytmp, p, K[1])
        nfev += 1
        for i in range(n):
            K[2][i] = K[1][i] - K[0][i]
        d2 = _rms(K[2], scale, n) / hh
        if d1 <= 1e-15 and d2 <= 1e-15:
            h1 = max(1e-6, hh * 1e-3)
        else:
            h1 = pow(0.01 / max(d1, d2), 1.0 / (tb.ORDER + 1))
        h_abs = min(100.0 * hh, h1)
    else:
        h_abs = fabs(h0)

    xs = [x]
    rows = [y0a.copy()]
    span = fabs(x1 - x0)

    while direction * (x1 - x) > 0.0:
        if steps >= max_steps:
            status = 2
            break
        min_step = min_step_rel * max(max(fabs(x), span), 1.0)
        if h_abs < min_step:
            status = 1
            break
        rejected_once = False
        while True:
            if h_abs < min_step:
                status = 1
                break
            h = h_abs * direction
            x_new = x + h
            if direction * (x_new - x1) > 0.0:
                x_new = x1
                h = x_new - x
                h_abs = fabs(h)
            for s in range(1, NS):
                for i in range(n):
                    ytmp[i] = y[i]
                for j in range(s):
                    ha = h * _A[s][j]
                    if ha != 0.0:
                        for i in range(n):
                            ytmp[i] = ytmp[i] + ha * K[j][i]
                _rhs(system, x + _C[s] * h, ytmp, p, K[s])
            for i in range(n):
                ynew[i] = y[i]
            for j in range(NS):
                ha = h * _B[j]
                if ha != 0.0:
                    for i in range(n):
                        ynew[i] = ynew[i] + ha * K[j][i]
            _rhs(system, x_new, ynew, p, K[NS])
            nfev += NS
            finite = True
            for i in range(n):
                if not (isfinite(creal(ynew[i])) and isfinite(cimag(ynew[i]))):
                    finite = False
            if finite:
                e5n = 0.0
                e3n = 0.0
                for i in range(n):
                    if i == skip_a or i == skip_b:
                        continue
                    sc = atol + max(cabs(y[i]), cabs(ynew[i])) * rtol
                    e5 = 0.0
                    e3 = 0.0
                    for j in range(NS + 1):
                        kv = K[j][i]
                        e5 = e5 + _E5[j] * kv
                        e3 = e3 + _E3[j] * kv
                    r5 = cabs(e5) / sc
                    r3 = cabs(e3) / sc
                    e5n += r5 * r5
                    e3n += r3 * r3
                if e5n == 0.0 and e3n == 0.0:
                    err = 0.0
                else:
                    err = h_abs * e5n / sqrt((e5n + 0.01 * e3n) * nctl)
            else:
                err = INFINITY
            if err < 1.0:
                if err == 0.0:
                    factor = _MAX_FACTOR
                else:
                    factor = min(_MAX_FACTOR, _SAFETY * pow(err, _EXPONENT))
                if rejected_once:
                    factor = min(1.0, factor)
                h_abs *= factor
                break
            if not finite:
                factor = _MIN_FACTOR
            else:
                factor = max(_MIN_FACTOR, _SAFETY * pow(err, _EXPONENT))
            h_abs *= factor
            rejected_once = True
            nrej += 1
        if status != 0:
            break
        x = x_new
        for i in range(n):
            y[i] = ynew[i]
            K[0][i] = K[NS][i]
        xs.append(x)
        row = np.empty(n, dtype=np.complex128)
        for i in range(n):
            row[i] = y[i]
        rows.append(row)
        steps += 1

    return (np.asarray(xs, dtype=float), np.vstack(rows), status, nfev, nrej)
