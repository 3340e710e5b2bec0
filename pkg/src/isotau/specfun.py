"""Complex double-precision special functions.

Everything here works on Python ``complex`` scalars and uses principal
branches with the cut along the negative real axis.  The functions are
the building blocks for the Gamma-ratio, Barnes and dilogarithm
expressions used by the Painleve modules.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import BranchCutError, NonConvergenceError, ParameterError, PoleError

__all__ = [
    "EULER_GAMMA",
    "ZETA_PRIME_M1",
    "log_gamma",
    "gamma",
    "digamma",
    "log_barnes_g",
    "barnes_g",
    "log_g_hat",
    "g_hat",
    "dilog",
    "hyp2f1",
    "parse_complex",
]

EULER_GAMMA = 0.57721566490153286060651209008240243
ZETA_PRIME_M1 = -0.16542114370045092921391966024278064
LOG_2PI = math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * LOG_2PI

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _as_complex(z) -> complex:
    return complex(z)


def _is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    if z.imag != 0.0 and abs(z.imag) > tol:
        return False
    x = z.real
    if x > 0.5:
        return False
    return abs(x - round(x)) <= tol


def _sinpi(z: complex) -> complex:
    # Reduce the real part first so that sin(pi z) keeps full relative
    # accuracy near the integers.
    n = math.floor(z.real + 0.5)
    w = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * w)
    return -s if n % 2 else s


def _lanczos_log_gamma(z: complex) -> complex:
    z = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z) -> complex:
    """Principal branch of ln Gamma(z).

    Analytic on the plane cut along (-inf, 0]; real for positive real z.
    """
    z = _as_complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParameterError(f"non-finite argument {z!r}")
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at {z!r}")
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    # Reflection with the branch correction that keeps the result
    # continuous across Im z = 0 for Re z > 0 and on the cut elsewhere.
    shift = math.copysign(2.0 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
    return complex(LOG_PI, shift) - cmath.log(_sinpi(z)) - _lanczos_log_gamma(1.0 - z)


def gamma(z) -> complex:
    """Gamma(z) as exp(log_gamma(z))."""
    return cmath.exp(log_gamma(z))


def _akiyama_tanigawa(n: int) -> tuple:
    """B_0..B_n as floats (B_1 = -1/2), via the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # Akiyama-Tanigawa yields B_1 = +1/2.
    if n >= 1:
        out[1] = -out[1]
    return tuple(float(b) for b in out)


# built once at import so that the first special-function call is as cheap
# as the later ones
_BERNOULLI = _akiyama_tanigawa(60)


def _bernoulli_numbers(n: int) -> tuple:
    if n <= 60:
        return _BERNOULLI[: n + 1]
    return _akiyama_tanigawa(n)


def digamma(z) -> complex:
    """psi(z) = d/dz log_gamma(z)."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at {z!r}")
    if z.real < 0.5:
        # psi(1 - z) - psi(z) = pi cot(pi z)
        return digamma(1.0 - z) - math.pi * cmath.cos(math.pi * z) / _sinpi(z)
    acc = 0j
    while abs(z) < 12.0 or z.real < 8.0:
        acc -= 1.0 / z
        z += 1.0
    b = _bernoulli_numbers(20)
    inv2 = 1.0 / (z * z)
    series = 0j
    p = inv2
    for k in range(1, 10):
        series += b[2 * k] / (2 * k) * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - series


def _log_barnes_asymptotic(z: complex) -> complex:
    """ln G(1 + z) for large |z| in the right half plane."""
    lz = cmath.log(z)
    z2 = z * z
    val = 0.5 * z2 * lz - 0.75 * z2 + 0.5 * z * LOG_2PI - lz / 12.0 + ZETA_PRIME_M1
    b = _bernoulli_numbers(24)
    inv2 = 1.0 / z2
    p = inv2
    for k in range(1, 11):
        val += b[2 * k + 2] / (4.0 * k * (k + 1)) * p
        p *= inv2
    return val


def log_barnes_g(z) -> complex:
    """Principal branch of ln G(z), the Barnes G-function with G(1) = 1.

    The branch is the one obtained from the recurrence
    ln G(z + 1) = ln G(z) + log_gamma(z), continuous off (-inf, 0].
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Barnes G vanishes at {z!r}")
    w = z - 1.0
    n = 0
    if w.real < 12.0:
        n = int(math.ceil(12.0 - w.real))
    val = _log_barnes_asymptotic(w + n)
    for j in range(1, n + 1):
        val -= log_gamma(w + j)
    return val


def barnes_g(z) -> complex:
    """G(z); returns 0 at the zeros z = 0, -1, -2, ..."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    return cmath.exp(log_barnes_g(z))


def log_g_hat(z) -> complex:
    """ln G(1 + z) - ln G(1 - z) with the branches of log_barnes_g."""
    z = _as_complex(z)
    try:
        return log_barnes_g(1.0 + z) - log_barnes_g(1.0 - z)
    except PoleError as exc:
        raise PoleError(f"g_hat is singular at {z!r}") from exc


def g_hat(z) -> complex:
    """G(1 + z) / G(1 - z)."""
    return cmath.exp(log_g_hat(z))


def _dilog_bernoulli(z: complex) -> complex:
    # Li2(z) = sum_n B_n w^(n+1)/(n+1)!, w = -ln(1 - z), |w| < 2 pi.
    w = -cmath.log(1.0 - z)
    b = _bernoulli_numbers(60)
    total = 0j
    p = w
    fact = 1.0
    for n in range(0, 60):
        fact *= n + 1
        if n < 2 or n % 2 == 0:
            term = b[n] * p / fact
            total += term
            if n > 4 and abs(term) <= 1e-17 * abs(total):
                break
        p *= w
    return total


def dilog(z) -> complex:
    """Principal branch of the dilogarithm Li2(z), cut along [1, inf)."""
    z = _as_complex(z)
    if z.imag == 0.0 and z.real > 1.0:
        raise BranchCutError(f"dilog: {z!r} lies on the cut [1, inf)")
    if z == 0:
        return 0j
    if z == 1:
        return complex(math.pi ** 2 / 6.0)
    if abs(z) > 1.0:
        lmz = cmath.log(-z)
        return -dilog(1.0 / z) - math.pi ** 2 / 6.0 - 0.5 * lmz * lmz
    if z.real > 0.5:
        return -_dilog_bernoulli(1.0 - z) + math.pi ** 2 / 6.0 - cmath.log(z) * cmath.log(1.0 - z)
    return _dilog_bernoulli(z)


def _hyp2f1_series(a, b, c, z, maxiter=20000):
    term = 1.0 + 0j
    total = 1.0 + 0j
    for n in range(maxiter):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        if term == 0 or (abs(term) < 1e-17 * abs(total) and n > 2):
            return total
    raise NonConvergenceError(f"2F1 series did not converge at z={z!r}")


def _rgamma_ratio(num, den) -> complex:
    """prod Gamma(num) / prod Gamma(den), zero if a denominator is a pole."""
    for d in den:
        if _is_nonpositive_integer(complex(d)):
            return 0j
    s = 0j
    for x in num:
        s += log_gamma(x)
    for d in den:
        s -= log_gamma(d)
    return cmath.exp(s)


def _near_integer(x: complex, tol: float = 1e-9) -> bool:
    return abs(x.imag) < tol and abs(x.real - round(x.real)) < tol


def hyp2f1(a, b, c, z) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z), principal branch.

    Direct summation inside |z| <= 0.75, otherwise one of the linear
    transformations z/(z-1), 1-z or 1/z brings the argument into the
    disc of fast convergence.
    """
    a, b, c, z = (complex(v) for v in (a, b, c, z))
    if _is_nonpositive_integer(c):
        raise ParameterError(f"2F1 undefined for c = {c!r}")
    if z == 0:
        return 1.0 + 0j
    if abs(z) <= 0.75:
        return _hyp2f1_series(a, b, c, z)
    w = z / (z - 1.0)
    if abs(w) <= 0.75:
        return (1.0 - z) ** (-a) * _hyp2f1_series(a, c - b, c, w)
    if abs(1.0 - z) <= 0.75:
        d = c - a - b
        if _near_integer(d):
            raise ParameterError("2F1: c - a - b is an integer, 1 - z transform unavailable")
        y = 1.0 - z
        t1 = _rgamma_ratio((c, d), (c - a, c - b)) * _hyp2f1_series(a, b, 1.0 - d, y)
        t2 = _rgamma_ratio((c, -d), (a, b)) * y ** d * _hyp2f1_series(c - a, c - b, d + 1.0, y)
        return t1 + t2
    if abs(z) >= 1.0 / 0.75:
        if z.imag == 0.0 and z.real > 1.0:
            raise BranchCutError(f"2F1: {z!r} on the cut [1, inf)")
        d = b - a
        if _near_integer(d):
            raise ParameterError("2F1: b - a is an integer, 1/z transform unavailable")
        y = 1.0 / z
        mz = -z
        t1 = _rgamma_ratio((c, d), (b, c - a)) * mz ** (-a) * _hyp2f1_series(a, a - c + 1.0, 1.0 - d, y)
        t2 = _rgamma_ratio((c, -d), (a, c - b)) * mz ** (-b) * _hyp2f1_series(b, b - c + 1.0, 1.0 + d, y)
        return t1 + t2
    # The lens around exp(+-i pi/3) is not covered by any of the maps
    # above; continue the solution of the hypergeometric equation along
    # the ray from a point inside the disc.
    return _hyp2f1_continue(a, b, c, z)


def _hyp2f1_continue(a, b, c, z):
    r0 = 0.6
    w = r0 * z / abs(z)
    f = _hyp2f1_series(a, b, c, w)
    fp = a * b / c * _hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, w)
    ab = a * b
    q1 = -(a + b + 1.0)
    for _ in range(10000):
        remaining = z - w
        rho = min(abs(w), abs(1.0 - w))
        if abs(remaining) <= 0.5 * rho:
            h = remaining
        else:
            h = remaining * (0.5 * rho / abs(remaining))
        p0 = w * (1.0 - w)
        p1 = 1.0 - 2.0 * w
        q0 = c + q1 * w
        coef = [f, fp]
        val = f + fp * h
        der = fp
        hn = h
        for n in range(0, 400):
            nxt = -((p1 * n * (n + 1) + q0 * (n + 1)) * coef[n + 1]
                    + (-n * (n - 1) + q1 * n - ab) * coef[n]) / (p0 * (n + 2) * (n + 1))
            coef.append(nxt)
            der += (n + 2) * nxt * hn
            hn *= h
            term = nxt * hn
            val += term
            if abs(term) < 1e-17 * abs(val) and n > 4:
                break
        else:
            raise NonConvergenceError("2F1 continuation series did not converge")
        w = w + h
        f, fp = val, der
        if h == remaining:
            return f
    raise NonConvergenceError(f"2F1: continuation to {z!r} did not terminate")


def parse_complex(text) -> complex:
    """Parse '0.3+0.2i', '0.3+0.2j', '[0.3, 0.2]' or a plain number."""
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise ValueError(f"complex pair must have two entries, got {text!r}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("I", "j").replace("i", "j")
    return complex(s)
