"""Painleve II ``u_tt = 2 u^3 + t u``: Stokes data, asymptotics on the real
line, numerical trajectories and the tau-function connection constant.

Stokes data live on the cubic ``s1 - s2 + s3 + s1 s2 s3 = 0``; the pair
``(s1, s2)`` is used as coordinates with ``s3 = (s2 - s1) / (1 + s1 s2)``.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _ode
from .errors import (
    GenericityError,
    NonConvergenceError,
    PoleEncountered,
    ToleranceError,
    ValidityError,
)
from .specfun import ZETA_PRIME_M1, log_barnes_g, log_g_hat, log_gamma

__all__ = [
    "UPSILON_0",
    "UPSILON_HM",
    "PIIStokes",
    "PIIExponents",
    "PIIExpansion",
    "PIITrajectory",
    "exponents_from_stokes",
    "expansion_coefficients",
    "u_asymptotic",
    "integrate_pii",
    "log_upsilon_pii_closed",
    "upsilon_pii_closed",
    "upsilon_pii_numeric",
    "endpoint_oscillation",
    "omega_pii",
    "domega_chart_value",
    "chi_pii",
    "chi_and_periodicity",
    "hastings_mcleod_solution",
    "hastings_mcleod_check",
    "fourier_B",
    "fourier_D",
    "write_trajectory_csv",
]

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)
LOG2 = math.log(2.0)
LOG_2PI = math.log(2.0 * math.pi)
I_PI = 1j * math.pi

#: numerical constant of the closed-form connection coefficient
UPSILON_0 = cmath.exp(LOG2 / 24 + ZETA_PRIME_M1 + I_PI / 24)
#: Hastings-McLeod tau-function constant
UPSILON_HM = math.exp(LOG2 / 24 + ZETA_PRIME_M1)

MIN_ASYMPTOTIC_T = 25.0
MAX_RETRIES = 3


@dataclass(frozen=True)
class PIIStokes:
    s1: complex
    s2: complex
    s3: complex

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        res = self.cubic_residual
        if res > 1e-12 * max(1.0, abs(self.s1), abs(self.s2), abs(self.s3)) ** 3:
            raise ValueError(f"Stokes data off the cubic surface (residual {res:.3g})")

    @classmethod
    def from_s1_s2(cls, s1, s2) -> "PIIStokes":
        s1 = complex(s1)
        s2 = complex(s2)
        d = 1 + s1 * s2
        if d == 0:
            raise GenericityError("1 + s1 s2 = 0: s3 is undefined")
        return cls(s1, s2, (s2 - s1) / d)

    @classmethod
    def from_s1_s3(cls, s1, s3) -> "PIIStokes":
        s1 = complex(s1)
        s3 = complex(s3)
        d = 1 - s1 * s3
        if d == 0:
            raise GenericityError("s1 s3 = 1")
        return cls(s1, (s1 + s3) / d, s3)

    @property
    def cubic_residual(self) -> float:
        return abs(self.s1 - self.s2 + self.s3 + self.s1 * self.s2 * self.s3)


@dataclass(frozen=True)
class PIIExponents:
    mu: complex
    nu: complex
    eta: complex
    rho: complex
    sgn: int

    def murho_residuals(self) -> tuple:
        """Residuals of the exponential forms of mu and rho in terms of (nu, eta)."""
        mu, nu, eta, rho = self.mu, self.nu, self.eta, self.rho
        den = 1 - cmath.exp(I_PI * (nu - eta))
        r1 = abs(cmath.exp(-2 * I_PI * mu) * den - (1 - cmath.exp(-2 * I_PI * eta)))
        r2 = abs(cmath.exp(-I_PI * rho) * den - (1 - cmath.exp(2 * I_PI * nu)))
        return r1, r2

    def trigo_residuals(self) -> tuple:
        mu, nu, eta, rho = self.mu, self.nu, self.eta, self.rho
        r1 = abs(cmath.exp(0.5 * I_PI * (4 * mu - eta - nu)) * cmath.sin(math.pi * eta)
                 - cmath.sin(0.5 * math.pi * (eta - nu)))
        r2 = abs(cmath.exp(0.5 * I_PI * (2 * rho + eta + nu)) * cmath.sin(math.pi * nu)
                 - cmath.sin(0.5 * math.pi * (nu - eta)))
        return r1, r2


def _mu_of(s: PIIStokes) -> complex:
    w = 1 - s.s1 * s.s3
    if abs(w) < 1e-14:
        raise GenericityError("s1 s3 = 1")
    if w.real < 0 and w.imag == 0:
        raise GenericityError("1 - s1 s3 lies on the negative real axis")
    return -cmath.log(w) / (2 * I_PI)


def _sgn_of(s: PIIStokes) -> int:
    r = (1j * s.s2).real
    if s.s2.imag == 0 or r == 0:
        raise GenericityError("s2 must be non-real")
    return 1 if r > 0 else -1


def exponents_from_stokes(s: PIIStokes) -> PIIExponents:
    """mu, nu, eta, rho and the sign sigma = sgn Re(i s2)."""
    mu = _mu_of(s)
    sg = _sgn_of(s)
    nu = cmath.log(1j * sg * s.s2) / I_PI
    if s.s3 == 0:
        raise GenericityError("s3 = 0: eta is undefined")
    eta = cmath.log(-1j * sg / s.s3) / I_PI
    w = 1 + s.s1 * s.s2
    if w == 0:
        raise GenericityError("1 + s1 s2 = 0")
    rho = -cmath.log(w) / I_PI
    return PIIExponents(mu=mu, nu=nu, eta=eta, rho=rho, sgn=sg)


@dataclass(frozen=True)
class PIIExpansion:
    """Coefficients of the two-scale expansions at minus and plus infinity."""

    mu: complex
    aPlus00: complex
    aMinus00: complex
    aPlus01: complex
    aMinus01: complex
    aPlus11: complex
    aMinus11: complex
    nu: complex = complex("nan")
    sgn: int = 0
    bPlus11: complex = complex("nan")
    bMinus11: complex = complex("nan")
    b04: complex = complex("nan")
    bPlus24: complex = complex("nan")
    bMinus24: complex = complex("nan")
    bPlus17: complex = complex("nan")
    bMinus17: complex = complex("nan")
    bPlus37: complex = complex("nan")
    bMinus37: complex = complex("nan")
    b010: complex = complex("nan")
    bPlus210: complex = complex("nan")
    bMinus210: complex = complex("nan")
    bPlus410: complex = complex("nan")
    bMinus410: complex = complex("nan")

    @property
    def has_plus_side(self) -> bool:
        return self.sgn != 0

    def minus_terms(self):
        """(coefficient, power of p, power of zeta)."""
        return (
            (self.aPlus00, 1, 1), (self.aMinus00, -1, 1),
            (self.aPlus01, 1, 7), (self.aMinus01, -1, 7),
            (self.aPlus11, 3, 7), (self.aMinus11, -3, 7),
        )

    def plus_terms(self):
        """(coefficient, power of q, power of xi), without the leading root."""
        return (
            (self.bPlus11, 1, 1), (self.bMinus11, -1, 1),
            (self.b04, 0, 4), (self.bPlus24, 2, 4), (self.bMinus24, -2, 4),
            (self.bPlus17, 1, 7), (self.bMinus17, -1, 7),
            (self.bPlus37, 3, 7), (self.bMinus37, -3, 7),
            (self.b010, 0, 10), (self.bPlus210, 2, 10), (self.bMinus210, -2, 10),
            (self.bPlus410, 4, 10), (self.bMinus410, -4, 10),
        )


def _mu_over_one_minus_exp(mu):
    # mu / (1 - exp(-2 pi i mu)), continuous at mu = 0
    if abs(mu) < 1e-8:
        return 1.0 / (2 * I_PI) + mu / 2
    return mu / (1 - cmath.exp(-2 * I_PI * mu))


def _minus_amplitudes(s: PIIStokes):
    mu = _mu_of(s)
    lg1 = log_gamma(1 - mu)
    a_plus = cmath.exp((3 * mu - 1) * LOG2 - 0.75 * I_PI + 0.5 * I_PI * mu + lg1) * s.s3 / SQRT_PI
    a_minus = (-SQRT_PI * cmath.exp(-3 * mu * LOG2 - 0.5 * I_PI * mu + 0.25 * I_PI - lg1)
               * s.s1 * _mu_over_one_minus_exp(mu))
    return mu, a_plus, a_minus


def expansion_coefficients(s: PIIStokes, plus_side: bool = True) -> PIIExpansion:
    """Expansion coefficients; the plus-infinity block needs non-real s2."""
    mu, ap, am = _minus_amplitudes(s)
    kw = dict(
        mu=mu,
        aPlus00=ap, aMinus00=am,
        aPlus01=1j * ap * (-102 * mu * mu + 36 * mu - 5) / 48,
        aMinus01=1j * am * (102 * mu * mu + 36 * mu + 5) / 48,
        aPlus11=-ap ** 3 / 4, aMinus11=-am ** 3 / 4,
    )
    if plus_side:
        sg = _sgn_of(s)
        nu = cmath.log(1j * sg * s.s2) / I_PI
        w = 1 + s.s1 * s.s2
        if w == 0:
            raise GenericityError("1 + s1 s2 = 0")
        lgp = log_gamma(1 + nu)
        bp = cmath.exp((-3.5 * nu - 1.75) * LOG2 - 0.75 * I_PI - 0.5 * I_PI * nu + lgp) * w / SQRT_PI
        # 1 / Gamma(nu) = nu / Gamma(1 + nu)
        bm = -SQRT_PI * cmath.exp((3.5 * nu - 0.75) * LOG2 + 0.5 * I_PI * nu + 0.25 * I_PI - lgp) * nu / w
        r2 = 1j * SQRT2
        kw.update(
            nu=nu, sgn=sg, bPlus11=bp, bMinus11=bm,
            b04=-0.75 * nu,
            bPlus24=-r2 / 2 * bp ** 2, bMinus24=-r2 / 2 * bm ** 2,
            bPlus17=bp * r2 / 6 * (-51 / 8 * nu ** 2 - 1.5 * nu - 17 / 16),
            bMinus17=bm * r2 / 6 * (51 / 8 * nu ** 2 - 1.5 * nu + 17 / 16),
            bPlus37=-bp ** 3 / 2, bMinus37=-bm ** 3 / 2,
            b010=r2 / 2 * (51 / 32 * nu ** 2 + 1 / 8),
            bPlus210=(-17 / 8 * nu ** 2 - 11 / 8 * nu - 41 / 48) * bp ** 2,
            bMinus210=(17 / 8 * nu ** 2 - 11 / 8 * nu + 41 / 48) * bm ** 2,
            bPlus410=r2 / 4 * bp ** 4, bMinus410=r2 / 4 * bm ** 4,
        )
    return PIIExpansion(**kw)


def _series(terms, logbase, dlogbase, x, dx_dt):
    # sum c * base^k * x^m and its t-derivative; x = |t|^(-1/4)
    val = 0j
    der = 0j
    lx = math.log(x)
    for c, k, m in terms:
        if c == 0:
            continue
        term = c * cmath.exp(k * logbase + m * lx)
        val += term
        der += term * (k * dlogbase + m * dx_dt / x)
    return val, der


def _u_minus(e: PIIExpansion, t: float):
    tau = -t
    lp = (2j / 3) * tau ** 1.5 + 1.5 * e.mu * math.log(tau)
    dlp = -(1j * math.sqrt(tau) + 1.5 * e.mu / tau)  # d/dt
    zeta = tau ** -0.25
    dzeta = 0.25 * zeta / tau  # d/dt of (-t)^(-1/4)
    return _series(e.minus_terms(), lp, dlp, zeta, dzeta)


def _u_plus(e: PIIExpansion, t: float):
    lq = (2j * SQRT2 / 3) * t ** 1.5 - 1.5 * e.nu * math.log(t)
    dlq = 1j * SQRT2 * math.sqrt(t) - 1.5 * e.nu / t
    xi = t ** -0.25
    dxi = -0.25 * xi / t
    val, der = _series(e.plus_terms(), lq, dlq, xi, dxi)
    val += 1j * math.sqrt(t / 2)
    der += 0.25j * SQRT2 / math.sqrt(t)
    return e.sgn * val, e.sgn * der


def u_asymptotic(s: PIIStokes, t: float, side: int | None = None,
                 expansion: PIIExpansion | None = None, check: bool = True):
    """(u, u_t) from the truncated expansion at the end of the real line
    selected by the sign of ``t`` (or by ``side``)."""
    t = float(t)
    side = side if side is not None else (1 if t > 0 else -1)
    if side * t <= 0:
        raise ValidityError("t must lie on the requested half-line")
    if check and abs(t) < MIN_ASYMPTOTIC_T:
        raise ValidityError(f"|t| = {abs(t)} is below the validity threshold {MIN_ASYMPTOTIC_T}")
    if side < 0:
        e = expansion if expansion is not None else expansion_coefficients(s, plus_side=False)
        return _u_minus(e, t)
    e = expansion if expansion is not None and expansion.has_plus_side else expansion_coefficients(s)
    return _u_plus(e, t)


def _holo_derivative(f: Callable[[complex], np.ndarray], z: complex, h=1e-2, n=8):
    """Derivative of a holomorphic vector function by a small-circle rule."""
    acc = 0
    for k in range(n):
        w = cmath.exp(2j * math.pi * k / n)
        acc = acc + np.asarray(f(z + h * w)) / w
    return acc / (n * h)


def _minus_state(s1, s2, t):
    s = PIIStokes.from_s1_s2(s1, s2)
    u, ut = _u_minus(expansion_coefficients(s, plus_side=False), t)
    return np.array([u, 2 * ut])


def _variational_rows(s: PIIStokes, t: float, h=1e-2):
    if abs(1 + s.s1 * s.s2) < 1e-8:
        raise GenericityError("1 + s1 s2 = 0: (s1, s2) chart unavailable")
    d1 = _holo_derivative(lambda z: _minus_state(z, s.s2, t), s.s1, h)
    d2 = _holo_derivative(lambda z: _minus_state(s.s1, z, t), s.s2, h)
    return d1, d2


@dataclass
class PIITrajectory:
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    Q: np.ndarray          # running integral of H from the left end
    R: np.ndarray          # running integral of u^2 from the left end
    us: np.ndarray | None  # (n, 2): derivatives of u w.r.t. s1, s2
    vs: np.ndarray | None
    nfev: int = 0
    retries: int = 0
    tol: float = 0.0

    @property
    def H(self) -> np.ndarray:
        t, u, v = self.t, self.u, self.v
        return v * v / 4 - t * u * u - u ** 4

    @property
    def u_t(self) -> np.ndarray:
        return self.v / 2

    def hamiltonian_drift(self) -> float:
        """max |H(t) - H(t_start) + int u^2| scaled by max(1, |H|)."""
        H = self.H
        scale = max(1.0, float(np.max(np.abs(H))))
        return float(np.max(np.abs(H - H[0] + self.R))) / scale

    def action_identity_residual(self) -> float:
        """max |4H - 2t H_t - 2 v u_t + u v_t| with H_t, v_t from the flow."""
        t, u, v = self.t, self.u, self.v
        H = self.H
        Ht = -u * u
        vt = 4 * u ** 3 + 2 * t * u
        r = 4 * H - 2 * t * Ht - v * v + u * vt
        scale = np.maximum(1.0, np.abs(4 * H) + np.abs(v * v))
        return float(np.max(np.abs(r) / scale))


def integrate_pii(s: PIIStokes, T: float, tol: float = 1e-11, variational: bool = True,
                  t_start: float | None = None, t_end: float | None = None) -> PIITrajectory:
    """Integrate from -T (data from the minus-infinity expansion) up to +T."""
    T = float(T)
    if T < MIN_ASYMPTOTIC_T:
        raise ValidityError(f"T must be at least {MIN_ASYMPTOTIC_T}")
    t0 = -T if t_start is None else float(t_start)
    t1 = T if t_end is None else float(t_end)
    u0, ut0 = u_asymptotic(s, t0, side=-1, check=False)
    y0 = np.zeros(8, dtype=complex)
    y0[0] = u0
    y0[1] = 2 * ut0
    if variational:
        d1, d2 = _variational_rows(s, t0)
        y0[3:5] = d1
        y0[5:7] = d2
    rtol = tol
    last = t0
    for attempt in range(MAX_RETRIES + 1):
        xs, ys, status, nfev, _ = _ode.integrate(_ode.SYS_PII, y0, [0j], t0, t1, rtol, rtol)
        if status == _ode.STATUS_OK:
            break
        last = float(xs[-1])
        if status == _ode.STATUS_MAX_STEPS:
            raise ToleranceError(f"step budget exhausted near t = {last:.6g}")
        rtol *= 0.1
    else:
        raise PoleEncountered(f"step size collapsed near t = {last:.10g}", last)
    us = vs = None
    if variational:
        us = ys[:, [3, 5]]
        vs = ys[:, [4, 6]]
    return PIITrajectory(t=np.asarray(xs), u=ys[:, 0], v=ys[:, 1], Q=ys[:, 2], R=ys[:, 7],
                         us=us, vs=vs, nfev=int(nfev), retries=attempt, tol=rtol)


# ---------------------------------------------------------------------------
# connection constant


def log_upsilon_pii_from_exponents(mu, nu, eta) -> complex:
    lg = (LOG2 / 24 + ZETA_PRIME_M1 + I_PI / 24
          + (3 * mu * mu - 1.75 * nu * nu) * LOG2
          - (mu + nu / 2) * LOG_2PI
          + 0.25 * I_PI * (eta * eta + 2 * mu * mu + 2 * eta * nu - 8 * mu * eta))
    lg += log_barnes_g(1 - nu) + log_g_hat(eta)
    lg -= 2 * log_barnes_g(1 - mu) + 2 * log_g_hat((eta - nu) / 2)
    return lg


def log_upsilon_pii_closed(s: PIIStokes) -> complex:
    e = exponents_from_stokes(s)
    return log_upsilon_pii_from_exponents(e.mu, e.nu, e.eta)


def upsilon_pii_closed(s: PIIStokes) -> complex:
    """Ratio C+/C- of the tau-function normalisations at plus and minus infinity."""
    return cmath.exp(log_upsilon_pii_closed(s))


def _plus_counterterm(nu, T):
    return T ** 3 / 12 + (2j * SQRT2 * nu / 3) * T ** 1.5 - (6 * nu * nu + 1) / 8 * math.log(T)


def _minus_counterterm(mu, T):
    return -(4j * mu / 3) * T ** 1.5 - 1.5 * mu * mu * math.log(T)


def _plus_counterterm_dd(nu, T):
    return T / 2 + 0.5j * SQRT2 * nu / math.sqrt(T) + (6 * nu * nu + 1) / (8 * T * T)


def _minus_counterterm_dd(mu, T):
    # second t-derivative at t = -T
    return -1j * mu / math.sqrt(T) + 1.5 * mu * mu / (T * T)


def endpoint_oscillation(u_plus, u_minus, mu, nu, T):
    """Leading oscillatory remainders of ln tau at t = +T and t = -T.

    With f the remainder after subtracting the growing terms, f'' is known
    locally from (ln tau)'' = -u^2, and the dominant oscillations have
    f'' = -2T f at +T and f'' = -4T f at -T (doubled frequency there).
    """
    f_plus = (u_plus * u_plus + _plus_counterterm_dd(nu, T)) / (2 * T)
    f_minus = (u_minus * u_minus + _minus_counterterm_dd(mu, T)) / (4 * T)
    return f_plus, f_minus


@dataclass
class NumericUpsilonPII:
    value: complex
    log_value: complex
    closed_form: complex
    raw_value: complex
    trajectory: PIITrajectory = field(repr=False)

    @property
    def rel_error(self) -> float:
        return abs(self.value / self.closed_form - 1.0)

    @property
    def raw_rel_error(self) -> float:
        return abs(self.raw_value / self.closed_form - 1.0)


def upsilon_pii_numeric(s: PIIStokes, T: float = 40.0, tol: float = 1e-11,
                        endpoint_correction: bool = True) -> NumericUpsilonPII:
    """C+/C- from the integral of H over [-T, T].

    The growing parts of ln tau at both ends are subtracted.  With
    ``endpoint_correction`` the leading oscillatory remainders are removed
    as well.  Without it the error decays only like |b11| T^(-3/4).
    """
    e = exponents_from_stokes(s)
    traj = integrate_pii(s, T, tol, variational=False)
    raw = complex(traj.Q[-1]) - _plus_counterterm(e.nu, T) + _minus_counterterm(e.mu, T)
    lg = raw
    if endpoint_correction:
        fp, fm = endpoint_oscillation(complex(traj.u[-1]), complex(traj.u[0]), e.mu, e.nu, T)
        lg = raw - fp + fm
    closed = log_upsilon_pii_from_exponents(e.mu, e.nu, e.eta)
    k = round((lg.imag - closed.imag) / (2 * math.pi))
    lg -= 2j * math.pi * k
    raw -= 2j * math.pi * k
    return NumericUpsilonPII(value=cmath.exp(lg), log_value=lg, closed_form=cmath.exp(closed),
                             raw_value=cmath.exp(raw), trajectory=traj)


# ---------------------------------------------------------------------------
# 1-form and symplectic structure


def omega_pii(t, u, v, us, vs):
    """Components (w_t, w_s1, w_s2) of the localized 1-form.

    ``us`` and ``vs`` hold the derivatives of u and v = 2 u_t with respect
    to (s1, s2) along their last axis.
    """
    t = np.asarray(t)
    u = np.asarray(u)
    ut = np.asarray(v) / 2
    us = np.asarray(us)
    uts = np.asarray(vs) / 2
    wt = ut * ut - u ** 4 - t * u * u
    out = [wt]
    for j in range(2):
        a = us[..., j]
        b = uts[..., j]
        out.append((2.0 / 3.0) * (2 * ut * a - 4 * u ** 3 * t * a - u * b
                                  + 2 * t * ut * b - 2 * u * t * t * a))
    return tuple(out)


def domega_chart_value(s: PIIStokes) -> complex:
    """(i/pi) (ds3/ds2) / (1 - s1 s3): the ds1 ^ ds2 coefficient of d omega."""
    s1, s2 = s.s1, s.s2
    ds3 = (1 + s1 * s1) / (1 + s1 * s2) ** 2
    return 1j / math.pi * ds3 / (1 - s1 * s.s3)


# ---------------------------------------------------------------------------
# chi and its quasi-periodicity


def log_chi_pii(nu_m, nu_p, eta) -> complex:
    lg = (LOG2 / 24 + ZETA_PRIME_M1 + I_PI / 24
          + (nu_m - nu_p / 2) * LOG_2PI
          + I_PI * ((eta + nu_p) ** 2 / 4 + nu_m * nu_m + 2 * nu_m * eta))
    lg += log_g_hat(eta) - log_g_hat(nu_p) - 2 * log_g_hat((eta - nu_p) / 2)
    return lg


def chi_pii(nu_m, nu_p, eta) -> complex:
    return cmath.exp(log_chi_pii(nu_m, nu_p, eta))


def _exp_i_rho(nu_m, nu_p, eta):
    em = -cmath.exp(-2 * I_PI * (nu_m + eta)) / (2 * math.pi)
    ep = (1 - cmath.exp(2 * I_PI * nu_p)) / ((1 - cmath.exp(I_PI * (nu_p - eta))) * math.sqrt(2 * math.pi))
    return em, ep


@dataclass(frozen=True)
class ChiReport:
    chi: complex
    residualMinus: float
    residualPlus: float
    upsilonRatioResidual: float
    expIRhoMinus: complex
    expIRhoPlus: complex


def chi_and_periodicity(s: PIIStokes) -> ChiReport:
    e = exponents_from_stokes(s)
    nm, npl, eta = -e.mu, e.nu, e.eta
    lc = log_chi_pii(nm, npl, eta)
    em, ep = _exp_i_rho(nm, npl, eta)
    r1 = abs(cmath.exp(log_chi_pii(nm + 1, npl, eta) - lc) * em - 1)
    r2 = abs(cmath.exp(log_chi_pii(nm, npl + 1, eta + 1) - lc) / ep - 1)
    ratio = ((3 * nm * nm - 1.75 * npl * npl) * LOG2 - 0.25 * I_PI * (npl * npl + 2 * nm * nm)
             + log_barnes_g(1 + npl) - 2 * log_barnes_g(1 + nm))
    r3 = abs(cmath.exp(log_upsilon_pii_from_exponents(e.mu, e.nu, e.eta) - lc - ratio) - 1)
    return ChiReport(chi=cmath.exp(lc), residualMinus=r1, residualPlus=r2,
                     upsilonRatioResidual=r3, expIRhoMinus=em, expIRhoPlus=ep)


# ---------------------------------------------------------------------------
# Hastings-McLeod


def _hm_left_coefficients(n):
    # u = sqrt(tau/2) sum c_k tau^(-3k), tau = -t
    c = [1.0]
    for k in range(1, n):
        cube_rest = 0.0
        for i in range(k + 1):
            for j in range(k + 1 - i):
                l = k - i - j
                if i == k or j == k or l == k:
                    continue
                cube_rest += c[i] * c[j] * c[l]
        rhs = c[k - 1] * (0.5 - 3 * (k - 1)) * (-0.5 - 3 * (k - 1))
        c.append((rhs - cube_rest) / 2.0)
    return c


def _airy_logderiv(x, n=12):
    # Ai'(x)/Ai(x) = sqrt(x) sum d_k x^(-3k/2)
    d = [-1.0]
    for k in range(1, n):
        rest = sum(d[j] * d[k - j] for j in range(1, k))
        d.append((rest + d[k - 1] * (4 - 3 * k) / 2) / 2.0)
    y = x ** -1.5
    return math.sqrt(x) * sum(dk * y ** k for k, dk in enumerate(d))


def _cheb(n):
    x = np.cos(np.pi * np.arange(n + 1) / n)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)
    X = np.tile(x, (n + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(n + 1))
    D -= np.diag(D.sum(axis=1))
    return D, x


def _clenshaw_curtis(n):
    theta = np.pi * np.arange(n + 1) / n
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    if n % 2 == 0:
        w[0] = w[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
        v -= np.cos(n * theta[1:-1]) / (n * n - 1)
    else:
        w[0] = w[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
    w[1:-1] = 2 * v / n
    return w


@dataclass
class HMSolution:
    t: np.ndarray
    u: np.ndarray
    u_t: np.ndarray
    weights: np.ndarray
    newton_steps: int

    @property
    def H(self) -> np.ndarray:
        return self.u_t ** 2 - self.t * self.u ** 2 - self.u ** 4


def hastings_mcleod_solution(T: float = 12.0, n: int = 200, tol: float = 1e-13,
                             max_newton: int = 50) -> HMSolution:
    """Real Hastings-McLeod solution on [-T, T] by Chebyshev collocation.

    Left end: the algebraic expansion u ~ sqrt(-t/2)(1 + 1/(8 t^3) + ...).
    Right end: the Airy logarithmic derivative as a Robin condition.
    Both are accurate to exponentially small terms, and the linearization
    has an exponential dichotomy, so boundary errors stay local.
    """
    if T < 8:
        raise ValidityError("T must be at least 8")
    D, x = _cheb(n)
    t = T * x  # descending from +T to -T
    D1 = D / T
    D2 = D1 @ D1
    c = _hm_left_coefficients(6)
    uL = math.sqrt(T / 2) * sum(ck * T ** (-3 * k) for k, ck in enumerate(c))
    wR = _airy_logderiv(T)
    u = np.sqrt(np.maximum((np.sqrt(t * t + 1) - t) / 4, 0.0)) * np.exp(-np.maximum(t, 0) ** 1.5 / 3)
    steps = 0
    for steps in range(1, max_newton + 1):
        F = D2 @ u - 2 * u ** 3 - t * u
        J = D2 - np.diag(6 * u * u + t)
        F[0] = (D1 @ u)[0] - wR * u[0]
        J[0] = D1[0] - wR * np.eye(n + 1)[0]
        F[-1] = u[-1] - uL
        J[-1] = 0.0
        J[-1, -1] = 1.0
        du = np.linalg.solve(J, -F)
        u = u + du
        if np.max(np.abs(du)) < tol:
            break
    else:
        raise NonConvergenceError("Newton iteration for the Hastings-McLeod solution did not converge")
    return HMSolution(t=t, u=u, u_t=D1 @ u, weights=T * _clenshaw_curtis(n), newton_steps=steps)


@dataclass(frozen=True)
class HMReport:
    value: complex
    reference: float
    relError: float
    T: float
    nodes: int
    minimum_u: float


def hastings_mcleod_check(T: float = 12.0, tol: float = 1e-13, n: int | None = None) -> HMReport:
    """Extract the Hastings-McLeod tau constant from the collocated solution.

    ln Upsilon_HM = -int_{-T}^{T} H + T^3/12 + ln(T)/8, up to terms that
    are exponentially small in T^(3/2).
    """
    if n is None:
        n = max(120, int(20 * T))
    sol = hastings_mcleod_solution(T, n=n, tol=tol)
    if np.any(sol.u < -1e-8):
        raise PoleEncountered("collocation converged to a sign-changing solution", float(sol.t[np.argmin(sol.u)]))
    integral = float(sol.weights @ sol.H)
    lg = -integral + T ** 3 / 12 + math.log(T) / 8
    val = math.exp(lg)
    return HMReport(value=complex(val), reference=UPSILON_HM, relError=abs(val / UPSILON_HM - 1),
                    T=float(T), nodes=n, minimum_u=float(sol.u.min()))


# ---------------------------------------------------------------------------
# Fourier-type series (experimental)


def fourier_B(alpha, t: float) -> complex:
    """Fourier coefficient at minus infinity, truncated after 1/r^2.

    Experimental: the full series is conjectural and only two correction
    coefficients are known here.
    """
    alpha = complex(alpha)
    r = 4.0 / 3.0 * (-t) ** 1.5
    b1 = -1j * alpha * (34 * alpha ** 2 + 1) / 18
    b2 = -alpha ** 2 * (1156 * alpha ** 4 + 2318 * alpha ** 2 + 271) / 648
    lg = (-alpha * alpha * math.log(6.0) + 0.5 * I_PI * alpha * alpha
          + 2 * log_barnes_g(1 + alpha) - alpha * alpha * math.log(r) + 1j * alpha * r)
    return cmath.exp(lg) * (1 + b1 / r + b2 / r ** 2)


def fourier_D(alpha, t: float) -> complex:
    """Fourier coefficient at plus infinity, truncated after 1/r^2 (experimental)."""
    alpha = complex(alpha)
    r = 2.0 * SQRT2 / 3.0 * t ** 1.5
    d1 = -1j * alpha * (34 * alpha ** 2 + 31) / 72
    d2 = (-289 / 2592 * alpha ** 6 - 413 / 648 * alpha ** 4
          - 11509 / 10368 * alpha ** 2 - 1 / 24)
    lg = (-0.5 * alpha * alpha * math.log(12.0) - 0.25 * I_PI * alpha * alpha
          + log_barnes_g(1 + alpha) - 0.5 * alpha * alpha * math.log(r) + 1j * alpha * r)
    return cmath.exp(lg) * (1 + d1 / r + d2 / r ** 2)


def write_trajectory_csv(traj: PIITrajectory, path) -> None:
    H = traj.H
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re_u", "im_u", "re_v", "im_v", "re_H", "im_H"])
        for k in range(len(traj.t)):
            w.writerow([repr(float(traj.t[k])),
                        repr(float(traj.u[k].real)), repr(float(traj.u[k].imag)),
                        repr(float(traj.v[k].real)), repr(float(traj.v[k].imag)),
                        repr(float(H[k].real)), repr(float(H[k].imag))])
