"""Painleve VI monodromy data in Darboux coordinates.

The four local exponents are stored in :class:`ThetaData`.  A point of
the monodromy manifold is given by the exponent sigma of the product
M_t M_0 together with the twist exp(i eta); :class:`PVIMonodromy` keeps
exp(i eta) rather than eta so that the 2 pi ambiguity never enters.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, GenericityError

__all__ = [
    "ThetaData",
    "PVIMonodromy",
    "TraceFunctions",
    "CrossedMonodromy",
    "traces_from_darboux",
    "matrices_from_darboux",
    "exp_i_eta_from_traces",
    "crossing",
    "poisson_brackets",
    "check_darboux_bracket",
]

TWO_PI = 2.0 * math.pi
GENERICITY_TOL = 1e-9


def _cos2pi(x):
    return cmath.cos(TWO_PI * x)


def _dist_to_int(x: complex) -> float:
    return math.hypot(x.real - round(x.real), x.imag)


@dataclass(frozen=True)
class ThetaData:
    """Local monodromy exponents at 0, t, 1 and infinity."""

    theta0: complex
    thetat: complex
    theta1: complex
    thetaInf: complex

    def __post_init__(self):
        for name in ("theta0", "thetat", "theta1", "thetaInf"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self):
        return (self.theta0, self.thetat, self.theta1, self.thetaInf)

    def swapped(self) -> "ThetaData":
        """Exchange the roles of 0 and 1."""
        return ThetaData(self.theta1, self.thetat, self.theta0, self.thetaInf)


@dataclass(frozen=True)
class PVIMonodromy:
    """Darboux chart (sigma, exp(i eta)) on the PVI monodromy manifold."""

    theta: ThetaData
    sigma: complex
    exp_i_eta: complex

    def __post_init__(self):
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "exp_i_eta", complex(self.exp_i_eta))
        s = self.sigma
        if abs(s.real) >= 0.5:
            raise GenericityError(f"|Re sigma| must be < 1/2, got sigma={s}")
        if abs(s) < GENERICITY_TOL:
            raise GenericityError("sigma must be non-zero")
        if self.exp_i_eta == 0 or not cmath.isfinite(self.exp_i_eta):
            raise GenericityError("exp(i eta) must be finite and non-zero")
        th0, tht, th1, thi = self.theta.as_tuple()
        combos = {
            "theta0+thetat": th0 + tht,
            "theta0-thetat": th0 - tht,
            "thetaInf+theta1": thi + th1,
            "thetaInf-theta1": thi - th1,
        }
        for label, base in combos.items():
            for sign in (1, -1):
                if _dist_to_int(base + sign * s) < GENERICITY_TOL:
                    op = "+" if sign > 0 else "-"
                    raise GenericityError(f"{label}{op}sigma is an integer")

    @classmethod
    def create(cls, theta, sigma, eta=None, exp_i_eta=None) -> "PVIMonodromy":
        """Build from either eta or exp(i eta)."""
        if not isinstance(theta, ThetaData):
            theta = ThetaData(*theta)
        if exp_i_eta is None:
            if eta is None:
                raise ValueError("either eta or exp_i_eta is required")
            exp_i_eta = cmath.exp(1j * complex(eta))
        return cls(theta, complex(sigma), complex(exp_i_eta))

    @property
    def eta(self) -> complex:
        """A representative of eta with real part in (-pi, pi]."""
        return -1j * cmath.log(self.exp_i_eta)


@dataclass(frozen=True)
class TraceFunctions:
    p0: complex
    pt: complex
    p1: complex
    pInf: complex
    p0t: complex
    pt1: complex
    p01: complex

    def quartic_residual(self) -> complex:
        """Left side minus right side of the Jimbo-Fricke relation."""
        p0, pt, p1, pi = self.p0, self.pt, self.p1, self.pInf
        a, b, c = self.p0t, self.pt1, self.p01
        lhs = (p0 * pt * p1 * pi + a * b * c
               - (p0 * pt + p1 * pi) * a
               - (pt * p1 + p0 * pi) * b
               - (p0 * p1 + pt * pi) * c
               + a * a + b * b + c * c
               + p0 * p0 + pt * pt + p1 * p1 + pi * pi)
        return lhs - 4.0

    def as_tuple(self):
        return (self.p0, self.pt, self.p1, self.pInf, self.p0t, self.pt1, self.p01)


@dataclass(frozen=True)
class CrossedMonodromy:
    """Data attached to the t -> 1 channel."""

    sigmaBar: complex
    exp_i_etaBar: complex
    tracesBar: TraceFunctions
    theta: ThetaData

    def to_monodromy(self) -> PVIMonodromy:
        """The crossed point as a PVIMonodromy with theta0 and theta1 exchanged."""
        return PVIMonodromy(self.theta.swapped(), self.sigmaBar, self.exp_i_etaBar)


def _local_traces(theta: ThetaData):
    return tuple(2.0 * _cos2pi(x) for x in theta.as_tuple())


def traces_from_darboux(m: PVIMonodromy) -> TraceFunctions:
    """All seven trace functions from (theta, sigma, exp(i eta))."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    sin2 = cmath.sin(TWO_PI * s)
    if abs(sin2) < 1e-12:
        raise DegenerateError("sin(2 pi sigma) vanishes")
    p0, pt, p1, pi = _local_traces(m.theta)
    p0t = 2.0 * _cos2pi(s)
    den = 4.0 * sin2 * sin2
    w = m.exp_i_eta
    e2s = cmath.exp(2j * math.pi * s)
    acc_t1 = 0j
    acc_01 = 0j
    for eps in (1, -1):
        E = (pi - 2.0 * _cos2pi(th1 - eps * s)) * (p0 - 2.0 * _cos2pi(tht - eps * s))
        we = w if eps == 1 else 1.0 / w
        acc_t1 += E * we
        acc_01 += E * we * (1.0 / e2s if eps == 1 else e2s)
    pt1 = (2.0 * (p0 * pi + pt * p1) - p0t * (p0 * p1 + pt * pi) - acc_t1) / den
    p01 = (2.0 * (p0 * p1 + pt * pi) - p0t * (p0 * pi + pt * p1) + acc_01) / den
    return TraceFunctions(p0, pt, p1, pi, p0t, pt1, p01)


def matrices_from_darboux(m: PVIMonodromy, s_i, s_e):
    """Monodromy matrices (M0, Mt, M1, Minf) in the basis diagonalising Mt M0.

    The ratio s_i / s_e must equal exp(i eta).
    """
    s_i = complex(s_i)
    s_e = complex(s_e)
    if abs(s_i / s_e - m.exp_i_eta) > 1e-10 * max(1.0, abs(m.exp_i_eta)):
        raise ValueError("s_i / s_e must equal exp(i eta)")
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    sin2 = cmath.sin(TWO_PI * s)
    if abs(sin2) < 1e-12:
        raise DegenerateError("sin(2 pi sigma) vanishes")
    pref = 1.0 / (1j * sin2)
    ep = cmath.exp(2j * math.pi * s)
    em = 1.0 / ep
    c0, ct, c1, ci = (_cos2pi(x) for x in (th0, tht, th1, thi))
    M0 = pref * np.array([
        [ep * c0 - ct, s_i * (_cos2pi(tht - s) - c0)],
        [(c0 - _cos2pi(tht + s)) / s_i, ct - em * c0],
    ])
    Mt = pref * np.array([
        [ep * ct - c0, s_i * ep * (c0 - _cos2pi(tht - s))],
        [em * (_cos2pi(tht + s) - c0) / s_i, c0 - em * ct],
    ])
    M1 = pref * np.array([
        [ci - em * c1, s_e * ep * (_cos2pi(th1 + s) - ci)],
        [em * (ci - _cos2pi(th1 - s)) / s_e, ep * c1 - ci],
    ])
    Minf = pref * np.array([
        [c1 - em * ci, s_e * (ci - _cos2pi(th1 + s))],
        [(_cos2pi(th1 - s) - ci) / s_e, ep * ci - c1],
    ])
    return M0, Mt, M1, Minf


def exp_i_eta_from_traces(theta: ThetaData, sigma, pt1, p01) -> complex:
    """Recover exp(i eta) from p_{t1} and p_{01} at fixed theta and sigma."""
    th0, tht, th1, thi = theta.as_tuple()
    s = complex(sigma)
    p0, pt, p1, pi = _local_traces(theta)
    e2s = cmath.exp(2j * math.pi * s)
    f = (p0 * pi + pt * p1) - (p0 * p1 + pt * pi) * e2s
    g = (pi - 2.0 * _cos2pi(th1 - s)) * (p0 - 2.0 * _cos2pi(tht - s))
    return (2j * cmath.sin(TWO_PI * s) * (e2s * pt1 + p01) + f) / g


def _choose_sigma_root(p: complex) -> complex:
    """Solve 2 cos(2 pi x) = p with 0 <= Re x < 1/2 (Im x >= 0 on Re x = 0)."""
    x = cmath.acos(p / 2.0) / TWO_PI
    if abs(x.real) < 1e-14:
        x = complex(0.0, abs(x.imag))
    elif x.real < 0:
        x = -x
    return x


def crossing(m: PVIMonodromy) -> CrossedMonodromy:
    """Darboux data for the t -> 1 channel.

    sigmaBar solves 2 cos(2 pi sigmaBar) = p_{t1}.  Of its two roots with
    |Re| < 1/2 the one with positive real part is taken; on Re = 0 the
    root with non-negative imaginary part.
    """
    tr = traces_from_darboux(m)
    if abs(tr.pt1 - 2.0) < 1e-10 or abs(tr.pt1 + 2.0) < 1e-10:
        raise DegenerateError("p_t1 = +-2: crossed exponent is degenerate")
    sb = _choose_sigma_root(tr.pt1)
    if abs(sb.real) >= 0.5 - 1e-14:
        raise DegenerateError("crossed exponent has |Re sigmaBar| = 1/2")
    th0, tht, th1, thi = m.theta.as_tuple()
    p0, pt, p1, pi = tr.p0, tr.pt, tr.p1, tr.pInf
    em = cmath.exp(-2j * math.pi * sb)
    num = (-2j * cmath.sin(TWO_PI * sb) * (tr.p01 + tr.p0t * em)
           + (p0 * pt + p1 * pi) - (p0 * p1 + pt * pi) * em)
    den = (pi - 2.0 * _cos2pi(th0 - sb)) * (p1 - 2.0 * _cos2pi(tht - sb))
    if abs(den) < 1e-300:
        raise DegenerateError("exp(i etaBar) denominator vanishes")
    bar = TraceFunctions(
        p0=p1, pt=pt, p1=p0, pInf=pi,
        p0t=tr.pt1, pt1=tr.p0t,
        p01=p0 * p1 + pt * pi - tr.p01 - tr.p0t * tr.pt1,
    )
    return CrossedMonodromy(sb, num / den, bar, m.theta)


def poisson_brackets(tr: TraceFunctions):
    """The three quadratic brackets ({p0t,pt1}, {pt1,p01}, {p01,p0t})."""
    p0, pt, p1, pi = tr.p0, tr.pt, tr.p1, tr.pInf
    a, b, c = tr.p0t, tr.pt1, tr.p01
    return (
        2.0 * c + a * b - p0 * p1 - pt * pi,
        2.0 * a + b * c - p0 * pt - p1 * pi,
        2.0 * b + a * c - pt * p1 - p0 * pi,
    )


def check_darboux_bracket(m: PVIMonodromy, h: float) -> float:
    """Finite-difference check of {p0t, exp(i eta)} = 2 i sin(2 pi sigma) exp(i eta).

    The partial derivatives of eta with respect to p_{t1} and p_{01}
    (Casimirs and p_{0t} held fixed) are taken by central differences of
    the logarithm of exp(i eta); the bracket is then assembled from the
    quadratic Poisson brackets of the trace functions.
    """
    if not (1e-6 <= h <= 1e-3):
        raise ValueError("h must lie in [1e-6, 1e-3]")
    tr = traces_from_darboux(m)
    base = exp_i_eta_from_traces(m.theta, m.sigma, tr.pt1, tr.p01)

    def log_ratio(d_t1, d_01):
        up = exp_i_eta_from_traces(m.theta, m.sigma, tr.pt1 + d_t1, tr.p01 + d_01)
        dn = exp_i_eta_from_traces(m.theta, m.sigma, tr.pt1 - d_t1, tr.p01 - d_01)
        return cmath.log(up / dn) / (2.0 * h)

    dlog_t1 = log_ratio(h, 0.0)
    dlog_01 = log_ratio(0.0, h)
    b_0t_t1, _, b_01_0t = poisson_brackets(tr)
    bracket = base * (dlog_t1 * b_0t_t1 - dlog_01 * b_01_0t)
    expected = 2j * cmath.sin(TWO_PI * m.sigma) * m.exp_i_eta
    return abs(bracket - expected)
