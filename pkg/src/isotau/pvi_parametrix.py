"""Hypergeometric parametrices for the two three-point problems.

The exterior system has poles at 0 and 1 with residues diag(sigma,
-sigma) and A1E; the interior one has residues A0I and A1I with
A0I + A1I = diag(sigma, -sigma).  This module builds these matrices, the
g-coefficients of their local solutions, the Gamma-function dictionary
between the normalisations r and the monodromy parameters s, the
connection matrices, and the small-t corrections eps(t) and E(t).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ResonanceError, SingularError
from .pvi_monodromy import PVIMonodromy, crossing
from .specfun import log_gamma

__all__ = [
    "ParametrixData",
    "gamma_ratio_e",
    "gamma_ratio_i",
    "r_from_s",
    "s_from_r",
    "kappa",
    "kappa_bar",
    "build_A1",
    "build_g_coefficients",
    "connection_matrix_Cinf",
    "connection_matrix_C0i",
    "epsilon_correction",
]


def _lg_sum(plus, minus):
    s = 0j
    for x in plus:
        s += log_gamma(x)
    for x in minus:
        s -= log_gamma(x)
    return s


def gamma_ratio_e(m: PVIMonodromy, log=False):
    """The factor R_e with s_e = R_e r_e."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    val = _lg_sum((1 - 2 * s, 1 + thi + th1 + s, 1 - thi + th1 + s),
                  (1 + 2 * s, 1 + thi + th1 - s, 1 - thi + th1 - s))
    return val if log else cmath.exp(val)


def gamma_ratio_i(m: PVIMonodromy, log=False):
    """The factor R_i with s_i = R_i r_i."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    val = _lg_sum((1 + 2 * s, 1 + th0 + tht - s, 1 - th0 + tht - s),
                  (1 - 2 * s, 1 + th0 + tht + s, 1 - th0 + tht + s))
    return val if log else cmath.exp(val)


def r_from_s(m: PVIMonodromy, sE, sI):
    """Normalisations (r_e, r_i) of the parametrices from (s_e, s_i)."""
    return complex(sE) / gamma_ratio_e(m), complex(sI) / gamma_ratio_i(m)


def s_from_r(m: PVIMonodromy, rE, rI):
    """Inverse of :func:`r_from_s`."""
    return complex(rE) * gamma_ratio_e(m), complex(rI) * gamma_ratio_i(m)


def kappa(m: PVIMonodromy, log=False):
    """kappa = r_i / r_e as a closed Gamma product times exp(i eta)."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    val = _lg_sum(
        (1 - 2 * s, 1 - 2 * s, 1 + th0 + tht + s, 1 - th0 + tht + s,
         1 + thi + th1 + s, 1 - thi + th1 + s),
        (1 + 2 * s, 1 + 2 * s, 1 + th0 + tht - s, 1 - th0 + tht - s,
         1 + thi + th1 - s, 1 - thi + th1 - s),
    ) + cmath.log(m.exp_i_eta)
    return val if log else cmath.exp(val)


def kappa_bar(m: PVIMonodromy, log=False):
    """The t -> 1 analogue of kappa, built from the crossed data."""
    return kappa(crossing(m).to_monodromy(), log=log)


def build_A1(m: PVIMonodromy, rE, rI):
    """Residues A1E (exterior, at z = 1) and A1I (interior, at z = 1)."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    if s == 0:
        raise ResonanceError("sigma = 0")
    rE = complex(rE)
    rI = complex(rI)
    k = 1.0 / (2.0 * s)
    A1E = k * np.array([
        [thi ** 2 - th1 ** 2 - s ** 2, rE * ((th1 + s) ** 2 - thi ** 2)],
        [(thi ** 2 - (th1 - s) ** 2) / rE, s ** 2 + th1 ** 2 - thi ** 2],
    ])
    A1I = k * np.array([
        [s ** 2 + tht ** 2 - th0 ** 2, rI * (th0 ** 2 - (s - tht) ** 2)],
        [((s + tht) ** 2 - th0 ** 2) / rI, th0 ** 2 - tht ** 2 - s ** 2],
    ])
    return A1E, A1I


def _check_resonance(s):
    for v in (2 * s, 2 * s - 1, 2 * s + 1):
        if abs(v) < 1e-9:
            raise ResonanceError(f"resonant exponent: 2 sigma = {2 * s}")


def build_g_coefficients(m: PVIMonodromy, rE, rI):
    """First subleading coefficients gE01 and gIinf1 of the local solutions."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    _check_resonance(s)
    rE = complex(rE)
    rI = complex(rI)
    d = 2.0 * s
    g11 = (s ** 2 + th1 ** 2 - thi ** 2) / d
    gE01 = np.array([
        [g11, rE * ((th1 + s) ** 2 - thi ** 2) / (d * (d - 1))],
        [((th1 - s) ** 2 - thi ** 2) / (rE * d * (d + 1)), -g11],
    ])
    gIinf1 = np.array([
        [(th0 ** 2 - tht ** 2 - s ** 2) / d, rI * ((tht - s) ** 2 - th0 ** 2) / (d * (d + 1))],
        [((tht + s) ** 2 - th0 ** 2) / (rI * d * (d - 1)), (tht ** 2 - th0 ** 2 + s ** 2) / d],
    ])
    return gE01, gIinf1


def connection_matrix_Cinf(m: PVIMonodromy, rE, cA=1.0, cB=1.0):
    """Exterior connection matrix between the bases at 0 and infinity."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    rE = complex(rE)
    e11 = cmath.exp(_lg_sum((-2 * thi, 2 * s), (-th1 - thi + s, 1 + th1 - thi + s))) / rE
    e12 = cmath.exp(_lg_sum((-2 * thi, -2 * s), (-th1 - thi - s, 1 + th1 - thi - s)))
    e21 = cmath.exp(_lg_sum((2 * thi, 2 * s), (-th1 + thi + s, 1 + th1 + thi + s)))
    e22 = cmath.exp(_lg_sum((2 * thi, -2 * s), (-th1 + thi - s, 1 + th1 + thi - s))) * rE
    return np.array([[cA * e11, cA * e12], [cB * e21, cB * e22]])


def connection_matrix_C0i(m: PVIMonodromy, rI, cA=1.0, cB=1.0):
    """Interior connection matrix between the bases at infinity and 0."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    rI = complex(rI)
    e11 = cmath.exp(_lg_sum((-2 * th0, -2 * s), (-th0 - tht - s, 1 - th0 + tht - s))) / rI
    e12 = cmath.exp(_lg_sum((-2 * th0, 2 * s), (-th0 - tht + s, 1 - th0 + tht + s)))
    e21 = cmath.exp(_lg_sum((2 * th0, -2 * s), (th0 - tht - s, 1 + th0 + tht - s)))
    e22 = cmath.exp(_lg_sum((2 * th0, 2 * s), (th0 - tht + s, 1 + th0 + tht + s))) * rI
    return np.array([[cA * e11, cA * e12], [cB * e21, cB * e22]])


@dataclass(frozen=True)
class ParametrixData:
    """Everything about the two parametrices at one monodromy point."""

    monodromy: PVIMonodromy
    S: np.ndarray
    rE: complex
    rI: complex
    sE: complex
    sI: complex
    A1E: np.ndarray
    A1I: np.ndarray
    gE01: np.ndarray
    gIinf1: np.ndarray
    kappa: complex
    kappaBar: complex

    @classmethod
    def build(cls, m: PVIMonodromy, sE=1.0, with_bar=True) -> "ParametrixData":
        """Build with s_e = sE and s_i = sE exp(i eta)."""
        sE = complex(sE)
        sI = sE * m.exp_i_eta
        rE, rI = r_from_s(m, sE, sI)
        A1E, A1I = build_A1(m, rE, rI)
        gE01, gIinf1 = build_g_coefficients(m, rE, rI)
        kb = kappa_bar(m) if with_bar else complex("nan")
        return cls(
            monodromy=m,
            S=np.diag([m.sigma, -m.sigma]),
            rE=rE, rI=rI, sE=sE, sI=sI,
            A1E=A1E, A1I=A1I, gE01=gE01, gIinf1=gIinf1,
            kappa=kappa(m), kappaBar=kb,
        )

    @property
    def A0I(self) -> np.ndarray:
        return self.S - self.A1I


def _tpow(t, a):
    return cmath.exp(a * math.log(t)) if isinstance(t, float) and t > 0 else complex(t) ** a


def epsilon_correction(d: ParametrixData, t):
    """eps(t) = t^(1+S) gIinf1 t^(-S) and E(t) = eps (1 - gE01 eps)^(-1)."""
    s = d.monodromy.sigma
    g = d.gIinf1
    eps = np.array([
        [t * g[0, 0], _tpow(t, 1 + 2 * s) * g[0, 1]],
        [_tpow(t, 1 - 2 * s) * g[1, 0], t * g[1, 1]],
    ], dtype=complex)
    M = np.eye(2) - d.gE01 @ eps
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if abs(det) < 1e-14:
        raise SingularError("1 - gE01 eps(t) is not invertible")
    inv = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]]) / det
    return eps, eps @ inv
