"""Short-distance asymptotics of the Painleve VI tau function and the
closed-form connection constant between t = 0 and t = 1."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateError
from .pvi_monodromy import CrossedMonodromy, PVIMonodromy, crossing, traces_from_darboux
from .pvi_parametrix import kappa as _kappa
from .specfun import log_barnes_g, log_g_hat

__all__ = [
    "TauExpansion",
    "UpsilonIngredients",
    "tau_expansion_zero",
    "tau_expansion_one",
    "upsilon_ingredients",
    "log_upsilon_pvi",
    "upsilon_pvi",
    "log_upsilon_hat",
    "barnes_prefactor_log",
]

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class TauExpansion:
    """``t^exponent [1 - c+ k t^(1+2s) - c- t^(1-2s)/k + cL t + o(t)]``.

    For the expansion at t = 1 the variable is ``1 - t`` and ``sigma``,
    ``kappa`` are the crossed quantities.
    """

    exponent: complex
    coeffPlus: complex
    coeffMinus: complex
    coeffLinear: complex
    kappa: complex
    sigma: complex

    def bracket(self, x):
        """The bracketed series at distance ``x`` from the critical point."""
        lx = cmath.log(x)
        s = self.sigma
        return (1.0
                - self.coeffPlus * self.kappa * cmath.exp((1 + 2 * s) * lx)
                - self.coeffMinus / self.kappa * cmath.exp((1 - 2 * s) * lx)
                + self.coeffLinear * x)

    def log_tau(self, x):
        """log of ``x^exponent * bracket(x)``, normalised constant dropped."""
        return self.exponent * cmath.log(x) + cmath.log(self.bracket(x))

    def dlog_tau(self, x):
        """d/dx of :meth:`log_tau`."""
        s = self.sigma
        lx = cmath.log(x)
        db = (-(1 + 2 * s) * self.coeffPlus * self.kappa * cmath.exp(2 * s * lx)
              - (1 - 2 * s) * self.coeffMinus / self.kappa * cmath.exp(-2 * s * lx)
              + self.coeffLinear)
        return self.exponent / x + db / self.bracket(x)


def _expansion(th_near, th_mid, th_far, th_inf, s, kap):
    # th_near: the point that merges with t; th_far: the remaining finite one
    if abs(s) < 1e-12:
        raise DegenerateError("sigma = 0: the expansion degenerates")
    cp = ((th_mid - s) ** 2 - th_near ** 2) * ((th_far - s) ** 2 - th_inf ** 2) \
        / (4 * s * s * (1 + 2 * s) ** 2)
    cm = ((th_mid + s) ** 2 - th_near ** 2) * ((th_far + s) ** 2 - th_inf ** 2) \
        / (4 * s * s * (1 - 2 * s) ** 2)
    cl = (s * s - th_inf ** 2 + th_far ** 2) * (s * s - th_near ** 2 + th_mid ** 2) / (2 * s * s)
    return TauExpansion(
        exponent=s * s - th_near ** 2 - th_mid ** 2,
        coeffPlus=cp, coeffMinus=cm, coeffLinear=cl, kappa=kap, sigma=s,
    )


def tau_expansion_zero(m: PVIMonodromy) -> TauExpansion:
    """Expansion of the tau function normalised at t = 0."""
    th0, tht, th1, thi = m.theta.as_tuple()
    return _expansion(th0, tht, th1, thi, m.sigma, _kappa(m))


def tau_expansion_one(m: PVIMonodromy, crossed: CrossedMonodromy | None = None) -> TauExpansion:
    """Expansion in ``1 - t`` of the tau function normalised at t = 1."""
    c = crossed if crossed is not None else crossing(m)
    mb = c.to_monodromy()
    th0, tht, th1, thi = m.theta.as_tuple()
    return _expansion(th1, tht, th0, thi, c.sigmaBar, _kappa(mb))


@dataclass(frozen=True)
class UpsilonIngredients:
    nu: tuple
    lam: tuple
    nuSigma: complex
    xi: complex
    varsigma: complex
    sigmaBar: complex

    @property
    def quadreq_residual(self) -> float:
        """Relative residual of the quartic equation satisfied by xi."""
        lhs = 1.0 + 0j
        rhs = 1.0 + 0j
        for a, b in zip(self.nu, self.lam):
            lhs *= 1 - self.xi * cmath.exp(TWO_PI_I * a)
            rhs *= 1 - self.xi * cmath.exp(TWO_PI_I * b)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)

    @property
    def cyclic_residual(self) -> float:
        """|prod sin pi(vs + lam_k) / sin pi(vs + nu_k) - 1|."""
        r = 1.0 + 0j
        for a, b in zip(self.nu, self.lam):
            r *= cmath.sin(math.pi * (self.varsigma + b)) / cmath.sin(math.pi * (self.varsigma + a))
        return abs(r - 1.0)


def upsilon_ingredients(m: PVIMonodromy, crossed: CrossedMonodromy | None = None) -> UpsilonIngredients:
    c = crossed if crossed is not None else crossing(m)
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    sb = c.sigmaBar
    nu = (s + th0 + tht, s + th1 + thi, sb + th0 + thi, sb + tht + th1)
    lam = (th0 + tht + th1 + thi, s + sb + th0 + th1, s + sb + tht + thi, 0j)
    nS = 0.5 * sum(nu)
    num = (2 * cmath.cos(2 * math.pi * (s - sb))
           - 2 * cmath.cos(2 * math.pi * (th0 + th1))
           - 2 * cmath.cos(2 * math.pi * (thi + tht))
           + traces_from_darboux(m).p01)
    den = sum(cmath.exp(TWO_PI_I * (nS - a)) - cmath.exp(TWO_PI_I * (nS - b))
              for a, b in zip(nu, lam))
    if abs(den) == 0.0 or abs(num) == 0.0:
        raise DegenerateError("xi is 0 or infinite for these monodromy data")
    xi = num / den
    vs = cmath.log(xi) / TWO_PI_I
    return UpsilonIngredients(nu=nu, lam=lam, nuSigma=nS, xi=xi, varsigma=vs, sigmaBar=sb)


def barnes_prefactor_log(m: PVIMonodromy, sigma_bar) -> complex:
    """log of the Barnes G double product and the G(1+-2 sigma) ratio."""
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    sb = complex(sigma_bar)
    acc = 0j
    for e in (1, -1):
        for ep in (1, -1):
            acc += log_barnes_g(1 + e * sb + ep * tht - e * ep * th1)
            acc += log_barnes_g(1 + e * sb + ep * th0 - e * ep * thi)
            acc -= log_barnes_g(1 + e * s + ep * tht + e * ep * th0)
            acc -= log_barnes_g(1 + e * s + ep * th1 + e * ep * thi)
        acc += log_barnes_g(1 + 2 * e * s) - log_barnes_g(1 + 2 * e * sb)
    return acc


def log_upsilon_hat(ing: UpsilonIngredients, shift: int = 0) -> complex:
    """log of prod_k Ghat(vs + nu_k) / Ghat(vs + lam_k), vs shifted by an integer."""
    vs = ing.varsigma + shift
    acc = 0j
    for a, b in zip(ing.nu, ing.lam):
        acc += log_g_hat(vs + a) - log_g_hat(vs + b)
    return acc


def log_upsilon_pvi(m: PVIMonodromy, crossed: CrossedMonodromy | None = None) -> complex:
    """log of the connection constant, evaluated entirely in log space.

    The imaginary part is defined modulo 2 pi.  Raises PoleError when a
    Barnes function argument hits a non-positive integer.
    """
    c = crossed if crossed is not None else crossing(m)
    ing = upsilon_ingredients(m, c)
    return barnes_prefactor_log(m, c.sigmaBar) + log_upsilon_hat(ing)


def upsilon_pvi(m: PVIMonodromy, crossed: CrossedMonodromy | None = None) -> complex:
    """Connection constant between the tau asymptotics at t = 0 and t = 1."""
    return cmath.exp(log_upsilon_pvi(m, crossed))
