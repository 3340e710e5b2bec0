"""Numerical Schlesinger flow for four Fuchsian points and the numeric
connection constant.

The residues A0, A1 are integrated in the logit time ``x = ln(t/(1-t))``
which makes both ends of (0, 1) equally resolved; At is eliminated via
``At = -A_inf - A0 - A1``.  The log-derivative of the tau function is
accumulated alongside the state.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import _ode
from .errors import PoleEncountered, ToleranceError
from .pvi_monodromy import PVIMonodromy, crossing
from .pvi_parametrix import ParametrixData, epsilon_correction
from .pvi_tau import log_upsilon_pvi, tau_expansion_one, tau_expansion_zero

__all__ = [
    "SchlesingerState",
    "Trajectory",
    "NumericUpsilon",
    "initial_data",
    "integrate",
    "upsilon_numeric",
    "write_trajectory_csv",
]

MAX_RETRIES = 3


@dataclass(frozen=True)
class SchlesingerState:
    t: float
    A0: np.ndarray
    At: np.ndarray
    A1: np.ndarray

    @property
    def A_inf(self) -> np.ndarray:
        return -(self.A0 + self.At + self.A1)

    def time_hamiltonian(self) -> complex:
        """Tr(At A0)/t + Tr(At A1)/(t - 1)."""
        t = self.t
        return (np.trace(self.At @ self.A0) / t + np.trace(self.At @ self.A1) / (t - 1.0)).item()


def _logit(t):
    return math.log(t) - math.log1p(-t)


def _expit(x):
    if x >= 0:
        e = math.exp(-x)
        return 1.0 / (1.0 + e)
    e = math.exp(x)
    return e / (1.0 + e)


def _conj(P, A):
    return P @ A @ np.linalg.inv(P)


def initial_data(m: PVIMonodromy, t0: float, sE=1.0) -> SchlesingerState:
    """Residue matrices at small t0 assembled from the two parametrices."""
    t0 = float(t0)
    if not 0.0 < t0 <= 0.01:
        raise ValueError(f"t0 must lie in (0, 0.01], got {t0}")
    if abs(m.sigma.real) >= 0.5:
        raise ValueError("initial data need |Re sigma| < 1/2")
    d = ParametrixData.build(m, sE=sE, with_bar=False)
    eps, E = epsilon_correction(d, t0)
    g = d.gE01
    q0 = g @ eps - eps @ g
    lt = math.log(t0)
    s = m.sigma
    tS = np.diag([np.exp(s * lt), np.exp(-s * lt)])
    tSi = np.diag([np.exp(-s * lt), np.exp(s * lt)])
    one = np.eye(2, dtype=complex)
    A0 = _conj(one - q0, tS @ d.A0I @ tSi)
    At = _conj(one - q0 + g * t0, tS @ d.A1I @ tSi)
    A1 = _conj(one + E, d.A1E.astype(complex))
    return SchlesingerState(t0, A0, At, A1)


@dataclass
class Trajectory:
    t: np.ndarray
    A0: np.ndarray          # (n, 2, 2)
    A1: np.ndarray
    At: np.ndarray
    logtau: np.ndarray      # running integral of the time Hamiltonian
    A_inf: np.ndarray
    nfev: int = 0
    retries: int = 0
    tol: float = 0.0

    def state(self, k: int) -> SchlesingerState:
        return SchlesingerState(float(self.t[k]), self.A0[k], self.At[k], self.A1[k])

    def hamiltonian(self) -> np.ndarray:
        t = self.t
        tr0 = np.einsum("nij,nji->n", self.At, self.A0)
        tr1 = np.einsum("nij,nji->n", self.At, self.A1)
        return tr0 / t + tr1 / (t - 1.0)

    def spectrum_drift(self, relative: bool = False) -> float:
        """Largest change of det(A_nu) along the path, nu = 0, t, 1.

        With ``relative`` each change is divided by max(1, max |A_nu|^2),
        the size of the products that cancel inside the determinant.
        """
        worst = 0.0
        for arr in (self.A0, self.At, self.A1):
            det = arr[:, 0, 0] * arr[:, 1, 1] - arr[:, 0, 1] * arr[:, 1, 0]
            d = float(np.max(np.abs(det - det[0])))
            if relative:
                d /= max(1.0, float(np.max(np.abs(arr))) ** 2)
            worst = max(worst, d)
        return worst

    def sum_drift(self) -> float:
        tot = self.A0 + self.At + self.A1
        return float(np.max(np.abs(tot - tot[0])))


def _pack(s: SchlesingerState):
    y0 = np.concatenate([s.A0.ravel(), s.A1.ravel(), [0j]])
    return y0, s.A_inf.ravel()


def integrate(s: SchlesingerState, t1: float, tol: float = 1e-10) -> Trajectory:
    """Integrate the Schlesinger system from ``s.t`` to ``t1`` in (0, 1).

    A step-size collapse or a non-finite state is retried at a tolerance
    ten times smaller, at most three times, before being reported as a
    zero of the tau function on the path.
    """
    if not 0.0 < t1 < 1.0:
        raise ValueError("t1 must lie in (0, 1)")
    y0, p = _pack(s)
    x0, x1 = _logit(s.t), _logit(t1)
    rtol = tol
    last_x = x0
    for attempt in range(MAX_RETRIES + 1):
        xs, ys, status, nfev, _ = _ode.integrate(
            _ode.SYS_SCHLESINGER, y0, p, x0, x1, rtol, rtol)
        if status == _ode.STATUS_OK:
            break
        last_x = float(xs[-1])
        if status == _ode.STATUS_MAX_STEPS:
            raise ToleranceError(f"step budget exhausted near t = {_expit(last_x):.6g}")
        rtol *= 0.1
    else:
        loc = _expit(last_x)
        raise PoleEncountered(f"step size collapsed near t = {loc:.10g}", loc)
    n = len(xs)
    t = np.array([_expit(x) for x in xs])
    A0 = ys[:, 0:4].reshape(n, 2, 2)
    A1 = ys[:, 4:8].reshape(n, 2, 2)
    Ainf = s.A_inf
    At = -Ainf[None, :, :] - A0 - A1
    return Trajectory(t=t, A0=A0, A1=A1, At=At, logtau=ys[:, 8], A_inf=Ainf,
                      nfev=int(nfev), retries=attempt, tol=rtol)


@dataclass
class NumericUpsilon:
    value: complex
    log_value: complex
    closed_form: complex
    trajectory: Trajectory = field(repr=False)

    @property
    def rel_error(self) -> float:
        return abs(self.value / self.closed_form - 1.0)


def upsilon_numeric(m: PVIMonodromy, t0: float = 1e-4, tol: float = 1e-10,
                    sE=1.0) -> NumericUpsilon:
    """Connection constant from a numerical run between t0 and 1 - t0.

    The integral of the time Hamiltonian is combined with the known
    short-distance forms at both ends, through the linear order, so the
    leftover error is of order t0^(1 - 2|Re sigma|) times the neglected
    coefficients.
    """
    c = crossing(m)
    traj = integrate(initial_data(m, t0, sE=sE), 1.0 - t0, tol)
    e0 = tau_expansion_zero(m)
    e1 = tau_expansion_one(m, c)
    # ln tau(1 - t0) - ln tau(t0) with tau normalised at 0 and at 1
    lg = complex(traj.logtau[-1]) + e0.log_tau(t0) - e1.log_tau(t0)
    closed = log_upsilon_pvi(m, c)
    # bring the imaginary part onto the branch of the closed form
    k = round((lg.imag - closed.imag) / (2 * math.pi))
    lg -= 2j * math.pi * k
    return NumericUpsilon(value=np.exp(lg).item(), log_value=lg,
                          closed_form=np.exp(closed).item(), trajectory=traj)


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Dump t, the real and imaginary parts of A0, At, A1, and the Hamiltonian."""
    H = traj.hamiltonian()
    header = ["t"]
    for name in ("A0", "At", "A1"):
        for i in range(2):
            for j in range(2):
                header += [f"re_{name}{i + 1}{j + 1}", f"im_{name}{i + 1}{j + 1}"]
    header += ["re_H", "im_H"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for k in range(len(traj.t)):
            row = [repr(float(traj.t[k]))]
            for arr in (traj.A0, traj.At, traj.A1):
                for z in arr[k].ravel():
                    row += [repr(float(z.real)), repr(float(z.imag))]
            row += [repr(float(H[k].real)), repr(float(H[k].imag))]
            w.writerow(row)
