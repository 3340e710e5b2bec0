import cmath
import csv
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotau.errors import GenericityError, IsotauError, ValidityError
from isotau.pii import (
    UPSILON_0,
    UPSILON_HM,
    PIIStokes,
    chi_and_periodicity,
    domega_chart_value,
    expansion_coefficients,
    exponents_from_stokes,
    fourier_B,
    hastings_mcleod_check,
    hastings_mcleod_solution,
    integrate_pii,
    log_upsilon_pii_from_exponents,
    omega_pii,
    u_asymptotic,
    upsilon_pii_closed,
    upsilon_pii_numeric,
    write_trajectory_csv,
)
from isotau.specfun import ZETA_PRIME_M1, log_barnes_g, log_g_hat

S_REF = PIIStokes.from_s1_s3(0.1j, 0.1j)
LOG2 = math.log(2)


def random_stokes(rng, n):
    out = []
    while len(out) < n:
        s1 = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        s3 = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        try:
            s = PIIStokes.from_s1_s3(s1, s3)
            if abs(s.s2.imag) < 0.05:
                continue
            exponents_from_stokes(s)
        except IsotauError:
            continue
        out.append(s)
    return out


STOKES = random_stokes(random.Random(7), 120)


@pytest.fixture(scope="module")
def ref_trajectory():
    return integrate_pii(S_REF, 40.0, 1e-11, variational=True)


# --- Stokes data and exponents ---------------------------------------------

def test_cubic_closure():
    for s in STOKES:
        assert s.cubic_residual < 1e-12
    with pytest.raises(ValueError):
        PIIStokes(0.1, 0.2, 0.3)


def test_reference_exponents():
    assert abs(S_REF.s2 - 0.2j / 1.01) < 1e-15
    e = exponents_from_stokes(S_REF)
    assert abs(e.mu.real) < 1e-15 and abs(e.nu.real) < 1e-15
    assert abs(e.mu - 0.0015836j) < 1e-7
    assert abs(e.nu - 0.51547j) < 1e-5


def test_small_product_gives_small_mu():
    e = exponents_from_stokes(PIIStokes.from_s1_s3(1e-6j, 1e-6j))
    assert abs(e.mu) < 1e-12


def test_hastings_mcleod_rotated_data():
    e = exponents_from_stokes(PIIStokes(0, -1j, -1j))
    assert abs(e.mu) < 1e-15 and abs(e.nu) < 1e-15 and abs(e.eta) < 1e-15
    assert e.sgn == 1


def test_real_s2_rejected():
    with pytest.raises(GenericityError):
        exponents_from_stokes(PIIStokes.from_s1_s2(0.1, 0.3))


def test_exponent_relations_over_samples():
    for s in STOKES:
        e = exponents_from_stokes(s)
        assert max(e.murho_residuals()) < 1e-10
        assert max(e.trigo_residuals()) < 1e-10
        assert abs(cmath.exp(-2j * math.pi * e.mu) - (1 - s.s1 * s.s3)) < 1e-12
        assert abs(cmath.exp(1j * math.pi * e.nu) - 1j * e.sgn * s.s2) < 1e-12


def test_expansion_products_over_samples():
    for s in STOKES:
        e = exponents_from_stokes(s)
        x = expansion_coefficients(s)
        assert abs(x.aPlus00 * x.aMinus00 - 0.5j * e.mu) < 1e-12
        assert abs(x.bPlus11 * x.bMinus11 - 1j * e.nu / (4 * math.sqrt(2))) < 1e-12


def test_expansion_listed_coefficients():
    x = expansion_coefficients(S_REF)
    mu = x.mu
    assert abs(x.aPlus01 - 1j * x.aPlus00 * (-102 * mu * mu + 36 * mu - 5) / 48) < 1e-16
    assert abs(x.aMinus01 - 1j * x.aMinus00 * (102 * mu * mu + 36 * mu + 5) / 48) < 1e-16
    assert abs(x.aPlus11 + x.aPlus00 ** 3 / 4) < 1e-16
    assert abs(x.b04 + 0.75 * x.nu) < 1e-16


# --- asymptotic expansions -------------------------------------------------

def _p2_residual(s, t, h=1e-3):
    side = -1 if t < 0 else 1
    u, _ = u_asymptotic(s, t, side)
    d = [u_asymptotic(s, t + k * h, side)[1] for k in (-2, -1, 1, 2)]
    utt = (8 * (d[2] - d[1]) - (d[3] - d[0])) / (12 * h)
    return abs(utt - 2 * u ** 3 - t * u), abs(u)


def test_expansion_solves_equation_at_minus_40():
    r, au = _p2_residual(S_REF, -40.0)
    assert r < 1e-6 * max(1.0, au)


def test_expansion_residual_decays():
    r40, _ = _p2_residual(S_REF, -40.0)
    r160, _ = _p2_residual(S_REF, -160.0)
    assert r160 < r40 / 10
    p40, u40 = _p2_residual(S_REF, 40.0)
    p160, u160 = _p2_residual(S_REF, 160.0)
    assert p160 / u160 < p40 / u40 / 10


def test_expansion_derivative_is_consistent():
    for t in (-40.0, 40.0):
        h = 1e-3
        u = [u_asymptotic(S_REF, t + k * h)[0] for k in (-2, -1, 1, 2)]
        fd = (8 * (u[2] - u[1]) - (u[3] - u[0])) / (12 * h)
        assert abs(fd - u_asymptotic(S_REF, t)[1]) < 1e-8


def test_zero_data_vanishes():
    u, ut = u_asymptotic(PIIStokes(0, 0, 0), -30.0, side=-1)
    assert u == 0 and ut == 0


def test_plus_leading_term():
    # with Re nu = 0 the oscillating terms have constant modulus, so the
    # deviation from i sqrt(t/2) stays under (|b+| + |b-|) t^(-1/4)
    e = exponents_from_stokes(S_REF)
    x = expansion_coefficients(S_REF)
    bound = abs(x.bPlus11) + abs(x.bMinus11)
    for t in np.linspace(40.0, 640.0, 61):
        u, _ = u_asymptotic(S_REF, t)
        assert abs(e.sgn * u - 1j * math.sqrt(t / 2)) * t ** 0.25 < 1.1 * bound


def test_validity_threshold():
    with pytest.raises(ValidityError):
        u_asymptotic(S_REF, -10.0)
    with pytest.raises(ValidityError):
        u_asymptotic(S_REF, 30.0, side=-1)


# --- integration and invariants ---------------------------------------------

def test_zero_solution():
    tr = integrate_pii(PIIStokes(0, 0, 0), 30.0, 1e-11, variational=False)
    assert np.max(np.abs(tr.u)) == 0 and np.max(np.abs(tr.H)) == 0


def test_hamiltonian_identities(ref_trajectory):
    tr = ref_trajectory
    assert tr.hamiltonian_drift() < 10 * 1e-11
    assert tr.action_identity_residual() < 10 * 1e-11


def test_endpoint_match(ref_trajectory):
    tr = ref_trajectory
    u, _ = u_asymptotic(S_REF, 40.0)
    assert abs(tr.u[-1] - u) < 1.0 / 40.0


def test_domega_constant_and_chart(ref_trajectory):
    tr = ref_trajectory
    w = tr.vs[:, 0] * tr.us[:, 1] - tr.vs[:, 1] * tr.us[:, 0]
    assert np.max(np.abs(w - w[0])) < 1e-6
    assert abs(w[0] - domega_chart_value(S_REF)) < 1e-5


def test_omega_zero_solution():
    z = np.zeros(3)
    zz = np.zeros((3, 2))
    for comp in omega_pii(np.array([-1.0, 0.0, 1.0]), z, z, zz, zz):
        assert np.all(comp == 0)


def test_omega_time_component(ref_trajectory):
    tr = ref_trajectory
    wt, _, _ = omega_pii(tr.t, tr.u, tr.v, tr.us, tr.vs)
    assert np.max(np.abs(wt - tr.H)) < 1e-12 * max(1.0, np.max(np.abs(tr.H)))


def _boundary_F(s, T, t_end):
    tr = integrate_pii(s, T, 1e-13, variational=True, t_end=t_end)
    G = tr.H * tr.t - tr.u * tr.v / 2
    return tr.Q[-1] - tr.Q[0] - (2.0 / 3.0) * (G[-1] - G[0]), tr


@pytest.mark.parametrize("j", [0, 1])
def test_action_boundary_identity(j):
    T, t_end, h = 30.0, 8.0, 1e-5
    _, tr = _boundary_F(S_REF, T, t_end)
    d = [0, 0]
    d[j] = h
    sp = PIIStokes.from_s1_s2(S_REF.s1 + d[0], S_REF.s2 + d[1])
    sm = PIIStokes.from_s1_s2(S_REF.s1 - d[0], S_REF.s2 - d[1])
    fd = (_boundary_F(sp, T, t_end)[0] - _boundary_F(sm, T, t_end)[0]) / (2 * h)
    ut, us = tr.v / 2, tr.us[:, j]
    rhs = 2 * ut[-1] * us[-1] - 2 * ut[0] * us[0]
    assert abs(fd - rhs) < 1e-6 * max(1.0, abs(rhs))


def test_csv_dump(tmp_path):
    tr = integrate_pii(S_REF, 30.0, 1e-8, variational=False)
    path = tmp_path / "pii.csv"
    write_trajectory_csv(tr, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "re_u", "im_u", "re_v", "im_v", "re_H", "im_H"]
    assert len(rows) == len(tr.t) + 1


# --- connection constants ---------------------------------------------------

def test_upsilon_zero_exponents():
    want = cmath.exp(LOG2 / 24 + ZETA_PRIME_M1 + 1j * math.pi / 24)
    got = cmath.exp(log_upsilon_pii_from_exponents(0, 0, 0))
    assert abs(got - want) < 1e-12
    assert abs(got - UPSILON_0) < 1e-13
    assert abs(got - (0.865 + 0.114j)) < 1e-3
    assert abs(abs(got) - UPSILON_HM) < 1e-13
    assert abs(upsilon_pii_closed(PIIStokes(0, -1j, -1j)) - UPSILON_0) < 1e-13


def _closed_form_by_hand(mu, nu, eta):
    lg = (LOG2 / 24 + ZETA_PRIME_M1 + 1j * math.pi / 24
          + (3 * mu * mu - 1.75 * nu * nu) * LOG2 - (mu + nu / 2) * math.log(2 * math.pi)
          + 0.25j * math.pi * (eta * eta + 2 * mu * mu + 2 * eta * nu - 8 * mu * eta)
          + log_barnes_g(1 - nu) + log_g_hat(eta) - 2 * log_barnes_g(1 - mu) - 2 * log_g_hat((eta - nu) / 2))
    return lg


def test_closed_form_product():
    for s in STOKES[:40]:
        e = exponents_from_stokes(s)
        a = log_upsilon_pii_from_exponents(e.mu, e.nu, e.eta)
        b = _closed_form_by_hand(e.mu, e.nu, e.eta)
        assert abs(cmath.exp(a - b) - 1) < 1e-12


def test_eta_shift_by_two():
    """Shift eta by 2 and undo it with two applications of the Ghat recursion."""
    for s in STOKES[:40]:
        e = exponents_from_stokes(s)
        mu, nu, eta = e.mu, e.nu, e.eta
        direct = log_upsilon_pii_from_exponents(mu, nu, eta)
        shifted = log_upsilon_pii_from_exponents(mu, nu, eta + 2)
        # Ghat(z+1) = -pi/sin(pi z) Ghat(z)
        dg_eta = cmath.log(math.pi ** 2 / (cmath.sin(math.pi * eta) * cmath.sin(math.pi * (eta + 1))))
        dg_half = cmath.log(-math.pi / cmath.sin(math.pi * (eta - nu) / 2))
        quad = 0.25j * math.pi * ((eta + 2) ** 2 - eta ** 2 + 4 * nu - 16 * mu)
        rebuilt = direct + quad + dg_eta - 2 * dg_half
        assert abs(cmath.exp(shifted - rebuilt) - 1) < 1e-11


def test_chi_periodicity_over_samples():
    for s in STOKES:
        rep = chi_and_periodicity(s)
        assert rep.residualMinus < 1e-10
        assert rep.residualPlus < 1e-10
        assert rep.upsilonRatioResidual < 1e-11


def test_chi_rho_values():
    rep = chi_and_periodicity(S_REF)
    s = S_REF
    assert abs(rep.expIRhoMinus - s.s3 ** 2 / (2 * math.pi * (1 - s.s1 * s.s3))) < 1e-14
    assert abs(rep.expIRhoPlus - (1 + s.s1 * s.s2) / math.sqrt(2 * math.pi)) < 1e-14


def test_numeric_upsilon_reference():
    r40 = upsilon_pii_numeric(S_REF, T=40.0)
    r80 = upsilon_pii_numeric(S_REF, T=80.0)
    assert r40.rel_error < 1e-2
    assert r80.rel_error < r40.rel_error


def test_uncorrected_numeric_upsilon_trend():
    """Without the endpoint correction the error is set by the oscillating
    remainder and decays like T^(-3/4); it still shrinks with T."""
    r40 = upsilon_pii_numeric(S_REF, T=40.0, endpoint_correction=False)
    r80 = upsilon_pii_numeric(S_REF, T=80.0, endpoint_correction=False)
    assert r80.raw_rel_error < r40.raw_rel_error < 3e-2


def test_numeric_upsilon_other_data():
    s = PIIStokes.from_s1_s3(0.05j, 0.15j)
    assert upsilon_pii_numeric(s, T=40.0).rel_error < 1e-2


# --- Hastings-McLeod ---------------------------------------------------------

def test_hastings_mcleod():
    rep = hastings_mcleod_check(12.0)
    assert rep.relError < 1e-3
    assert rep.minimum_u > -1e-8


def test_hastings_mcleod_hamiltonian_tails():
    sol = hastings_mcleod_solution(12.0, n=240)
    t, H = sol.t, sol.H
    left = t < -6
    dev = np.abs(H[left] - (t[left] ** 2 / 4 - 1 / (8 * t[left])))
    assert np.max(dev) < 1e-3
    right = t > 6
    assert np.max(np.abs(H[right] * t[right]) * np.exp(4 / 3 * t[right] ** 1.5)) < 1.0


def test_hastings_mcleod_short_interval():
    with pytest.raises(ValidityError):
        hastings_mcleod_solution(5.0)


def test_fourier_coefficient_at_zero():
    assert abs(fourier_B(0, -30.0) - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.3, 0.3), st.floats(-0.3, 0.3), st.floats(-0.3, 0.3), st.floats(-0.3, 0.3))
def test_stokes_chart_round_trip(a, b, c, d):
    s1, s3 = complex(a, b), complex(c, d)
    try:
        s = PIIStokes.from_s1_s3(s1, s3)
        back = PIIStokes.from_s1_s2(s.s1, s.s2)
    except GenericityError:
        return
    assert abs(back.s3 - s3) < 1e-12
