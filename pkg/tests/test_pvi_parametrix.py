import cmath
import math

import numpy as np
import pytest
from conftest import pvi_samples

from isotau.errors import ResonanceError
from isotau.pvi_monodromy import PVIMonodromy, ThetaData, crossing, matrices_from_darboux
from isotau.pvi_parametrix import (
    ParametrixData,
    build_A1,
    build_g_coefficients,
    connection_matrix_C0i,
    connection_matrix_Cinf,
    epsilon_correction,
    gamma_ratio_e,
    r_from_s,
    s_from_r,
)
from isotau.specfun import log_gamma

SAMPLES = pvi_samples(202)


def _comm(a, b):
    return a @ b - b @ a


def _build(m, se=1.0):
    return ParametrixData.build(m, sE=se, with_bar=False)


def test_round_trip_r_s():
    for m in SAMPLES:
        se, si = 0.8 + 0.3j, (0.8 + 0.3j) * m.exp_i_eta
        re, ri = r_from_s(m, se, si)
        se2, si2 = s_from_r(m, re, ri)
        assert abs(se2 / se - 1) < 1e-12 and abs(si2 / si - 1) < 1e-12


def test_gamma_ratio_equal_thetas():
    m = PVIMonodromy.create(ThetaData(0.1, 0.2, 0.27, 0.27), 0.18 + 0.03j, eta=0.5)
    s, th = m.sigma, 0.27
    special = cmath.exp(log_gamma(1 - 2 * s) + log_gamma(1 + 2 * th + s) + log_gamma(1 + s)
                        - log_gamma(1 + 2 * s) - log_gamma(1 + 2 * th - s) - log_gamma(1 - s))
    assert abs(gamma_ratio_e(m) / special - 1) < 1e-13


def test_kappa_is_ratio():
    for m in SAMPLES:
        d = _build(m, 1.7 - 0.4j)
        assert abs(d.kappa / (d.rI / d.rE) - 1) < 1e-11
        assert abs(d.sI / d.sE - m.exp_i_eta) < 1e-12


def test_kappa_bar_through_crossed_data(reference_monodromy):
    d = ParametrixData.build(reference_monodromy)
    mb = crossing(reference_monodromy).to_monodromy()
    db = _build(mb)
    assert abs(d.kappaBar / (db.rI / db.rE) - 1) < 1e-11


def test_A1_shape(reference_monodromy):
    m = reference_monodromy
    th0, tht, th1, thi = m.theta.as_tuple()
    d = _build(m)
    assert abs(np.linalg.det(d.A1E) + th1 ** 2) < 1e-14
    assert abs(np.trace(d.S @ d.A1E) - (thi ** 2 - th1 ** 2 - m.sigma ** 2)) < 1e-14
    ev = np.sort_complex(np.linalg.eigvals(d.A1I))
    assert np.max(np.abs(ev - np.sort_complex(np.array([-tht, tht])))) < 1e-12


def test_spectra_over_samples():
    for m in SAMPLES:
        d = _build(m)
        th0, tht, th1, thi = m.theta.as_tuple()
        for M, th in ((d.A1E, th1), (d.A1I, tht), (d.A0I, th0), (-(d.S + d.A1E), thi)):
            assert abs(np.trace(M)) < 1e-12
            assert abs(np.linalg.det(M) + th * th) < 1e-12


def test_g_relations_over_samples():
    worst = 0.0
    for m in SAMPLES:
        d = _build(m, 0.5 + 0.5j)
        r1 = d.gE01 + _comm(d.gE01, d.S) + d.A1E
        r2 = d.gIinf1 - _comm(d.gIinf1, d.S) + d.A1I
        worst = max(worst, np.max(np.abs(r1)), np.max(np.abs(r2)))
    assert worst < 1e-11


def test_g_entries_as_printed(reference_monodromy):
    m = reference_monodromy
    th0, tht, th1, thi = m.theta.as_tuple()
    s = m.sigma
    d = _build(m)
    assert abs(d.gE01[0, 0] - (s * s + th1 * th1 - thi * thi) / (2 * s)) < 1e-15
    want = d.rI * ((tht - s) ** 2 - th0 ** 2) / (2 * s * (2 * s + 1))
    assert abs(d.gIinf1[0, 1] - want) < 1e-15


@pytest.mark.parametrize("sigma", [0.5 - 1e-11, 1e-11])
def test_resonance(sigma):
    m = PVIMonodromy(ThetaData(0.1, 0.2, 0.3, 0.4), 0.2, 1.0)
    object.__setattr__(m, "sigma", complex(sigma))
    with pytest.raises(ResonanceError):
        build_g_coefficients(m, 1.0, 1.0)


def test_build_A1_zero_sigma():
    m = PVIMonodromy(ThetaData(0.1, 0.2, 0.3, 0.4), 0.2, 1.0)
    object.__setattr__(m, "sigma", 0j)
    with pytest.raises(ResonanceError):
        build_A1(m, 1.0, 1.0)


def _diag_exp(x):
    e = cmath.exp(2j * math.pi * x)
    return np.diag([e, 1 / e])


def test_connection_matrices_reproduce_monodromy():
    worst = 0.0
    dets = []
    for k, m in enumerate(SAMPLES):
        d = _build(m, 1.3 + 0.2j)
        M0, Mt, M1, Mi = matrices_from_darboux(m, d.sI, d.sE)
        th0, tht, th1, thi = m.theta.as_tuple()
        cA, cB = (1.0, 1.0) if k % 2 else (0.7 - 0.1j, 2.2)
        C = connection_matrix_Cinf(m, d.rE, cA, cB)
        C0 = connection_matrix_C0i(m, d.rI, cB, cA)
        dets.append(abs(np.linalg.det(C)))
        r1 = np.linalg.inv(C) @ _diag_exp(thi) @ C - Mi
        r2 = np.linalg.inv(C0) @ _diag_exp(th0) @ C0 - M0
        scale = max(1.0, np.max(np.abs(Mi)), np.max(np.abs(M0)))
        worst = max(worst, np.max(np.abs(r1)) / scale, np.max(np.abs(r2)) / scale)
    assert worst < 1e-10
    assert min(dets) > 1e-8


def test_connection_row_scaling(reference_monodromy):
    m = reference_monodromy
    d = _build(m)
    a = connection_matrix_Cinf(m, d.rE)
    b = connection_matrix_Cinf(m, d.rE, 3.0, 1.0)
    assert np.allclose(b[0], 3 * a[0], rtol=1e-15) and np.allclose(b[1], a[1], rtol=1e-15)


def test_epsilon_correction(reference_monodromy):
    d = _build(reference_monodromy)
    t = 1e-4
    eps, E = epsilon_correction(d, t)
    assert np.linalg.norm(eps, 2) < 10 ** -2.9
    assert abs(eps[0, 0] - t * d.gIinf1[0, 0]) < 1e-18
    n = np.linalg.norm(eps, 2)
    assert np.linalg.norm(E - eps, 2) < 10 * n * n


def _loop_monodromy(A, B, center, radius=0.5, n=4000):
    # dPhi/dz = (A/z + B/(z-1)) Phi around a circle, classical RK4
    def f(z, y):
        return (A / z + B / (z - 1)) @ y

    y = np.eye(2, dtype=complex)
    dth = 2 * math.pi / n
    def g(t, y):
        w = radius * cmath.exp(1j * t)
        return f(center + w, y) * (1j * w)

    for k in range(n):
        th = k * dth

        k1 = g(th, y)
        k2 = g(th + dth / 2, y + dth / 2 * k1)
        k3 = g(th + dth / 2, y + dth / 2 * k2)
        k4 = g(th + dth, y + dth * k3)
        y = y + dth / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


@pytest.mark.parametrize("idx", range(4))
def test_exterior_system_local_monodromy(idx):
    m = SAMPLES[idx]
    d = _build(m)
    th0, tht, th1, thi = m.theta.as_tuple()
    A = d.S.astype(complex)
    around1 = _loop_monodromy(A, d.A1E, 1.0)
    around0 = _loop_monodromy(A, d.A1E, 0.0)
    both = _loop_monodromy(A, d.A1E, 0.5, radius=1.5)
    assert abs(np.trace(around1) - 2 * cmath.cos(2 * math.pi * th1)) < 1e-8
    assert abs(np.trace(around0) - 2 * cmath.cos(2 * math.pi * m.sigma)) < 1e-8
    assert abs(np.trace(both) - 2 * cmath.cos(2 * math.pi * thi)) < 1e-8
