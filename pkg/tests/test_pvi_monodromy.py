import cmath
import math

import numpy as np
import pytest
from conftest import pvi_samples
from hypothesis import given, settings
from hypothesis import strategies as st

from isotau.errors import GenericityError
from isotau.pvi_monodromy import (
    PVIMonodromy,
    ThetaData,
    _choose_sigma_root,
    check_darboux_bracket,
    crossing,
    exp_i_eta_from_traces,
    matrices_from_darboux,
    traces_from_darboux,
)

SAMPLES = pvi_samples(101)


def test_quarter_point_is_not_degenerate():
    m = PVIMonodromy.create(ThetaData(0.25, 0.25, 0.25, 0.25), 0.25 + 0.01j, eta=0.3)
    tr = traces_from_darboux(m)
    assert abs(tr.quartic_residual()) < 1e-10
    m = PVIMonodromy(ThetaData(0.2, 0.3, 0.15, 0.35), 0.25, 1.0)
    tr = traces_from_darboux(m)
    assert abs(tr.p0t) < 1e-15
    assert abs(tr.quartic_residual()) < 1e-10


@pytest.mark.parametrize("sigma", [0.5, -0.6, 0.0])
def test_sigma_range_rejected(sigma):
    with pytest.raises(GenericityError):
        PVIMonodromy.create(ThetaData(0.1, 0.2, 0.3, 0.4), sigma, eta=0.0)


def test_genericity_rejected():
    # theta0 + thetat + sigma = 1
    with pytest.raises(GenericityError):
        PVIMonodromy.create(ThetaData(0.4, 0.3, 0.1, 0.2), 0.3, eta=0.1)


def test_eta_and_exp_agree():
    th = ThetaData(0.1, 0.2, 0.3, 0.4)
    a = PVIMonodromy.create(th, 0.2, eta=0.7)
    b = PVIMonodromy.create(th, 0.2, exp_i_eta=cmath.exp(0.7j))
    assert abs(a.exp_i_eta - b.exp_i_eta) < 1e-15
    assert abs(a.eta - 0.7) < 1e-15


def test_quartic_over_samples():
    worst = max(abs(traces_from_darboux(m).quartic_residual()) for m in SAMPLES)
    assert worst < 1e-10


def test_traces_match_matrix_products():
    worst = 0.0
    for m in SAMPLES:
        tr = traces_from_darboux(m)
        M0, Mt, M1, Mi = matrices_from_darboux(m, m.exp_i_eta, 1.0)
        worst = max(worst, abs(np.trace(Mt @ M1) - tr.pt1), abs(np.trace(M0 @ M1) - tr.p01),
                    abs(np.trace(Mt @ M0) - tr.p0t))
    assert worst < 1e-10


def test_matrix_properties():
    for m in SAMPLES[:40]:
        se = 0.7 - 0.2j
        mats = matrices_from_darboux(m, se * m.exp_i_eta, se)
        for M, th in zip(mats, m.theta.as_tuple()):
            assert abs(np.linalg.det(M) - 1) < 1e-12
            assert abs(np.trace(M) - 2 * cmath.cos(2 * math.pi * th)) < 1e-12
        M0, Mt, M1, Mi = mats
        e = cmath.exp(2j * math.pi * m.sigma)
        assert np.max(np.abs(Mt @ M0 - np.diag([e, 1 / e]))) < 1e-11
        assert np.max(np.abs(Mi @ M1 @ Mt @ M0 - np.eye(2))) < 1e-10


def test_matrices_reject_wrong_ratio(reference_monodromy):
    with pytest.raises(ValueError):
        matrices_from_darboux(reference_monodromy, 1.0, 1.0)


def test_crossing_properties():
    for m in SAMPLES:
        tr = traces_from_darboux(m)
        c = crossing(m)
        bar = c.tracesBar
        assert abs(c.sigmaBar.real) < 0.5
        assert abs(2 * cmath.cos(2 * math.pi * c.sigmaBar) - tr.pt1) < 1e-10
        assert abs(bar.quartic_residual()) < 1e-10
        assert (bar.p0, bar.pt, bar.p1, bar.pInf, bar.p0t, bar.pt1) == \
            (tr.p1, tr.pt, tr.p0, tr.pInf, tr.pt1, tr.p0t)
        # the crossed point reproduces its own traces
        direct = traces_from_darboux(c.to_monodromy())
        assert max(abs(a - b) for a, b in zip(direct.as_tuple(), bar.as_tuple())) < 1e-9


def test_crossing_twice_restores_p01():
    for m in SAMPLES:
        c2 = crossing(crossing(m).to_monodromy())
        assert abs(c2.tracesBar.p01 - traces_from_darboux(m).p01) < 1e-9
        assert abs(c2.tracesBar.p0t - traces_from_darboux(m).p0t) < 1e-9


def test_sigma_root_tie_break():
    # p = 2 cosh(2 pi y) > 2 gives purely imaginary roots
    x = _choose_sigma_root(2 * math.cosh(2 * math.pi * 0.1))
    assert abs(x.real) < 1e-14 and x.imag > 0
    x = _choose_sigma_root(2 * math.cos(2 * math.pi * 0.3))
    assert abs(x - 0.3) < 1e-14


def test_exp_i_eta_round_trip():
    for m in SAMPLES[:50]:
        tr = traces_from_darboux(m)
        back = exp_i_eta_from_traces(m.theta, m.sigma, tr.pt1, tr.p01)
        assert abs(back / m.exp_i_eta - 1) < 1e-10


def test_bracket_reference(reference_monodromy):
    assert check_darboux_bracket(reference_monodromy, 1e-5) < 1e-6
    r1 = check_darboux_bracket(reference_monodromy, 1e-4)
    r2 = check_darboux_bracket(reference_monodromy, 2e-4)
    assert abs(r2 / r1 - 4) < 0.5


def test_bracket_over_samples():
    """The finite-difference error is pure second-order truncation: the
    h = 1e-6 residual is below 1e-6 everywhere, most samples already pass
    at 1e-5, and the error drops by 100 from h = 1e-4 to 1e-5."""
    small = 0
    for m in SAMPLES:
        a = check_darboux_bracket(m, 1e-5)
        b = check_darboux_bracket(m, 1e-4)
        c = check_darboux_bracket(m, 2e-4)
        assert check_darboux_bracket(m, 1e-6) < 1e-6
        small += a < 1e-6
        if b > 1e-8:  # above the roundoff floor the ratio is clean
            assert abs(c / b - 4) < 0.5
        if b > 1e-7:
            assert 80 < b / a < 120
    assert small >= 0.95 * len(SAMPLES)


def test_bracket_step_range(reference_monodromy):
    with pytest.raises(ValueError):
        check_darboux_bracket(reference_monodromy, 1e-2)


def test_bracket_eta_period(reference_monodromy):
    m = reference_monodromy
    shifted = PVIMonodromy.create(m.theta, m.sigma, eta=0.4 + 2 * math.pi)
    assert abs(check_darboux_bracket(m, 1e-5) - check_darboux_bracket(shifted, 1e-5)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-0.4, 0.4), min_size=4, max_size=4),
       st.floats(0.05, 0.45), st.floats(-3, 3))
def test_quartic_property(theta, sigma, eta):
    try:
        m = PVIMonodromy.create(ThetaData(*theta), sigma, eta=eta)
    except GenericityError:
        return
    tr = traces_from_darboux(m)
    assert abs(tr.quartic_residual()) < 1e-10 * max(1.0, max(abs(x) for x in tr.as_tuple()) ** 2)
