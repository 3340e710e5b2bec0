import random

import pytest

from isotau.errors import IsotauError
from isotau.pvi_monodromy import PVIMonodromy, ThetaData, crossing

N_SAMPLES = 120


def rand_complex(rng, re, im):
    return complex(rng.uniform(-re, re), rng.uniform(-im, im))


def random_pvi(rng, sigma_re=(0.05, 0.42), with_crossing=True):
    """A random generic monodromy point; retries until crossing succeeds."""
    while True:
        theta = ThetaData(*[rand_complex(rng, 0.4, 0.1) for _ in range(4)])
        sigma = complex(rng.uniform(*sigma_re), rng.uniform(-0.1, 0.1))
        eta = rand_complex(rng, 2.0, 0.3)
        try:
            m = PVIMonodromy.create(theta, sigma, eta=eta)
            if with_crossing:
                c = crossing(m)
                if abs(c.sigmaBar.real) > 0.45 or abs(c.sigmaBar) < 0.02:
                    continue
        except IsotauError:
            continue
        return m


def pvi_samples(seed, n=N_SAMPLES, **kw):
    rng = random.Random(seed)
    return [random_pvi(rng, **kw) for _ in range(n)]


@pytest.fixture(scope="session")
def reference_monodromy():
    return PVIMonodromy.create(ThetaData(0.11, 0.17, 0.23, 0.31), 0.13, eta=0.4)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
