"""Wall-clock comparison of the compiled and pure-Python ODE kernels.

Runs the two production workloads (the PVI Schlesinger run at the
reference point and the PII run on [-T, T]) through both kernels and
prints the best of several repeats, the speed-up, and the largest
difference between the two results.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from isotau import _ode, _pykernels
from isotau.pii import PIIStokes, _variational_rows, u_asymptotic
from isotau.pvi_monodromy import PVIMonodromy, ThetaData
from isotau.pvi_schlesinger import _logit, _pack, initial_data

try:
    from isotau import _kernels
except ImportError:
    _kernels = None


def schlesinger_case():
    m = PVIMonodromy.create(ThetaData(0.11, 0.17, 0.23, 0.31), 0.13, eta=0.4)
    y0, p = _pack(initial_data(m, 1e-4))
    return "PVI Schlesinger, t0 = 1e-4, tol 1e-10", (
        _ode.SYS_SCHLESINGER, y0, p, _logit(1e-4), _logit(1 - 1e-4), 1e-10, 1e-10)


def pii_case(T):
    s = PIIStokes.from_s1_s3(0.1j, 0.1j)
    u, ut = u_asymptotic(s, -T, side=-1, check=False)
    y0 = np.zeros(8, dtype=complex)
    y0[0], y0[1] = u, 2 * ut
    y0[3:5], y0[5:7] = _variational_rows(s, -T)
    return f"PII with variations, T = {T:g}, tol 1e-11", (
        _ode.SYS_PII, y0, [0j], -T, T, 1e-11, 1e-11)


def best_time(impl, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = _ode.integrate(*args, impl=impl)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; nothing to compare")
        return
    print(f"{'workload':45s} {'steps':>7s} {'cython s':>10s} {'python s':>10s} "
          f"{'speed-up':>9s} {'max |diff|':>11s}")
    for name, case in (schlesinger_case(), pii_case(40.0), pii_case(80.0)):
        tc, (xs, yc, *_rest) = best_time(_kernels, case, args.repeat)
        tp, (_, yp, *_rest) = best_time(_pykernels, case, args.repeat)
        diff = float(np.max(np.abs(yc - yp))) if yc.shape == yp.shape else float("nan")
        print(f"{name:45s} {len(xs) - 1:7d} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x {diff:11.2e}")


if __name__ == "__main__":
    main()
