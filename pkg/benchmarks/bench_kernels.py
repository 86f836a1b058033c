"""Compare the numba and numpy kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload is run on both backends.  Outputs are checked for exact
agreement before timings are reported.  The numba column excludes JIT
compilation, which happens once in a warm-up call.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from steinberg_gg import build_instance
from steinberg_gg.kernels import backend_module


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _spin(k, inst, sigma):
    cf, M = inst.cf, inst.module
    N = M.N
    basis = np.zeros((N + 1, N), dtype=np.int64)
    piv = np.zeros(N + 1, dtype=np.int64)
    r, queue = 0, [inst.seed(sigma)]
    while queue and r < N:
        v = queue.pop(0).copy()
        r2 = k.reduce_insert(basis, piv, r, v, cf.zech, cf.unit_order, cf.minus_one)
        if r2 > r:
            r = r2
            queue.extend(a(v) for a in M.actions)
    return r


def workloads():
    big = build_instance("gl", 3, 3, 2)
    wide = build_instance("gl", 4, 2, 3)
    cf = big.cf
    rng = np.random.default_rng(0)
    dense = rng.integers(0, cf.order, (200, 200))
    P = wide.provider
    mats = np.array([P.random_element(rng) for _ in range(20_000)])
    F = P.F
    tabs = (F.add_table, F.mul_table, F.neg_table, F.inv_table)
    yield "rref 200x200 over F_4", lambda k: k.rref(dense, cf.zech, cf.unit_order, cf.minus_one)
    yield "St Gram product, GL_3(3)", lambda k: k.matmul(
        big.module.st_vectors, np.ascontiguousarray(big.module.st_vectors.T),
        cf.zech, cf.unit_order)
    yield "spin S_sigma, GL_3(3) ell=2", lambda k: _spin(k, big, big.characters[0])
    yield "spin S_sigma, GL_4(2) ell=3", lambda k: _spin(k, wide, wide.characters[0])
    yield "canonical cosets, 20000 x GL_4(2)", lambda k: k.canon_cosets(mats, *tabs)


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    npk, nbk = backend_module("numpy"), backend_module("numba")
    print(f"{'workload':<38} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8}")
    for name, fn in workloads():
        fn(nbk)  # JIT warm-up
        t_np, out_np = _time(lambda: fn(npk), args.repeat)
        t_nb, out_nb = _time(lambda: fn(nbk), args.repeat)
        if not _same(out_np, out_nb):
            raise SystemExit(f"backends disagree on {name!r}")
        print(f"{name:<38} {t_np * 1e3:>11.2f} {t_nb * 1e3:>11.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
