"""Compare the accelerated kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
Set RPD_DISABLE_NUMBA=1 to verify the fallback is what actually runs.
"""

import time

import numpy as np

from rpdepth import _kernels as K


def bench(label, fn, *args, repeat=5):
    fn(*args)  # warm-up (JIT compile on the accelerated path)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    best = min(times)
    print(f"{label:<42s} {best * 1e3:9.2f} ms")
    return best


def main():
    rng = np.random.default_rng(0)
    n, d, m, nq = 550, 101, 10000, 550
    X = rng.standard_normal((n, d))
    D = rng.standard_normal((m, d))
    D /= np.linalg.norm(D, axis=1, keepdims=True)
    P = np.ascontiguousarray(X @ D.T)
    med, mad = K.median_mad_columns_numpy(P)
    Q = np.ascontiguousarray(rng.standard_normal((nq, d)) @ D.T)

    print(f"numba enabled: {K.NUMBA_ENABLED}   "
          f"(n={n}, d={d}, M={m}, queries={nq})")
    if K.NUMBA_ENABLED:
        a = bench("median/MAD per direction (numba)",
                  K.median_mad_columns_numba, P)
        b = bench("median/MAD per direction (numpy)",
                  K.median_mad_columns_numpy, P)
        print(f"{'speedup':<42s} {b / a:9.2f}x"
              "   (numpy is bound by default: vectorized sort wins)")
        a = bench("max outlyingness reduction (numba)",
                  K.max_out_numba, Q, med, mad)
        b = bench("max outlyingness reduction (numpy)",
                  K.max_out_numpy, Q, med, mad)
        print(f"{'speedup':<42s} {b / a:9.2f}x")
        ma = K.median_mad_columns_numba(P)
        mb = K.median_mad_columns_numpy(P)
        same = (np.array_equal(ma[0], mb[0]) and np.array_equal(ma[1], mb[1]))
        print(f"paths bit-identical: {same}")
    else:
        bench("median/MAD per direction (numpy)", K.median_mad_columns_numpy, P)
        bench("max outlyingness reduction (numpy)", K.max_out_numpy, Q, med, mad)


if __name__ == "__main__":
    main()
