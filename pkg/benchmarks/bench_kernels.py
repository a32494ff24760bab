"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from graphcomp import _kernels as K


def best_of(fn, repeat):
    fn()  # warm-up, also triggers jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    for n in (1_000, 10_000, 100_000):
        edges = rng.integers(0, n, size=(n, 2), dtype=np.int64)
        edges = edges[edges[:, 0] != edges[:, 1]]
        yield f"label_components n={n}", (
            lambda n=n, e=edges: K.label_components_numpy(n, e),
            lambda n=n, e=edges: K.label_components_numba(n, e),
        )
    for stages in (500, 2_000, 8_000):
        f = rng.permutation(2 * stages)[: stages - 1].astype(np.int64)
        yield f"fc_attention stages={stages}", (
            lambda f=f, s=stages: K.fc_attention_numpy(f, s),
            lambda f=f, s=stages: K.fc_attention_numba(f, s),
        )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K._HAVE_NUMBA:
        raise SystemExit("numba is not importable")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, (plain, jit) in cases(rng):
        assert np.array_equal(plain(), jit())
        a, b = best_of(plain, args.repeat), best_of(jit, args.repeat)
        print(f"{name:32} {a:10.5f} {b:10.5f} {a / b:8.1f}")


if __name__ == "__main__":
    main()
