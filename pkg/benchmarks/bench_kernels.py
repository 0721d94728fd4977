"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 20000]

Each kernel runs once untimed (so numba compilation is excluded), then the
best of ``--repeat`` runs is reported together with the speedup.
"""
import argparse
import timeit

import numpy as np

from sumsetlab._kernels import numba_kernels, numpy_kernels
from sumsetlab.constructions import prop11_generate


def cases(size: int, rng: np.random.Generator):
    sparse = rng.random(size) < 0.02
    dense = rng.random(size) < 0.5
    ternary = prop11_generate(3 ** 9).bits
    offsets = np.array(sorted({k * (k + 1) for k in range(40)}), dtype=np.int64)
    offsets = np.concatenate([offsets - offsets.max(), offsets])
    return {
        "sumset_bits sparse x dense": ("sumset_bits", (sparse, dense)),
        "rep_counts sparse x dense": ("rep_counts", (sparse, dense)),
        "find_3ap ternary (none)": ("find_3ap", (ternary,)),
        "greedy_cover pronic": ("greedy_cover", (offsets, size)),
        "search_residue_subsets n=16": ("search_residue_subsets", (16, 0b1011, 0b0011, 0b0100, True)),
    }


def best_of(fn, args, repeat: int) -> float:
    fn(*args)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if numba_kernels is None:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for label, (name, kargs) in cases(args.size, rng).items():
        a = getattr(numpy_kernels, name)
        b = getattr(numba_kernels, name)
        if not np.array_equal(np.asarray(a(*kargs)), np.asarray(b(*kargs))):
            raise SystemExit(f"{label}: backends disagree")
        ta, tb = best_of(a, kargs, args.repeat), best_of(b, kargs, args.repeat)
        print(f"{label:32} {ta * 1e3:10.2f} {tb * 1e3:10.2f} {ta / tb:8.1f}x")


if __name__ == "__main__":
    main()
