"""Time the pure-Python kernels against the compiled ones on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

from wtensor.kernels import _pykernels as py
from wtensor.kernels import block_table, mfil_table

try:
    from wtensor.kernels import _ckernels as ck
except ImportError:
    ck = None

CASES = [
    ("digit_census mfil k=3 n=6", "digit_census", (6, mfil_table(3))),
    ("digit_census block k=3 n=6", "digit_census", (6, block_table(3))),
    ("cover_structure_count n=7 lam=2", "cover_structure_count", (7, 2, [1, 1, 2, 2, 1, 1, 2, 1], [1, 2, 1, 1, 2, 1, 1, 1])),
    ("cov_census a=3 b=3 n=5", "cov_census", (3, 3, 5)),
    ("image_census p=2 n=4 a=2", "image_census", (2, 4, 2)),
    ("kernel_census p=3 n=3 b=1", "kernel_census", (3, 3, 1)),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':36s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, name, argv in CASES:
        t_py = min(timeit.repeat(lambda: getattr(py, name)(*argv), number=1, repeat=args.repeat))
        if ck is None:
            print(f"{label:36s} {t_py:10.4f} {'n/a':>11s} {'n/a':>8s}")
            continue
        assert getattr(py, name)(*argv) == getattr(ck, name)(*argv), label
        t_c = min(timeit.repeat(lambda: getattr(ck, name)(*argv), number=1, repeat=args.repeat))
        print(f"{label:36s} {t_py:10.4f} {t_c:11.4f} {t_py / max(t_c, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
