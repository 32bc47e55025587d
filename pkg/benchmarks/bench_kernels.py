"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--limit 1000000] [--repeat 3]

Both backends are imported directly, so the result does not depend on
GENUSLAB_PURE. Outputs are compared before any timing is reported.
"""
import argparse
import sys
import timeit

import numpy as np

from genuslab import _pykernels

try:
    from genuslab import _ckernels
except ImportError:
    _ckernels = None

FORMS = [(1, 0, 1), (1, 0, 5), (2, 2, 3), (3, 2, 5)]


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench(limit: int, repeat: int):
    rows = []
    for a, b, c in FORMS:
        py = _pykernels.rep_counts(a, b, c, limit)
        cy = _ckernels.rep_counts(a, b, c, limit)
        assert np.array_equal(py, cy), (a, b, c)
        rows.append((
            f"rep_counts{(a, b, c)}",
            best_of(lambda: _pykernels.rep_counts(a, b, c, limit), repeat),
            best_of(lambda: _ckernels.rep_counts(a, b, c, limit), repeat),
        ))

    M = limit // 10
    rng = np.random.default_rng(0)
    f = rng.integers(-5, 6, M + 1, dtype=np.int64)
    g = rng.integers(-5, 6, M + 1, dtype=np.int64)
    assert np.array_equal(_pykernels.dconv_int64(f, g), _ckernels.dconv_int64(f, g))
    rows.append((
        f"dconv_int64(M={M})",
        best_of(lambda: _pykernels.dconv_int64(f, g), repeat),
        best_of(lambda: _ckernels.dconv_int64(f, g), repeat),
    ))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limit", type=int, default=10**6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<28}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, t_py, t_cy in bench(args.limit, args.repeat):
        print(f"{name:<28}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
