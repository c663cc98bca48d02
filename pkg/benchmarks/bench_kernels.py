"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 8 16 32]
"""
import argparse
import importlib
import timeit

import numpy as np

from cayleyperturb import _pykernels


def cases(n, g):
    a = g.standard_normal((n, n))
    sym = a + a.T
    ints = g.integers(-5, 6, size=(n, n)).tolist()
    return {
        "lu_det": lambda k: k.lu_det(a),
        "householder_qr": lambda k: k.householder_qr(a),
        "jacobi_eigh": lambda k: k.jacobi_eigh(sym, 1e-15, 100),
        "bareiss_det": lambda k: k.bareiss_det([row[:] for row in ints]),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--n", type=int, nargs="+", default=[8, 16, 32])
    args = parser.parse_args(argv)
    try:
        compiled = importlib.import_module("cayleyperturb._kernels")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the fallback only")
    g = np.random.Generator(np.random.PCG64(0))
    print(f"{'kernel':<16}{'n':>4}{'python ms':>12}{'compiled ms':>13}{'speedup':>9}")
    for n in args.n:
        for name, fn in cases(n, g).items():
            t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
            line = f"{name:<16}{n:>4}{t_py * 1e3:>12.3f}"
            if compiled is not None:
                t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
                line += f"{t_c * 1e3:>13.3f}{t_py / t_c:>8.1f}x"
            print(line)


if __name__ == "__main__":
    main()
