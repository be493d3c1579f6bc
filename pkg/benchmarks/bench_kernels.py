"""Compare the compiled kernels with the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 12]

Prints one line per kernel with the best-of-repeats time for each backend
and the speed-up. Outputs of the two backends are checked for equality.
"""

import argparse
import random
import sys
import timeit
from fractions import Fraction

from mirec import _kernels_py
from mirec.kernels import compiled_available


def _rat(rng):
    return Fraction(rng.randint(-99, 99), rng.randint(1, 60))


def cases(size, seed=1):
    rng = random.Random(seed)
    mat = [[_rat(rng) for _ in range(size)] for _ in range(size)]
    rhs = [_rat(rng) for _ in range(size)]
    xs = [Fraction(i * 3 + 1, i + 2) for i in range(size)]
    ys = [_rat(rng) for _ in range(size)]
    p = [_rat(rng) for _ in range(4 * size)]
    r = [_rat(rng) for _ in range(4 * size)]
    return {
        "det": lambda k: k.det(mat),
        "solve": lambda k: k.solve(mat, rhs),
        "matmul": lambda k: k.matmul(mat, mat),
        "poly_mul": lambda k: k.poly_mul(p, r),
        "poly_eval": lambda k: [k.poly_eval(p, x) for x in xs],
        "divided_differences": lambda k: k.divided_differences(xs, ys),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=3)
    ap.add_argument("--size", type=int, default=12)
    args = ap.parse_args(argv)
    if not compiled_available():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    from mirec import _kernels as fast

    print(f"{'kernel':<22}{'python [ms]':>14}{'compiled [ms]':>16}{'speed-up':>10}")
    for name, fn in cases(args.size).items():
        if fn(fast) != fn(_kernels_py):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        best = {}
        for label, mod in (("python", _kernels_py), ("compiled", fast)):
            t = timeit.repeat(lambda: fn(mod), repeat=args.repeat, number=args.number)
            best[label] = min(t) / args.number * 1e3
        print(f"{name:<22}{best['python']:>14.3f}{best['compiled']:>16.3f}"
              f"{best['python'] / best['compiled']:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
