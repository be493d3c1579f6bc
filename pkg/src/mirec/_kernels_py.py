"""Reference kernels written directly on ``Fraction`` values.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and bit-identical results.
"""

from fractions import Fraction

from .errors import SingularSystem

_ZERO = Fraction(0)


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def poly_eval(coeffs, x):
    acc = _ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return Fraction(acc)


def divided_differences(xs, ys):
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    return dd


def newton_to_monomial(xs, dd):
    """Expand sum_k dd[k] prod_{i<k} (x - xs[i]) into monomial coefficients."""
    n = len(dd)
    if n == 0:
        return []
    out = [dd[n - 1]]
    for k in range(n - 2, -1, -1):
        # out <- out * (x - xs[k]) + dd[k]
        shifted = [_ZERO] + out
        for i, c in enumerate(out):
            shifted[i] -= xs[k] * c
        shifted[0] += dd[k]
        out = shifted
    return out


def det(rows):
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    acc = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return _ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        acc *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                row, prow = m[r], m[col]
                for c in range(col + 1, n):
                    row[c] -= f * prow[c]
    return sign * acc


def solve(rows, rhs):
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(n):
            if r != rank and m[r][col]:
                f = m[r][col] / p
                row, prow = m[r], m[rank]
                for c in range(col, n + 1):
                    row[c] -= f * prow[c]
        rank += 1
    if rank < n:
        raise SingularSystem(rank, n)
    return [m[i][n] / m[i][i] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append([sum((row[k] * b[k][j] for k in range(inner) if row[k]), _ZERO)
                    for j in range(cols)])
    return out
