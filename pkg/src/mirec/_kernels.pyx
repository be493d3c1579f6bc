# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels.

Rationals are handled as integer numerators over a shared denominator so the
inner loops run on Python ints without building ``Fraction`` objects.
"""

from fractions import Fraction
from math import gcd

from .errors import SingularSystem


cdef object _lcm(object a, object b):
    return a // gcd(a, b) * b


cdef tuple _common(list vals):
    """Return (numerators, denominator) with a shared denominator."""
    cdef Py_ssize_t i, n = len(vals)
    den = 1
    for i in range(n):
        d = (<object>vals[i]).denominator
        if d != 1:
            den = _lcm(den, d)
    nums = [None] * n
    for i in range(n):
        v = <object>vals[i]
        nums[i] = v.numerator * (den // v.denominator)
    return nums, den


def poly_mul(a, b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    an, ad = _common(list(a))
    bn, bd = _common(list(b))
    out = [0] * (na + nb - 1)
    for i in range(na):
        ai = an[i]
        if ai:
            for j in range(nb):
                out[i + j] += ai * bn[j]
    den = ad * bd
    return [Fraction(v, den) for v in out]


def poly_eval(coeffs, x):
    cdef Py_ssize_t k, n = len(coeffs)
    if n == 0:
        return Fraction(0)
    cn, cd = _common(list(coeffs))
    x = Fraction(x)
    p = x.numerator
    q = x.denominator
    acc = cn[n - 1]
    qpow = 1
    for k in range(n - 2, -1, -1):
        qpow *= q
        acc = acc * p + cn[k] * qpow
    return Fraction(acc, cd * qpow)


def divided_differences(xs, ys):
    cdef Py_ssize_t n = len(xs), level, i
    xn = [Fraction(v).numerator for v in xs]
    xd = [Fraction(v).denominator for v in xs]
    num = [Fraction(v).numerator for v in ys]
    den = [Fraction(v).denominator for v in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            # (num[i]/den[i] - num[i-1]/den[i-1]) / (xs[i] - xs[i-level])
            tn = num[i] * den[i - 1] - num[i - 1] * den[i]
            td = den[i] * den[i - 1]
            hn = xn[i] * xd[i - level] - xn[i - level] * xd[i]
            hd = xd[i] * xd[i - level]
            if hn == 0:
                raise ZeroDivisionError("repeated node")
            rn = tn * hd
            rd = td * hn
            if rd < 0:
                rn = -rn
                rd = -rd
            g = gcd(rn, rd)
            if g != 1:
                rn //= g
                rd //= g
            num[i] = rn
            den[i] = rd
    return [Fraction(a, b) for a, b in zip(num, den)]


def newton_to_monomial(xs, dd):
    cdef Py_ssize_t n = len(dd), k, i
    if n == 0:
        return []
    # integer coordinates: xs[k] = xn[k]/X with X the common denominator,
    # work with p(x) scaled so every coefficient has a shared denominator.
    xn, X = _common([Fraction(v) for v in xs[:n]] if n else [])
    dn, D = _common([Fraction(v) for v in dd])
    # out holds polynomial in t = X*x: coefficients of prod (t - xn[i]) * dn[k]
    out = [dn[n - 1]]
    for k in range(n - 2, -1, -1):
        shifted = [0] * (len(out) + 1)
        xk = xn[k]
        for i in range(len(out)):
            shifted[i + 1] += out[i]
            shifted[i] -= xk * out[i]
        # every term has one more factor of X than dd[k] alone
        Xp = X ** (n - 1 - k)
        shifted[0] += dn[k] * Xp
        out = shifted
    # out(t) = X^(n-1) * D * p(x), t = X x; coefficient of x^i gets X^i.
    res = []
    top = X ** (n - 1)
    Xi = 1
    for i in range(len(out)):
        res.append(Fraction(out[i] * Xi, top * D))
        Xi *= X
    return res


def det(rows):
    cdef Py_ssize_t n = len(rows), i, j, k, piv
    if n == 0:
        return Fraction(1)
    m = []
    scale = 1
    for r in rows:
        nums, den = _common([Fraction(v) for v in r])
        m.append(nums)
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = -1
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv < 0:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pk * rowi[j] - mik * rowk[j]) // prev
        prev = pk
    return Fraction(sign * m[n - 1][n - 1], scale)


def solve(rows, rhs):
    cdef Py_ssize_t n = len(rows), i, j, k, piv, rank = 0
    m = []
    for r, v in zip(rows, rhs):
        nums, den = _common([Fraction(x) for x in r] + [Fraction(v)])
        m.append(nums)
    # fraction-free Gauss-Jordan on the augmented matrix
    prev = 1
    for k in range(n):
        piv = -1
        for i in range(rank, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv < 0:
            # singular: defer to the reference path for an exact rank
            from ._kernels_py import solve as _solve
            return _solve(rows, rhs)
        m[rank], m[piv] = m[piv], m[rank]
        rowk = m[rank]
        pk = rowk[k]
        for i in range(n):
            if i == rank:
                continue
            rowi = m[i]
            mik = rowi[k]
            for j in range(n + 1):
                if j == k:
                    continue
                rowi[j] = (pk * rowi[j] - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
        rank += 1
    if rank < n:
        raise SingularSystem(rank, n)
    return [Fraction(m[i][n], m[i][i]) for i in range(n)]


def matmul(a, b):
    cdef Py_ssize_t i, j, k, rows = len(a), inner = len(b), cols
    if rows == 0:
        return []
    cols = len(b[0]) if inner else 0
    an = []
    ad = []
    for r in a:
        nums, den = _common(list(r))
        an.append(nums)
        ad.append(den)
    bn = []
    bd = []
    for j in range(cols):
        nums, den = _common([b[k][j] for k in range(inner)])
        bn.append(nums)
        bd.append(den)
    out = []
    for i in range(rows):
        ri = an[i]
        row = []
        for j in range(cols):
            cj = bn[j]
            s = 0
            for k in range(inner):
                if ri[k]:
                    s += ri[k] * cj[k]
            row.append(Fraction(s, ad[i] * bd[j]))
        out.append(row)
    return out
