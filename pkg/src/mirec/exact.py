"""Exact rational scalars, (Laurent) polynomials, matrices and interpolation."""

from fractions import Fraction
from math import isqrt

from . import kernels
from .errors import (DivisionByZeroPoly, DuplicateNode, UnsupportedPoint)

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(value):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string like '1/3'")
    return Fraction(value)


def fmt(value):
    """Canonical ``p/q`` text (``p`` when the denominator is one)."""
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value):
    """Square root of a non-negative rational, or None if it is irrational."""
    value = Q(value)
    if value < 0:
        return None
    n, d = value.numerator, value.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def poch(x, n):
    """Rising factorial (x)_n for integer n >= 0."""
    out = ONE
    for k in range(n):
        out *= x + k
    return out


def qpoch(x, q, n):
    """q-shifted factorial (x; q)_n for integer n >= 0."""
    out = ONE
    p = ONE
    for _ in range(n):
        out *= 1 - x * p
        p *= q
    return out


class Poly:
    """Polynomial (or Laurent polynomial) with exact rational coefficients.

    ``coeffs[i]`` multiplies ``var**(low + i)``. The representation is
    canonical: no zero at either end, and the zero polynomial has no
    coefficients, so ``==`` is structural.
    """

    __slots__ = ("coeffs", "low")

    def __init__(self, coeffs=(), low=0):
        cs = [Q(c) for c in coeffs]
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        end = len(cs)
        while end > start and not cs[end - 1]:
            end -= 1
        self.coeffs = tuple(cs[start:end])
        self.low = low + start if self.coeffs else 0

    @classmethod
    def _raw(cls, coeffs, low):
        p = cls.__new__(cls)
        start, end = 0, len(coeffs)
        while start < end and not coeffs[start]:
            start += 1
        while end > start and not coeffs[end - 1]:
            end -= 1
        p.coeffs = tuple(coeffs[start:end])
        p.low = low + start if p.coeffs else 0
        return p

    @classmethod
    def const(cls, c):
        return cls._raw([Q(c)], 0)

    @classmethod
    def monomial(cls, k, c=1):
        return cls._raw([Q(c)], k)

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls.const(lead)
        for r in roots:
            p = p * cls._raw([-Q(r), ONE], 0)
        return p

    # --- structure -------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Highest exponent; -1 for the zero polynomial."""
        return self.low + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k):
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def dense(self):
        """Coefficients of var**0 .. var**degree; requires ``low >= 0``."""
        if self.low < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return [ZERO] * self.low + list(self.coeffs)

    def is_polynomial(self):
        return self.low >= 0

    # --- arithmetic ------------------------------------------------------
    def _align(self, other):
        if not self.coeffs:
            return [], list(other.coeffs), other.low
        if not other.coeffs:
            return list(self.coeffs), [], self.low
        low = min(self.low, other.low)
        hi = max(self.degree, other.degree)
        a = [ZERO] * (hi - low + 1)
        b = [ZERO] * (hi - low + 1)
        for i, c in enumerate(self.coeffs):
            a[self.low - low + i] = c
        for i, c in enumerate(other.coeffs):
            b[other.low - low + i] = c
        return a, b, low

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b, low = self._align(other)
        if not a:
            return other
        if not b:
            return self
        return Poly._raw([x + y for x, y in zip(a, b)], low)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            return Poly._raw(kernels.poly_mul(self.coeffs, other.coeffs),
                             self.low + other.low)
        other = Q(other)
        if not other:
            return Poly()
        return Poly._raw([c * other for c in self.coeffs], self.low)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            raise TypeError("use divrem for polynomial division")
        other = Q(other)
        if not other:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (1 / other)

    def __pow__(self, k):
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self.degree <= 0 and self.low == 0:
                return self.coeff(0) == Q(other)
            return False
        return self.coeffs == other.coeffs and self.low == other.low

    def __hash__(self):
        return hash((self.coeffs, self.low))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{fmt(c)}*v^{self.low + i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(terms) + ")"

    # --- evaluation and substitution ---------------------------------------
    def __call__(self, x):
        x = Q(x)
        if not self.coeffs:
            return ZERO
        val = kernels.poly_eval(self.coeffs, x)
        if self.low:
            if not x and self.low < 0:
                raise UnsupportedPoint("Laurent polynomial evaluated at 0")
            val *= x ** self.low
        return val

    def compose(self, inner):
        """``self(inner)`` for a (Laurent) polynomial ``inner``; self must be a polynomial."""
        out = Poly()
        for c in reversed(self.dense()):
            out = out * inner + c
        return out

    def shift(self, s):
        """``self(var + s)`` for an ordinary polynomial (Taylor shift)."""
        s = Q(s)
        cs = self.dense()
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += s * cs[j + 1]
        return Poly(cs)

    def scale_var(self, c):
        """``self(c * var)``."""
        c = Q(c)
        out = []
        p = c ** self.low
        for coef in self.coeffs:
            out.append(coef * p)
            p *= c
        return Poly._raw(out, self.low)

    def monic(self):
        if not self.coeffs:
            raise DivisionByZeroPoly("zero polynomial has no leading coefficient")
        return self / self.leading

    def divrem(self, g):
        return divrem(self, g)


def divrem(f, g):
    """Quotient and remainder of ordinary polynomials, ``f = q g + r``."""
    if g.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    if f.low < 0 or g.low < 0:
        raise ValueError("divrem needs ordinary polynomials")
    rem = f.dense()
    gd = g.dense()
    dg = len(gd) - 1
    lead = gd[-1]
    if len(rem) - 1 < dg:
        return Poly(), f
    quo = [ZERO] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg] / lead
        quo[k] = c
        if c:
            for i in range(dg + 1):
                rem[k + i] -= c * gd[i]
    return Poly(quo), Poly(rem[:dg])


def poly_gcd(f, g):
    """Monic gcd of ordinary polynomials (zero if both are zero)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, divrem(a, b)[1]
    return a.monic() if not a.is_zero() else a


def interpolate(xs, ys):
    """Unique polynomial of degree < len(xs) through the given nodes."""
    xs = [Q(x) for x in xs]
    if len(set(xs)) != len(xs):
        seen = set()
        dup = next(x for x in xs if x in seen or seen.add(x))
        raise DuplicateNode(f"repeated interpolation node {fmt(dup)}")
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    return Poly(kernels.interpolate_coeffs(xs, [Q(y) for y in ys]))


class NewtonInterpolator:
    """Incremental Newton-form interpolation.

    Nodes can be added one at a time; ``predict`` evaluates the current
    interpolant, which makes it cheap to certify a degree bound on fresh
    points before committing to more work.
    """

    def __init__(self):
        self.xs = []
        self.dd = []

    def predict(self, x):
        x = Q(x)
        acc = ZERO
        for k in range(len(self.dd) - 1, -1, -1):
            acc = acc * (x - self.xs[k]) + self.dd[k]
        return acc

    def add(self, x, y):
        x, y = Q(x), Q(y)
        if x in self.xs:
            raise DuplicateNode(f"repeated interpolation node {fmt(x)}")
        w = ONE
        for xi in self.xs:
            w *= x - xi
        self.dd.append((y - self.predict(x)) / w)
        self.xs.append(x)

    def poly(self):
        return Poly(kernels.newton_to_monomial(self.xs, self.dd))

    def __len__(self):
        return len(self.xs)


class Matrix:
    """Dense matrix of Fractions stored row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[Q(v) for v in r] for r in rows]

    @classmethod
    def _raw(cls, rows):
        m = cls.__new__(cls)
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls._raw([[ZERO] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, vals):
        n = len(vals)
        rows = [[ZERO] * n for _ in range(n)]
        for i, v in enumerate(vals):
            rows[i][i] = Q(v)
        return cls._raw(rows)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return Matrix._raw([list(c) for c in zip(*self.rows)])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return Matrix._raw(kernels.matmul(self.rows, other.rows))
        # vector
        return [row[0] for row in kernels.matmul(self.rows, [[Q(v)] for v in other])]

    def __add__(self, other):
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix._raw([[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = Q(c)
        return Matrix._raw([[a * c for a in r] for r in self.rows])

    def scale_rows(self, vals):
        return Matrix._raw([[a * v for a in r] for r, v in zip(self.rows, vals)])

    def scale_cols(self, vals):
        return Matrix._raw([[a * v for a, v in zip(r, vals)] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(map(tuple, self.rows)))

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def det(self):
        return kernels.det(self.rows)

    def solve(self, rhs):
        return solve_linear(self, rhs)

    def inverse(self):
        n = len(self.rows)
        cols = [solve_linear(self, [ONE if i == j else ZERO for i in range(n)])
                for j in range(n)]
        return Matrix._raw([[cols[j][i] for j in range(n)] for i in range(n)])

    def commutator(self, other):
        return self @ other - other @ self

    def __repr__(self):
        return "Matrix(" + repr([[fmt(v) for v in r] for r in self.rows]) + ")"


def solve_linear(a, rhs):
    """Exact solution of ``a x = rhs`` for square ``a``; raises SingularSystem."""
    rows = a.rows if isinstance(a, Matrix) else [[Q(v) for v in r] for r in a]
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("solve_linear needs a square system")
    return kernels.solve(rows, [Q(v) for v in rhs])


class ThieleFit:
    """Rational-function reconstruction from exact samples (Thiele fractions).

    Samples are fed through ``offer``. A sample already reproduced by the
    current continued fraction counts as a confirmation; otherwise it becomes
    a new node. ``settled(k)`` reports whether the last ``k`` offers were all
    confirmations.
    """

    def __init__(self):
        self.xs = []
        self.rho = []        # rho[k] = k-th inverse difference at node k
        self._rows = []      # inverse differences of every node, by level
        self.streak = 0

    def __call__(self, x):
        x = Q(x)
        if not self.rho:
            raise ValueError("no samples")
        acc = self.rho[-1]
        for k in range(len(self.rho) - 2, -1, -1):
            if not acc:
                raise ZeroDivisionError("pole of the continued fraction")
            acc = self.rho[k] + (x - self.xs[k]) / acc
        return acc

    def offer(self, x, y):
        x, y = Q(x), Q(y)
        if self.rho:
            try:
                if self(x) == y:
                    self.streak += 1
                    return True
            except ZeroDivisionError:
                pass
        self.streak = 0
        phi = y
        for k in range(len(self.xs)):
            diff = phi - self.rho[k]
            if not diff:
                raise ZeroDivisionError("degenerate sample for Thiele fit; choose another point")
            phi = (x - self.xs[k]) / diff
        self.xs.append(x)
        self.rho.append(phi)
        return False

    def settled(self, k):
        return self.streak >= k

    def as_ratio(self):
        """Numerator and denominator polynomials of the fitted function."""
        var = Poly._raw([ZERO, ONE], 0)
        num, den = Poly.const(self.rho[-1]), Poly.const(1)
        for k in range(len(self.rho) - 2, -1, -1):
            # rho_k + (x - x_k) / (num/den) = (rho_k num + (x - x_k) den) / num
            num, den = num * self.rho[k] + (var - self.xs[k]) * den, num
        return num, den
