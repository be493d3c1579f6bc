"""Recurrence relations with constant coefficients.

For a polynomial X in the image of the primitive map applied to Xi_D * Y,
multiplication by X preserves the span of the multi-indexed polynomials and
acts as a band of half-width L = ell(D) + deg Y + 1:

    X(eta) P_{D,n}(eta) = sum_{k=-L}^{L} r_{n,k} P_{D,n+k}(eta).

In finite mode the identity holds on the lattice x = 0..N, with the
coefficients that would reach beyond n + k = N vanishing.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import (AssumptionViolated, ConjectureCounterexample,
                     InsufficientBasis, IrrationalShift, MapUndefined,
                     PoleInCoefficient, TheoremViolation)
from .exact import (ONE, ZERO, Matrix, Poly, Q, ThieleFit, fmt, interpolate, poly_gcd,
                    rational_sqrt)
from .family import energy, eta
from .multi import MultiIndexed, lead_P_D, norm2_D
from .report import Report

# --- discrete antiderivative ----------------------------------------------------------------------


def gprime_W(n, k):
    return Fraction((-1) ** k, 2 ** (2 * k + 1)) * comb(2 * n + 2, 2 * k + 1)


def _aw_inner(m, l, q):
    """Seed sum of the Askey-Wilson coefficient with its half-integer q powers removed."""
    total = ZERO
    h = l // 2
    for s in range(h + 1):
        total += (Fraction(comb(m - l + s, s) * (-1) ** s, factorial(h - s) * factorial(m - h + 1 + s))
                  * q ** -s * (1 - q ** (m - l + 1 + 2 * s)) / (1 - q))
    return total * factorial(m + 1) / 2 ** l


def gprime_AW(n, k, q):
    """Askey-Wilson coefficient; needs a rational square root of q for odd powers."""
    if k % 2:
        return ZERO
    total = ZERO
    h = k // 2
    for s in range(h + 1):
        e2 = -(n - k + 2 * s)          # exponent of q**(1/2)
        if e2 % 2:
            rq = rational_sqrt(q)
            if rq is None:
                raise IrrationalShift("q is not a rational square")
            qp = rq ** e2
        else:
            qp = q ** (e2 // 2)
        total += (Fraction(comb(n - k + s, s) * (-1) ** s, factorial(h - s) * factorial(n - h + 1 + s))
                  * qp * (1 - q ** (n - k + 1 + 2 * s)) / (1 - q))
    return total * factorial(n + 1) / 2 ** k


def gprime(n, k, lam):
    """Coefficient of eta(x; lam - delta)**(n-k) in the divided difference of eta**(n+1)."""
    if not 0 <= k <= n:
        return ZERO
    d = lam.d
    total = ZERO
    for r in range(k + 1):
        for l in range(k - r + 1):
            top = n - r - l
            if top < n - k or top < 0:
                continue
            base = comb(n + 1, r) * comb(top, n - k)
            if not base:
                continue
            if lam.is_q:
                if l % 2:
                    continue
                q = lam.q
                total += (base * (-1) ** r * 2 ** l * d ** (l // 2) * (1 + d) ** r
                          * (1 + d / q) ** (k - r - l) * _aw_inner(n - r, l, q))
            else:
                total += (base * (-1) ** (r + l) * (d / 2) ** (2 * r)
                          * ((d - 1) / 2) ** (2 * (k - r - l)) * gprime_W(n - r, l))
    return total


class GPrimeTable:
    """Memoised g' coefficients for one parameter set."""

    def __init__(self, lam):
        self.lam = lam
        self._memo = {}

    def __call__(self, n, k):
        key = (n, k)
        v = self._memo.get(key)
        if v is None:
            v = gprime(n, k, self.lam)
            self._memo[key] = v
        return v


def imap(p, lam, table=None):
    """Primitive map: the P with P(0) = 0 whose divided difference is p.

    ``p`` is a polynomial in eta(x; lam - delta); the result is in eta(x; lam)
    and satisfies (P(eta(x)) - P(eta(x-1))) / (eta(x) - eta(x-1)) = p.
    """
    g = table or GPrimeTable(lam)
    n = p.degree
    if n < 0:
        return Poly()
    a = p.dense()
    b = [ZERO] * (n + 2)
    for k in range(n, -1, -1):
        acc = a[k]
        for j in range(k + 1, n + 1):
            acc -= g(j, j - k) * b[j + 1]
        piv = g(k, 0)
        if not piv:
            raise MapUndefined(f"pivot g'(0)_{k} vanishes")
        b[k + 1] = acc / piv
    return Poly(b)


def xpoly(D, Y, lam, fam=None):
    """X = imap(Xi_D * Y) at lam + M delta; returns (X, L)."""
    fam = fam or MultiIndexed(D, lam)
    Y = Y if isinstance(Y, Poly) else Poly.const(Y)
    X = imap(fam.xi_poly * Y, lam.shift(fam.M))
    return X, fam.ell + max(Y.degree, 0) + 1


# --- extraction --------------------------------------------------------------------------------------


@dataclass
class RTable:
    """Band coefficients r_{n,k}; ``rows[n][k]`` for |k| <= L."""

    L: int
    rows: dict = field(default_factory=dict)

    def r(self, n, k):
        return self.rows.get(n, {}).get(k, ZERO)

    def as_lists(self):
        return {n: {k: fmt(v) for k, v in row.items()} for n, row in sorted(self.rows.items())}


def extract_row(fam, X, L, n):
    """r_{n,-L..L} by leading-term elimination of X * P_{D,n} as polynomials.

    Raises TheoremViolation if the expansion is not confined to the band or
    leaves a remainder outside the span of the P_{D,m}.
    """
    lam = fam.lam
    if lam.N is not None and n + L > lam.N:
        raise InsufficientBasis(f"P_(D,m) for m up to {n + L} needed; finite mode stops at N={lam.N}")
    rem = X * fam.poly(n)
    coeffs = {}
    top = rem.degree - fam.ell
    if top > n + L:
        raise TheoremViolation(f"X P_(D,{n}) has degree beyond the band")
    for m in range(top, -1, -1):
        c = rem.coeff(fam.ell + m)
        if c:
            pm = fam.poly(m)
            c = c / pm.leading
            coeffs[m] = c
            rem = rem - pm * c
    if not rem.is_zero():
        raise TheoremViolation(f"X P_(D,{n}) leaves a remainder of degree {rem.degree}")
    outside = [m for m, c in coeffs.items() if c and abs(m - n) > L]
    if outside:
        raise TheoremViolation(f"X P_(D,{n}) involves P_(D,{outside[0]}) outside the band")
    return {k: coeffs.get(n + k, ZERO) for k in range(-L, L + 1) if n + k >= 0}


def extract_table(fam, X, L, nmax):
    return RTable(L, {n: extract_row(fam, X, L, n) for n in range(nmax + 1)})


def grid_matrix(fam, X):
    """Matrix of multiplication by X in the lattice basis P_{D,0..N} (finite mode).

    Entry (m, n) is the coefficient of P_{D,m} in X * P_{D,n} on x = 0..N.
    """
    lam = fam.lam
    if lam.N is None:
        raise AssumptionViolated("grid expansion needs finite-mode parameters")
    N = lam.N
    V = Matrix([[fam.value(n, x) for n in range(N + 1)] for x in range(N + 1)])
    Xv = [X(eta(x, lam, fam.M)) for x in range(N + 1)]
    return V.inverse() @ V.scale_rows(Xv)


def grid_table(fam, X, L):
    """Finite-mode r_{n,k} from the lattice expansion; checks the band structure."""
    N = fam.lam.N
    G = grid_matrix(fam, X)
    rows = {}
    for n in range(N + 1):
        for m in range(N + 1):
            if abs(m - n) > L and G[m, n]:
                raise TheoremViolation(f"lattice expansion of X P_(D,{n}) involves P_(D,{m})")
        rows[n] = {k: G[n + k, n] for k in range(-L, L + 1) if 0 <= n + k <= N}
    return RTable(L, rows)


# --- relations ----------------------------------------------------------------------------------------


def verify_relations(fam, X, L, table, finite=None):
    """Sum rule, top coefficient and (finite mode) norm ratios and vanishing tail."""
    lam = fam.lam
    finite = lam.N is not None if finite is None else finite
    rep = Report("coefficient relations", D=list(fam.D), L=L, **lam.as_dict())
    cX = X.leading
    for n, row in sorted(table.rows.items()):
        s = sum((row.get(k, ZERO) + row.get(-k, ZERO) for k in range(1, L + 1)), ZERO)
        rep.check(f"sum rule n={n}", row.get(0, ZERO) == -s)
        if not finite or n + L <= lam.N:
            expect = cX * lead_P_D(fam.D, n, lam) / lead_P_D(fam.D, n + L, lam)
            rep.check(f"top coefficient n={n}", row.get(L, ZERO) == expect)
    if finite:
        N = lam.N
        norms = [norm2_D(fam.D, n, lam) for n in range(N + 1)]
        for n in range(N + 1):
            for k in range(1, L + 1):
                if n + k <= N:
                    rep.check(f"norm ratio n={n} k={k}",
                              table.r(n + k, -k) == norms[n] / norms[n + k] * table.r(n, k))
    return rep


def limit_rows(D, X_builder, lam, rows, ks, samples=None, settle=3, max_samples=80):
    """Limits a -> lam.a of r_{n,k} computed at generic nearby values of a.

    ``X_builder(fam)`` returns (X, L) for a family. For each sampled a the
    coefficients are extracted as polynomials, and a Thiele continued
    fraction in a is fitted per (n, k). Returns ``({(n, k): limit}, fits)``;
    a pole at lam.a raises PoleInCoefficient.
    """
    target = lam.a
    fits = {(n, k): ThieleFit() for n in rows for k in ks}
    gen = samples or _sample_points(target)
    base = lam.with_a(target)
    used = 0
    for a_val in gen:
        if all(f.settled(settle) for f in fits.values()) or used >= max_samples:
            break
        try:
            fam = MultiIndexed(D, base.with_a(a_val))
            X, L = X_builder(fam)
            row_vals = {n: extract_row(fam, X, L, n) for n in rows}
        except (AssumptionViolated, PoleInCoefficient, MapUndefined, ZeroDivisionError):
            continue
        used += 1
        for (n, k), f in fits.items():
            try:
                f.offer(a_val, row_vals[n].get(k, ZERO))
            except ZeroDivisionError:
                pass
    unsettled = [key for key, f in fits.items() if not f.settled(settle)]
    if unsettled:
        raise AssumptionViolated(f"rational fit in a did not settle for {unsettled[0]}")
    out = {}
    for key, f in fits.items():
        try:
            out[key] = f(target)
        except ZeroDivisionError:
            raise PoleInCoefficient(f"r{key} has a pole at a = {fmt(target)}")
    return out, fits


def _sample_points(target):
    i = 0
    while True:
        i += 1
        yield target + Fraction(i * 7 + 3, 11 * i + 13) * (1 if i % 2 else -1) + Fraction(1, 97)


# --- conjectured polynomial I(z) ------------------------------------------------------------------


def alpha_pair(j, L, lam):
    """(alpha_j + alpha_{2L+1-j}, alpha_j * alpha_{2L+1-j}) as polynomials in z, j = 1..L."""
    m = L + 1 - j
    dt = lam.dtilde
    z = Poly([ZERO, ONE])
    if lam.is_q:
        q = lam.q
        u = q ** -m - 2 + q ** m
        v = q ** -m + 2 + q ** m
        w = z + 1 + dt
        return w * u, (Poly.const(v * dt) - w * w) * u
    return Poly.const(2 * m * m), (Poly.const(m * m - dt * dt) - z * 4) * (m * m)


def alpha_values(L, n, lam):
    """alpha_1 .. alpha_2L evaluated at z = E_n (square-root free)."""
    En = energy(n, lam)
    up = [energy(n + L + 1 - j, lam) - En for j in range(1, L + 1)]
    down = [energy(n - (j - L), lam) - En for j in range(L + 1, 2 * L + 1)]
    return up + down


def conjecture_poly(L, lam, table, fit_rows, holdout_rows):
    """Fit I(z) through z = E_n for ``fit_rows`` and test it on ``holdout_rows``.

    Returns (I, report). A held-out mismatch raises ConjectureCounterexample.
    """
    prods = [alpha_pair(j, L, lam)[1] for j in range(1, L + 1)]

    def sample(n):
        z = energy(n, lam)
        pf = ONE
        for p in prods:
            pf *= p(z)
        s = sum((table.r(n, k) + table.r(n, -k) for k in range(1, L + 1)), ZERO)
        return z, pf * s

    pts = [sample(n) for n in fit_rows]
    I = interpolate([p[0] for p in pts], [p[1] for p in pts])
    rep = Report("conjectured polynomial", L=L, **lam.as_dict())
    rep.check("degree", I.degree == 2 * L, degree=I.degree)
    for n in holdout_rows:
        z, v = sample(n)
        if I(z) != v:
            raise ConjectureCounterexample(f"I(z) misses held-out row n={n}")
        rep.check(f"held-out n={n}", True)
    return I, rep


# --- factors in the parameter a ------------------------------------------------------------------


def pochhammer_factor_check(D, Y, lam, rows, settle=3):
    """Whether r_{n,k} (1 <= k <= L), as a rational function of a, carries (a+n)_k.

    For qR the factor is (a q^n; q)_k. Each r_{n,k} is reconstructed in a by
    a Thiele fit around lam.a; the reduced numerator must be divisible by
    the factor. For negative k the companion factor (n-k+1)_k only says that
    r_{n,-k} = 0 when n < k, which is the band convention.
    """
    fam0 = MultiIndexed(D, lam)
    _, L = xpoly(D, Y, lam, fam0)
    ks = list(range(1, L + 1))
    _, fits = limit_rows(D, lambda f: xpoly(D, Y, f.lam, f), lam, rows, ks, settle=settle)
    rep = Report("pochhammer factors", D=list(fam0.D), L=L, **lam.as_dict())
    for (n, k), fit in sorted(fits.items()):
        num, den = fit.as_ratio()
        g = poly_gcd(num, den)
        num = num.divrem(g)[0]
        if lam.is_q:
            roots = [lam.q ** -(n + i) for i in range(k)]
        else:
            roots = [Q(-(n + i)) for i in range(k)]
        factor = Poly.from_roots(roots)
        rem = num.divrem(factor)[1] if not num.is_zero() else Poly()
        rep.check(f"factor n={n} k={k}", rem.is_zero())
    return rep
