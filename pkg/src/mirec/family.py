"""Racah and q-Racah base families.

A :class:`ParameterSet` fixes (a, b, c, d) for either the Racah family ("R")
or the q-Racah family ("qR", with base q and the parameters given as the
multiplicative values q**lambda_i). Shifts by the all-ones vector act
additively for R and multiplicatively (by q) for qR.

Polynomials in the sinusoidal coordinate are returned as :class:`Poly` in
the variable eta. Functions of the lattice variable x are represented as
ordinary polynomials in x (R) or Laurent polynomials in z = q**x (qR); see
:func:`eta_xfunc`.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import (AssumptionViolated, InvariantViolation, PoleAtGridPoint,
                     PoleInCoefficient, UnsupportedPoint)
from .exact import ONE, ZERO, Poly, Q, fmt, poch, qpoch
from .report import Report

FAMILIES = ("R", "qR")


@dataclass(frozen=True)
class ParameterSet:
    family: str
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    q: Fraction | None = None
    N: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for name in "abcd":
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.family == "qR":
            if self.q is None:
                raise ValueError("q-Racah parameters need q")
            q = Q(self.q)
            if not 0 < q < 1:
                raise ValueError("q must satisfy 0 < q < 1")
            object.__setattr__(self, "q", q)
        elif self.q is not None:
            raise ValueError("Racah parameters take no q")
        if self.N is not None:
            if self.N < 0:
                raise ValueError("N must be non-negative")
            if self.a != self.finite_a(self.N):
                raise ValueError(f"finite mode needs a = {fmt(self.finite_a(self.N))}")

    # --- constructors --------------------------------------------------------
    @classmethod
    def racah(cls, a, b, c, d, N=None):
        return cls("R", a, b, c, d, None, N)

    @classmethod
    def qracah(cls, a, b, c, d, q, N=None):
        return cls("qR", a, b, c, d, Q(q), N)

    @classmethod
    def finite(cls, family, b, c, d, N, q=None):
        """Finite-mode parameters: a is fixed by N."""
        if family == "R":
            return cls("R", -N, b, c, d, None, N)
        return cls("qR", Q(q) ** -N, b, c, d, Q(q), N)

    def finite_a(self, N):
        return Fraction(-N) if self.family == "R" else self.q ** -N

    # --- parameter maps -------------------------------------------------------
    @property
    def is_q(self):
        return self.family == "qR"

    def _mv(self, v, beta):
        return v * self.q ** beta if self.is_q else v + beta

    def shift(self, beta=1):
        """All four parameters shifted by beta; drops finite-mode metadata."""
        if beta == 0:
            return self
        return replace(self, a=self._mv(self.a, beta), b=self._mv(self.b, beta),
                       c=self._mv(self.c, beta), d=self._mv(self.d, beta), N=None)

    def twisted_shift(self, beta=1):
        """Shift of c and d only; a (and so finite mode) is kept."""
        if beta == 0:
            return self
        return replace(self, c=self._mv(self.c, beta), d=self._mv(self.d, beta))

    def twist(self):
        """Parameters of the virtual-state polynomials."""
        a, b, d = self.a, self.b, self.d
        if self.is_q:
            return replace(self, a=d * self.q / a, b=d * self.q / b, N=None)
        return replace(self, a=d - a + 1, b=d - b + 1, N=None)

    def with_a(self, a):
        a = Q(a)
        N = self.N if self.N is not None and a == self.a else None
        return replace(self, a=a, N=N)

    @property
    def dtilde(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if self.is_q:
            return a * b * c / (d * self.q)
        return a + b + c - d - 1

    @property
    def alpha(self):
        if self.is_q:
            return self.a * self.b / (self.d * self.q)
        return ONE

    def values(self):
        return (self.a, self.b, self.c, self.d)

    def as_dict(self):
        out = {"family": self.family, "params": [fmt(v) for v in self.values()]}
        if self.is_q:
            out["q"] = fmt(self.q)
        if self.N is not None:
            out["N"] = self.N
        return out

    # --- ranges ------------------------------------------------------------------
    def range_violations(self, D=()):
        """Human-readable list of violated positivity conditions (empty when fine)."""
        a, b, c, d = self.values()
        out = []
        top = max(D) if D else None
        if self.is_q:
            q = self.q
            if not 0 < a * b < d < 1:
                out.append("0 < ab < d < 1")
            if not q * d < c < 1:
                out.append("qd < c < 1")
            if top is not None and not a * b < d * q ** (top + 1):
                out.append(f"ab < d q^{top + 1}")
        else:
            if not 0 < d < a + b:
                out.append("0 < d < a + b")
            if not 0 < c < 1 + d:
                out.append("0 < c < 1 + d")
            if top is not None and not d + top + 1 < a + b:
                out.append(f"d + {top + 1} < a + b")
        return out

    def in_range(self, D=()):
        return not self.range_violations(D)


# --- sinusoidal coordinate and energies ---------------------------------------------


def _qpow(lam, x):
    if not isinstance(x, int):
        if isinstance(x, Fraction) and x.denominator == 1:
            x = int(x)
        else:
            raise UnsupportedPoint("q-Racah functions need integer x")
    return lam.q ** x


def eta(x, lam, s=0):
    """Sinusoidal coordinate at x for the parameters shifted by s."""
    if lam.is_q:
        qx = _qpow(lam, x)
        return (1 / qx - 1) * (1 - lam.d * lam.q ** s * qx)
    x = Q(x)
    return x * (x + lam.d + s)


def eta_xfunc(lam, s=0):
    """eta(x; lam + s delta) as a polynomial in x or a Laurent polynomial in q**x."""
    if lam.is_q:
        dq = lam.d * lam.q ** s
        return Poly([ONE, -1 - dq, dq], low=-1)
    return Poly([ZERO, lam.d + s, ONE])


def shift_xfunc(f, lam, s):
    """f(x + s) for an x-function f."""
    if lam.is_q:
        return f.scale_var(lam.q ** s)
    return f.shift(s)


def energy(n, lam):
    dt = lam.dtilde
    if lam.is_q:
        qn = lam.q ** n
        return (1 / qn - 1) * (1 - dt * qn)
    return Q(n) * (n + dt)


def virtual_energy(v, lam):
    dt, c = lam.dtilde, lam.c
    if lam.is_q:
        qv = lam.q ** v
        return -(1 - c * qv) * (1 - dt / (c * qv))
    return -(c + v) * (dt - c - v)


# --- potentials --------------------------------------------------------------------------


def potential_rational(lam):
    """Numerators and denominators of the two potentials as x-functions."""
    a, b, c, d = lam.values()
    if lam.is_q:
        q, dt = lam.q, lam.dtilde
        z = Poly([ZERO, ONE])

        def lin(k):
            return 1 - z * k

        bnum = -(lin(a) * lin(b) * lin(c) * lin(d))
        bden = Poly([ONE, ZERO, -d]) * Poly([ONE, ZERO, -d * q])
        dnum = -(lin(d / a) * lin(d / b) * lin(d / c) * lin(ONE)) * dt
        dden = Poly([ONE, ZERO, -d / q]) * Poly([ONE, ZERO, -d])
        return bnum, bden, dnum, dden
    x = Poly([ZERO, ONE])
    bnum = -((x + a) * (x + b) * (x + c) * (x + d))
    bden = (x * 2 + d) * (x * 2 + d + 1)
    dnum = -((x + d - a) * (x + d - b) * (x + d - c) * x)
    dden = (x * 2 + d - 1) * (x * 2 + d)
    return bnum, bden, dnum, dden


def potentials(x, lam):
    """(B(x), D(x)); PoleAtGridPoint if a denominator vanishes."""
    a, b, c, d = lam.values()
    if lam.is_q:
        q, dt = lam.q, lam.dtilde
        qx = _qpow(lam, x)
        bden = (1 - d * qx * qx) * (1 - d * q * qx * qx)
        dden = (1 - d * qx * qx / q) * (1 - d * qx * qx)
        bnum = -(1 - a * qx) * (1 - b * qx) * (1 - c * qx) * (1 - d * qx)
        dnum = -dt * (1 - d * qx / a) * (1 - d * qx / b) * (1 - d * qx / c) * (1 - qx)
    else:
        x = Q(x)
        bden = (2 * x + d) * (2 * x + 1 + d)
        dden = (2 * x - 1 + d) * (2 * x + d)
        bnum = -(x + a) * (x + b) * (x + c) * (x + d)
        dnum = -(x + d - a) * (x + d - b) * (x + d - c) * x
    if not bden and bnum or not dden and dnum:
        raise PoleAtGridPoint(f"potential has a pole at x={fmt(x) if not lam.is_q else x}")
    return (bnum / bden if bden else ZERO), (dnum / dden if dden else ZERO)


# --- three-term recurrence and the polynomials ---------------------------------------------


def ttrc(n, lam):
    """(A_n, B_n, C_n) with eta P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}."""
    a, b, c = lam.a, lam.b, lam.c
    dt = lam.dtilde
    if n < 0:
        raise ValueError("n must be non-negative")
    if lam.is_q:
        q, d = lam.q, lam.d
        qn = q ** n
        aden = (1 - dt * qn * qn) * (1 - dt * qn * qn * q)
        cden = (1 - dt * qn * qn / q) * (1 - dt * qn * qn)
        anum = (1 - a * qn) * (1 - b * qn) * (1 - c * qn) * (1 - dt * qn)
        cnum = d * (1 - dt * qn / a) * (1 - dt * qn / b) * (1 - dt * qn / c) * (1 - qn)
    else:
        aden = (2 * n + dt) * (2 * n + 1 + dt)
        cden = (2 * n - 1 + dt) * (2 * n + dt)
        anum = (n + a) * (n + b) * (n + c) * (n + dt)
        cnum = (n + dt - a) * (n + dt - b) * (n + dt - c) * n
    if not aden:
        raise PoleInCoefficient(f"A_{n} has a vanishing denominator")
    A = anum / aden
    if cnum:
        if not cden:
            raise PoleInCoefficient(f"C_{n} has a vanishing denominator")
        C = cnum / cden
    else:
        C = ZERO
    return A, -A - C, C


@lru_cache(maxsize=512)
def _racah_polys(lam, nmax):
    if nmax == 0:
        return (Poly.const(1),)
    prev = _racah_polys(lam, nmax - 1)
    n = nmax - 1
    A, B, C = ttrc(n, lam)
    if not A:
        raise PoleInCoefficient(f"A_{n} vanishes; P_{nmax} is not defined")
    var = Poly([ZERO, ONE])
    nxt = (var - B) * prev[n] - (prev[n - 1] * C if n else Poly())
    return prev + (nxt / A,)


def racah_polys(lam, nmax):
    """P_0 .. P_nmax as polynomials in eta, normalised by P_n(0) = 1."""
    return list(_racah_polys(lam, nmax))


def racah_poly(n, lam):
    return _racah_polys(lam, n)[n]


def racah_values(nmax, x, lam):
    """P_0(eta(x)) .. P_nmax(eta(x)) through the recurrence on values."""
    e = eta(x, lam)
    out = [ONE]
    if nmax >= 1:
        A, B, _ = ttrc(0, lam)
        out.append((e - B) / A)
    for n in range(1, nmax):
        A, B, C = ttrc(n, lam)
        if not A:
            raise PoleInCoefficient(f"A_{n} vanishes")
        out.append(((e - B) * out[n] - C * out[n - 1]) / A)
    return out


def hypergeometric_value(n, x, lam):
    """Terminating balanced 4F3 (R) or 4phi3 (qR) sum; independent of the recurrence."""
    a, b, c, d = lam.values()
    dt = lam.dtilde
    total = ZERO
    term = ONE
    if lam.is_q:
        q = lam.q
        qx = _qpow(lam, x)
        up = [q ** -n, dt * q ** n, 1 / qx, d * qx]
        down = [a, b, c, q]
        for k in range(n + 1):
            total += term
            num = ONE
            den = ONE
            for u in up:
                num *= 1 - u * q ** k
            for v in down:
                den *= 1 - v * q ** k
            if not num:
                break
            term = term * num / den * q
        return total
    x = Q(x)
    up = [Q(-n), n + dt, -x, x + d]
    down = [a, b, c, ONE]
    for k in range(n + 1):
        total += term
        num = ONE
        den = ONE
        for u in up:
            num *= u + k
        for v in down:
            den *= v + k
        if not num:
            break
        term = term * num / den
    return total


# --- orthogonality data ----------------------------------------------------------------------


def weight(x, lam):
    """Squared ground state phi_0(x)**2, normalised to 1 at x = 0."""
    a, b, c, d = lam.values()
    if lam.is_q:
        q, dt = lam.q, lam.dtilde
        num = qpoch(a, q, x) * qpoch(b, q, x) * qpoch(c, q, x) * qpoch(d, q, x)
        den = (qpoch(d * q / a, q, x) * qpoch(d * q / b, q, x) * qpoch(d * q / c, q, x)
               * qpoch(q, q, x) * dt ** x)
        return num / den * (1 - d * q ** (2 * x)) / (1 - d)
    num = poch(a, x) * poch(b, x) * poch(c, x) * poch(d, x)
    den = poch(d - a + 1, x) * poch(d - b + 1, x) * poch(d - c + 1, x) * poch(ONE, x)
    return num / den * (2 * x + d) / d


def norm2(n, lam):
    """d_n**2 such that sum_x weight * P_n * P_m = delta_nm / d_n**2 (finite mode)."""
    if lam.N is None:
        raise AssumptionViolated("norms are defined in finite mode only")
    a, b, c, d = lam.values()
    N = lam.N
    dt = lam.dtilde
    if lam.is_q:
        q = lam.q
        head = (qpoch(a, q, n) * qpoch(b, q, n) * qpoch(c, q, n) * qpoch(dt, q, n)
                / (qpoch(dt * q / a, q, n) * qpoch(dt * q / b, q, n) * qpoch(dt * q / c, q, n)
                   * qpoch(q, q, n) * d ** n)
                * (1 - dt * q ** (2 * n)) / (1 - dt))
        tail = ((-1) ** N * qpoch(d * q / a, q, N) * qpoch(d * q / b, q, N)
                * qpoch(d * q / c, q, N) * dt ** N * q ** (N * (N + 1) // 2)
                / (qpoch(dt * q, q, N) * qpoch(d * q, q, 2 * N)))
        return head * tail
    head = (poch(a, n) * poch(b, n) * poch(c, n) * poch(dt, n)
            / (poch(dt - a + 1, n) * poch(dt - b + 1, n) * poch(dt - c + 1, n) * poch(ONE, n))
            * (2 * n + dt) / dt)
    tail = ((-1) ** N * poch(d - a + 1, N) * poch(d - b + 1, N) * poch(d - c + 1, N)
            / (poch(dt + 1, N) * poch(d + 1, 2 * N)))
    return head * tail


def weight_and_norm(lam):
    """Weights on x = 0..N and squared norms for n = 0..N.

    Raises InvariantViolation when the parameters are in range but some
    value is not positive.
    """
    if lam.N is None:
        raise AssumptionViolated("weight_and_norm needs finite-mode parameters")
    ws = [weight(x, lam) for x in range(lam.N + 1)]
    ns = [norm2(n, lam) for n in range(lam.N + 1)]
    if lam.in_range():
        for i, v in enumerate(ws):
            if v <= 0:
                raise InvariantViolation(f"weight at x={i} is {fmt(v)}")
        for i, v in enumerate(ns):
            if v <= 0:
                raise InvariantViolation(f"norm at n={i} is {fmt(v)}")
    return ws, ns


# --- virtual-state polynomials and auxiliary functions ---------------------------------------


def xi(v, lam):
    """Virtual-state polynomial xi_v as a polynomial in eta (same coordinate as P_n)."""
    return racah_poly(v, lam.twist())


def xi_values(vmax, x, lam):
    return racah_values(vmax, x, lam.twist())


def varphi(x, lam):
    return (eta(x + 1, lam) - eta(x, lam)) / eta(1, lam)


def varphi_M(x, lam, M):
    out = ONE
    for k in range(2, M + 1):
        for j in range(1, k):
            out *= (eta(x + k - 1, lam) - eta(x + j - 1, lam)) / eta(k - j, lam)
    return out


def r_factor(x, j, lam, M):
    """Weight multiplying P_n(x_j) in the last column of the multi-indexed Casoratian."""
    a, b, c, d = lam.values()
    if lam.is_q:
        q = lam.q
        qx = _qpow(lam, x)
        num = (qpoch(a * qx, q, j - 1) * qpoch(b * qx, q, j - 1)
               * qpoch(d * qx * q ** j / a, q, M + 1 - j) * qpoch(d * qx * q ** j / b, q, M + 1 - j))
        den = ((a * b / (d * q)) ** (j - 1) * qx ** M
               * qpoch(d * q / a, q, M) * qpoch(d * q / b, q, M))
        return num / den
    x = Q(x)
    num = (poch(x + a, j - 1) * poch(x + b, j - 1)
           * poch(x + d - a + j, M + 1 - j) * poch(x + d - b + j, M + 1 - j))
    return num / (poch(d - a + 1, M) * poch(d - b + 1, M))


# --- leading coefficients ------------------------------------------------------------------------


def lead_coeff(n, lam):
    """Leading coefficient of P_n in eta."""
    a, b, c = lam.a, lam.b, lam.c
    dt = lam.dtilde
    if lam.is_q:
        q = lam.q
        return qpoch(dt * q ** n, q, n) / (qpoch(a, q, n) * qpoch(b, q, n) * qpoch(c, q, n))
    return poch(dt + n, n) / (poch(a, n) * poch(b, n) * poch(c, n))


def lead_coeff_virtual(v, lam):
    """Leading coefficient of xi_v, written out directly in the base parameters."""
    a, b, c, d = lam.values()
    if lam.is_q:
        q = lam.q
        return (qpoch(c * d * q ** (v + 1) / (a * b), q, v)
                / (qpoch(d * q / a, q, v) * qpoch(d * q / b, q, v) * qpoch(c, q, v)))
    return poch(c + d - a - b + v + 1, v) / (poch(d - a + 1, v) * poch(d - b + 1, v) * poch(c, v))


def check_generic(lam, nmax, D=()):
    """Raise AssumptionViolated unless the constructions up to degree nmax are regular."""
    problems = []
    for target in (lam, lam.twist()):
        for n in range(nmax + 1):
            try:
                A, _, C = ttrc(n, target)
            except PoleInCoefficient as exc:
                problems.append(str(exc))
                continue
            if n < nmax and not A and (target.N is None or n != target.N):
                problems.append(f"A_{n} vanishes")
    for v in D:
        for n in range(nmax + 1):
            if energy(n, lam) == virtual_energy(v, lam):
                problems.append(f"E_{n} equals the virtual energy of {v}")
    if lam.d == 0 or (lam.is_q and lam.d == 1):
        problems.append("d is degenerate")
    if problems:
        raise AssumptionViolated("; ".join(problems))


def verify_base(lam, nmax=None):
    """Orthogonality, difference equation and hypergeometric values of P_0 .. P_N."""
    if lam.N is None:
        raise AssumptionViolated("the base checks need finite-mode parameters")
    N = lam.N
    nmax = N if nmax is None else nmax
    rep = Report("base family", **lam.as_dict())
    ws, ns = weight_and_norm(lam)
    vals = [racah_values(nmax, x, lam) for x in range(N + 1)]
    polys = racah_polys(lam, nmax)
    rep.check("polynomials match lattice values",
              all(polys[n](eta(x, lam)) == vals[x][n] for x in range(N + 1) for n in range(nmax + 1)))
    rep.check("hypergeometric values",
              all(hypergeometric_value(n, x, lam) == vals[x][n]
                  for x in range(N + 1) for n in range(nmax + 1)))
    gram_ok = True
    for n in range(nmax + 1):
        for m in range(n, nmax + 1):
            s = sum((ws[x] * vals[x][n] * vals[x][m] for x in range(N + 1)), ZERO)
            gram_ok &= s == (1 / ns[n] if n == m else 0)
    rep.check("orthogonality", gram_ok)
    pots = [potentials(x, lam) for x in range(N + 1)]
    for n in range(nmax + 1):
        En = energy(n, lam)
        ok = True
        for x in range(N + 1):
            B, D = pots[x]
            p = vals[x][n]
            up = vals[x + 1][n] if x < N else ZERO      # B(N) = 0
            down = vals[x - 1][n] if x > 0 else ZERO    # D(0) = 0
            ok &= B * (p - up) + D * (p - down) == En * p
        rep.check(f"difference equation n={n}", ok)
    if lam.in_range():
        rep.check("positive weights and norms", all(w > 0 for w in ws) and all(v > 0 for v in ns))
    else:
        rep.advisory("parameter range", violations=lam.range_violations())
    return rep
