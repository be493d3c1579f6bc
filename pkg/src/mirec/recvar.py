"""Recurrence with variable coefficients for multi-indexed polynomials.

The coefficients R^[s]_{n,k} are built from the base three-term recurrence
as functions of the lattice variable (polynomials in x for R, Laurent
polynomials in z = q**x for qR). ``R^[M]_{n,k}`` is a polynomial of degree
M + 1 - |k| in eta(x; lam + M delta), and

    sum_k C_{D,n+k} R^[M]_{n,k} P_{D,n+k} = 0,   k = -M-1 .. M+1,

which lets P_{D,n} for n > M be generated from P_{D,0..M}.
"""

import time

from . import kernels
from .errors import AssumptionViolated, CannotAdvance, VerificationFailure
from .exact import ONE, Poly, interpolate
from .family import energy, eta, eta_xfunc, shift_xfunc, ttrc, virtual_energy
from .multi import C_Dn, MultiIndexed, index_set
from .report import Report


def involution(f, lam, s):
    """Image of an x-function under the reflection fixing eta(x; lam + s delta)."""
    if lam.is_q:
        c = lam.d * lam.q ** s
        coeffs = list(reversed(f.coeffs))
        out = Poly(coeffs, low=-f.degree)
        return out.scale_var(c)
    return f.compose(Poly([-(lam.d + s), -1]))


class VarRecurrence:
    """Memoised table of R^[s]_{n,k} for fixed base parameters."""

    def __init__(self, lam):
        self.lam = lam
        self._memo = {}
        self._eta = {}
        self._eta_forms = {}
        self._base = eta_xfunc(lam)

    def eta_shifted(self, s):
        e = self._eta.get(s)
        if e is None:
            e = shift_xfunc(self._base, self.lam, s)
            self._eta[s] = e
        return e

    def entry(self, s, n, k):
        """R^[s]_{n,k} as an x-function (zero outside |k| <= s+1, n+k >= 0)."""
        if n < 0 or abs(k) > s + 1 or n + k < 0:
            return Poly()
        if s == -1:
            return Poly.const(1)
        key = (s, n, k)
        out = self._memo.get(key)
        if out is not None:
            return out
        A, B, C = ttrc(n, self.lam)
        out = self.entry(s - 1, n + 1, k - 1) * A
        mid = self.entry(s - 1, n, k)
        if not mid.is_zero():
            out = out + mid * (Poly.const(B) - self.eta_shifted(s))
        if n > 0 and C:
            out = out + self.entry(s - 1, n - 1, k + 1) * C
        self._memo[key] = out
        return out

    def table(self, s, n):
        return {k: self.entry(s, n, k) for k in range(-s - 1, s + 2) if n + k >= 0}

    def shift_identity(self, s, n, k):
        """R^[s](x+1) - R^[s](x) == (eta(x) - eta(x+s+1)) R^[s-1](x+1)."""
        lam = self.lam
        f = self.entry(s, n, k)
        lhs = shift_xfunc(f, lam, 1) - f
        rhs = (self._base - self.eta_shifted(s + 1)) * shift_xfunc(self.entry(s - 1, n, k), lam, 1)
        return lhs == rhs

    def eta_form(self, M, n, k, certify=True):
        """R^[M]_{n,k} as a polynomial in eta(x; lam + M delta)."""
        key = (M, n, k, certify)
        out = self._eta_forms.get(key)
        if out is not None:
            return out
        f = self.entry(M, n, k)
        if f.is_zero():
            out = Poly()
        else:
            deg = M + 1 - abs(k)
            xs = [eta(x, self.lam, M) for x in range(deg + 1)]
            ys = [f(self.lam.q ** x if self.lam.is_q else x) for x in range(deg + 1)]
            out = interpolate(xs, ys)
            if certify and out.compose(eta_xfunc(self.lam, M)) != f:
                raise AssumptionViolated(
                    f"R^[{M}]_({n},{k}) is not a polynomial of degree {deg} in eta")
        self._eta_forms[key] = out
        return out


def rtable_eta(M, n, lam, rec=None):
    rec = rec or VarRecurrence(lam)
    return {k: rec.eta_form(M, n, k) for k in range(-M - 1, M + 2) if n + k >= 0}


def weight_ratio(D, n, k, lam):
    """C_{D,n+k} / C_{D,n} written as a product over the index set."""
    out = ONE
    En, Enk = energy(n, lam), energy(n + k, lam)
    for v in D:
        Ev = virtual_energy(v, lam)
        out *= (Enk - Ev) / (En - Ev)
    return out


def verify_variable_recurrence(D, n, lam, fam=None, rec=None):
    """Check the (2M+3)-term identity at row n both with ratios and closed-form constants."""
    D = index_set(D)
    M = len(D)
    fam = fam or MultiIndexed(D, lam)
    rec = rec or VarRecurrence(lam)
    rep = Report("variable-coefficient recurrence", D=list(D), n=n, **lam.as_dict())
    total_ratio = Poly()
    total_const = Poly()
    for k in range(-M - 1, M + 2):
        if n + k < 0:
            continue
        term = rec.eta_form(M, n, k) * fam.poly(n + k)
        total_ratio = total_ratio + term * weight_ratio(D, n, k, lam)
        total_const = total_const + term * C_Dn(D, n + k, lam)
    rep.check(f"identity (ratio form) n={n}", total_ratio.is_zero())
    rep.check(f"identity (closed-form constants) n={n}", total_const.is_zero())
    return rep


def verify_shift_identity(lam, smax, nmax):
    rec = VarRecurrence(lam)
    rep = Report("shift identity", **lam.as_dict())
    for s in range(smax + 1):
        for n in range(nmax + 1):
            for k in range(-s - 1, s + 2):
                if n + k < 0:
                    continue
                rep.check(f"s={s} n={n} k={k}", rec.shift_identity(s, n, k))
                f = rec.entry(s, n, k)
                rep.check(f"reflection symmetry s={s} n={n} k={k}",
                          involution(f, lam, s) == f)
    return rep


def generate(D, lam, nmax, fam=None, rec=None):
    """P_{D,0..nmax}: determinants for n <= M, the recurrence afterwards."""
    D = index_set(D)
    M = len(D)
    fam = fam or MultiIndexed(D, lam)
    rec = rec or VarRecurrence(lam)
    out = [fam.poly(n) for n in range(min(M, nmax) + 1)]
    for n in range(0, nmax - M):
        acc = Poly()
        for k in range(-M - 1, M + 1):
            if n + k < 0:
                continue
            w = weight_ratio(D, n, k, lam)
            acc = acc + rec.eta_form(M, n, k, certify=False) * out[n + k] * w
        top = rec.eta_form(M, n, M + 1, certify=False) * weight_ratio(D, n, M + 1, lam)
        if top.is_zero():
            raise CannotAdvance(f"leading recurrence coefficient vanishes at n={n}")
        out.append(acc * (-1 / top.coeff(0)))
    return out


def _recurrence_run(D, lam, nmax, on_step):
    M = len(D)
    fam = MultiIndexed(D, lam, extra=0)
    rec = VarRecurrence(lam)
    out = []
    for n in range(nmax + 1):
        if n <= M:
            out.append(fam.poly(n))
        else:
            m = n - M - 1
            acc = Poly()
            for k in range(-M - 1, M + 1):
                if m + k >= 0:
                    acc = acc + rec.eta_form(M, m, k, certify=False) * out[m + k] * weight_ratio(D, m, k, lam)
            top = rec.eta_form(M, m, M + 1, certify=False) * weight_ratio(D, m, M + 1, lam)
            if top.is_zero():
                raise CannotAdvance(f"leading recurrence coefficient vanishes at n={m}")
            out.append(acc * (-1 / top.coeff(0)))
        on_step(n)
    return out


def compare_paths(D, lam, nmax):
    """Build P_{D,0..nmax} both ways; per-n multiplication counts and wall times.

    Returns rows ``(method, n, mults, seconds)``. The determinant path builds
    each P_{D,n} from scratch; the recurrence path reports the increment of a
    single cumulative run seeded with P_{D,0..M}. Counts come from an
    instrumented run, times from a separate uninstrumented run. Raises
    VerificationFailure if the two paths disagree anywhere.
    """
    D = index_set(D)
    det_counts, det_times, det_polys = [], [], []
    for n in range(nmax + 1):
        with kernels.counting() as c:
            MultiIndexed(D, lam, extra=0).poly(n)
        det_counts.append(c.count)
        t0 = time.perf_counter()
        det_polys.append(MultiIndexed(D, lam, extra=0).poly(n))
        det_times.append(time.perf_counter() - t0)

    rec_counts = []
    with kernels.counting() as c:
        marks = [0]

        def count_step(n):
            rec_counts.append(c.count - marks[0])
            marks[0] = c.count
        _recurrence_run(D, lam, nmax, count_step)
    rec_times = []
    clock = [time.perf_counter()]

    def time_step(n):
        now = time.perf_counter()
        rec_times.append(now - clock[0])
        clock[0] = now
    gen = _recurrence_run(D, lam, nmax, time_step)

    for n, (a, b) in enumerate(zip(det_polys, gen)):
        if a != b:
            raise VerificationFailure("recurrence and determinant disagree", witness={"n": n})
    rows = [("determinant", n, det_counts[n], det_times[n]) for n in range(nmax + 1)]
    rows += [("recurrence", n, rec_counts[n], rec_times[n]) for n in range(nmax + 1)]
    return rows
