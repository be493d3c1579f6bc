"""Multi-indexed polynomials built from Casoratian determinants.

For an index set D = {d_1 < ... < d_M} the deforming polynomial Xi_D is a
polynomial of degree ``ell(D)`` in eta(x; lam + (M-1) delta), and the
multi-indexed polynomials P_{D,n} have degree ``ell(D) + n`` in
eta(x; lam + M delta). Both are recovered by interpolating determinant
values on the integer lattice and normalised to take the value 1 at x = 0.
"""

from functools import cached_property

from . import kernels
from .errors import (AssumptionViolated, DegenerateGrid, PoleInCoefficient,
                     SingularDeformation, UnsupportedIndexType)
from .exact import ONE, ZERO, Matrix, NewtonInterpolator, Poly, poch, poly_gcd, qpoch
from .family import (energy, eta, eta_xfunc, lead_coeff, lead_coeff_virtual,
                     norm2, potential_rational, potentials, racah_values,
                     r_factor, shift_xfunc, varphi_M, virtual_energy,
                     weight, xi_values)
from .report import Report


def index_set(D):
    """Validate and canonicalise an index set (sorted, distinct, positive)."""
    if D is None:
        return ()
    if isinstance(D, dict) or (isinstance(D, tuple) and len(D) == 2
                               and all(isinstance(p, (tuple, list)) for p in D)):
        raise UnsupportedIndexType("only type-I virtual state indices are supported")
    out = tuple(sorted(int(d) for d in D))
    if len(set(out)) != len(out):
        raise ValueError("index set has repeated entries")
    if out and out[0] < 1:
        raise ValueError("indices must be positive integers")
    return out


def ell(D):
    D = index_set(D)
    M = len(D)
    return sum(D) - M * (M - 1) // 2


def casoratian(fs, x):
    """det(f_k(x + j - 1)) for a list of callables f_k."""
    M = len(fs)
    rows = [[f(x + j) for f in fs] for j in range(M)]
    return kernels.det(rows) if M else ONE


def _certified(xs_vals, degree, extra, what):
    """Interpolate the first degree+1 samples and check the rest against it."""
    ni = NewtonInterpolator()
    for e, v in xs_vals[:degree + 1]:
        ni.add(e, v)
    for i, (e, v) in enumerate(xs_vals[degree + 1:]):
        if ni.predict(e) != v:
            raise AssumptionViolated(f"{what} is not of degree {degree}; "
                                     f"extra node {i} disagrees")
    return ni.poly()


class MultiIndexed:
    """Multi-indexed polynomials for index set D at parameters lam.

    Determinant values are cached per lattice point, so building many
    P_{D,n} from one instance shares the virtual-state evaluations.
    ``extra`` is the number of lattice points beyond the interpolation nodes
    used to certify each degree.
    """

    def __init__(self, D, lam, extra=2):
        self.D = index_set(D)
        self.M = len(self.D)
        self.ell = ell(self.D)
        self.lam = lam
        self.extra = extra
        self._xi_cache = {}
        self._p_cache = {}
        self._polys = {}

    # --- lattice values --------------------------------------------------------
    def _xi_row(self, x):
        row = self._xi_cache.get(x)
        if row is None:
            vals = xi_values(self.D[-1], x, self.lam) if self.D else []
            row = [vals[d] for d in self.D]
            self._xi_cache[x] = row
        return row

    def _p_vals(self, n, x):
        vals = self._p_cache.get(x)
        if vals is None or len(vals) <= n:
            vals = racah_values(n, x, self.lam)
            self._p_cache[x] = vals
        return vals

    def xi_raw(self, x):
        """det(xi_{d_k}(x_j)) / varphi_M(x), the unnormalised deforming polynomial."""
        if not self.M:
            return ONE
        rows = [self._xi_row(x + j) for j in range(self.M)]
        return kernels.det(rows) / varphi_M(x, self.lam, self.M)

    def p_raw(self, n, x):
        """Casoratian of xi_{d_1..d_M} and r_j P_n, divided by varphi_{M+1}(x)."""
        M = self.M
        rows = []
        for j in range(1, M + 2):
            xj = x + j - 1
            pv = self._p_vals(n, xj)[n]
            rows.append(self._xi_row(xj) + [r_factor(x, j, self.lam, M) * pv])
        return kernels.det(rows) / varphi_M(x, self.lam, M + 1)

    # --- polynomials --------------------------------------------------------------
    def _abscissae(self, count, s):
        xs = [eta(x, self.lam, s) for x in range(count)]
        if len(set(xs)) != len(xs):
            raise DegenerateGrid("sinusoidal coordinate repeats on the lattice")
        return xs

    @cached_property
    def xi_poly(self):
        """Xi_D as a polynomial in eta(x; lam + (M-1) delta) with Xi_D(0) = 1."""
        if not self.M:
            return Poly.const(1)
        deg = self.ell
        count = deg + 1 + self.extra
        xs = self._abscissae(count, self.M - 1)
        raw = [self.xi_raw(x) for x in range(count)]
        if not raw[0]:
            raise AssumptionViolated("deforming polynomial vanishes at x = 0")
        p = _certified(list(zip(xs, [v / raw[0] for v in raw])), deg, self.extra,
                       "deforming polynomial")
        if p.degree != deg:
            raise AssumptionViolated(f"deforming polynomial has degree {p.degree}, not {deg}")
        return p

    def poly(self, n):
        """P_{D,n} in eta(x; lam + M delta) with P_{D,n}(0) = 1."""
        p = self._polys.get(n)
        if p is not None:
            return p
        deg = self.ell + n
        count = deg + 1 + self.extra
        try:
            xs = self._abscissae(count, self.M)
            raw = [self.p_raw(n, x) for x in range(count)]
        except PoleInCoefficient as exc:
            raise AssumptionViolated(str(exc)) from exc
        if not raw[0]:
            raise AssumptionViolated(f"P_(D,{n}) vanishes at x = 0")
        p = _certified(list(zip(xs, [v / raw[0] for v in raw])), deg, self.extra,
                       f"P_(D,{n})")
        if p.degree != deg:
            raise AssumptionViolated(f"P_(D,{n}) has degree {p.degree}, not {deg}")
        self._polys[n] = p
        return p

    def polys(self, nmax):
        return [self.poly(n) for n in range(nmax + 1)]

    def set_poly(self, n, p):
        """Seed the cache (used when polynomials come from the recurrence)."""
        self._polys[n] = p

    # --- lattice functions -----------------------------------------------------------
    def xi_check(self, x):
        return self.xi_poly(eta(x, self.lam, self.M - 1))

    def value(self, n, x):
        return self.poly(n)(eta(x, self.lam, self.M))


def xi_D(D, lam, extra=2):
    return MultiIndexed(D, lam, extra).xi_poly


def p_Dn(D, n, lam, extra=2):
    return MultiIndexed(D, lam, extra).poly(n)


# --- closed forms -----------------------------------------------------------------------------


def _B_twist(x, lam):
    return potentials(x, lam.twist())[0]


def C_D(D, lam):
    """Value at x = 0 of the unnormalised deforming polynomial."""
    D = index_set(D)
    M = len(D)
    out = 1 / varphi_M(0, lam, M)
    for k in range(M):
        for j in range(k):
            out *= ((virtual_energy(D[j], lam) - virtual_energy(D[k], lam))
                    / (lam.alpha * _B_twist(j, lam)))
    return out


def dtilde2_Dn(D, n, lam):
    D = index_set(D)
    M = len(D)
    out = varphi_M(0, lam, M) / varphi_M(0, lam, M + 1)
    for j in range(M):
        out *= (energy(n, lam) - virtual_energy(D[j], lam)) / (lam.alpha * _B_twist(j, lam))
    return out


def C_Dn(D, n, lam):
    """Value at x = 0 of the unnormalised multi-indexed polynomial."""
    M = len(index_set(D))
    return (-1) ** M * C_D(D, lam) * dtilde2_Dn(D, n, lam)


def norm2_D(D, n, lam):
    return norm2(n, lam) * dtilde2_Dn(D, n, lam)


def lead_xi_D(D, lam):
    """Leading coefficient of Xi_D."""
    D = index_set(D)
    M = len(D)
    a, b, c, d = lam.values()
    out = ONE
    for v in D:
        out *= lead_coeff_virtual(v, lam)
    if lam.is_q:
        q = lam.q
        for j in range(1, M + 1):
            out *= qpoch(d * q / a, q, j - 1) * qpoch(d * q / b, q, j - 1) * qpoch(c, q, j - 1)
        for k in range(M):
            for j in range(k):
                out /= 1 - c * d * q ** (D[j] + D[k] + 1) / (a * b)
        return out
    for j in range(1, M + 1):
        out *= poch(d - a + 1, j - 1) * poch(d - b + 1, j - 1) * poch(c, j - 1)
    for k in range(M):
        for j in range(k):
            out /= c + d - a - b + D[j] + D[k] + 1
    return out


def lead_P_D(D, n, lam):
    """Leading coefficient of P_{D,n}."""
    D = index_set(D)
    out = lead_xi_D(D, lam) * lead_coeff(n, lam)
    c = lam.c
    for j, dj in enumerate(D, start=1):
        if lam.is_q:
            q = lam.q
            out *= (1 - c * q ** (j - 1)) / (1 - c * q ** (dj + n))
        else:
            out *= (c + j - 1) / (c + dj + n)
    return out


# --- deformed Hamiltonian -------------------------------------------------------------------------


class Deformed:
    """Finite-mode data of the deformed difference operator for index set D.

    ``matrix`` acts on column vectors indexed by x = 0..N and has the
    multi-indexed polynomials (as lattice vectors) as eigenvectors with
    eigenvalues E_n.
    """

    def __init__(self, family):
        lam = family.lam
        if lam.N is None:
            raise AssumptionViolated("the deformed operator needs finite-mode parameters")
        self.family = family
        self.lam = lam
        N, M = lam.N, family.M
        self.N = N
        lam_t = lam.twisted_shift(M)
        shifted = MultiIndexed(family.D, lam.shift(1), family.extra)
        xi = [family.xi_check(x) for x in range(N + 2)]
        xs = [shifted.xi_check(x) for x in range(-1, N + 2)]   # xs[x + 1]
        for x, v in enumerate(xi):
            if not v:
                raise SingularDeformation(f"deforming polynomial vanishes at x={x}")
        for x, v in enumerate(xs):
            if not v:
                raise SingularDeformation(f"shifted deforming polynomial vanishes at x={x - 1}")
        self.xi = xi
        self.B_D, self.D_D, self.upper, self.lower = [], [], [], []
        for x in range(N + 1):
            B, D = potentials(x, lam_t)
            self.B_D.append(B * xi[x] / xi[x + 1] * xs[x + 2] / xs[x + 1])
            self.D_D.append(D * xi[x + 1] / xi[x] * xs[x] / xs[x + 1])
            self.upper.append(-B * xi[x] / xi[x + 1])
            self.lower.append(-D * xi[x + 1] / xi[x])
        rows = [[ZERO] * (N + 1) for _ in range(N + 1)]
        for x in range(N + 1):
            rows[x][x] = self.B_D[x] + self.D_D[x]
            if x < N:
                rows[x][x + 1] = self.upper[x]
            if x > 0:
                rows[x][x - 1] = self.lower[x]
        self.matrix = Matrix(rows)
        # squared ground state divided by its value Xi_D(1), so psi2[0] == 1
        self.psi2 = [weight(x, lam_t) / (xi[x] * xi[x + 1]) for x in range(N + 1)]

    def eigenvectors(self):
        """Columns P_{D,n}(x) for n = 0..N."""
        f = self.family
        cols = [[f.value(n, x) for x in range(self.N + 1)] for n in range(self.N + 1)]
        return Matrix([[cols[n][x] for n in range(self.N + 1)] for x in range(self.N + 1)])


def deformed(D, lam, extra=2):
    return Deformed(MultiIndexed(D, lam, extra))


# --- polynomiality criterion ------------------------------------------------------------------------


def _strip(p):
    """Drop a monomial factor so the result is an ordinary polynomial with p(0) != 0."""
    return Poly(p.coeffs) if not p.is_zero() else p


def polynomiality(p, D, lam):
    """Whether the deformed operator maps p(eta(x; lam + M delta)) to a polynomial.

    Builds the image as a ratio of x-functions (Laurent polynomials in q**x for
    qR), cancels the gcd and reports whether only a unit remains downstairs.
    """
    fam = MultiIndexed(D, lam)
    M = fam.M
    lam_t = lam.twisted_shift(M)
    e_M = eta_xfunc(lam, M)
    Xi = fam.xi_poly.compose(eta_xfunc(lam, M - 1))
    Xs = MultiIndexed(D, lam.shift(1)).xi_poly.compose(e_M)
    pc = p.compose(e_M)

    def sh(f, s):
        return shift_xfunc(f, lam, s)

    bnum, bden, dnum, dden = potential_rational(lam_t)
    Xi1 = sh(Xi, 1)
    u1 = sh(Xs, 1) * pc - Xs * sh(pc, 1)
    u2 = sh(Xs, -1) * pc - Xs * sh(pc, -1)
    num = bnum * Xi * Xi * u1 * dden + dnum * Xi1 * Xi1 * u2 * bden
    den = bden * dden * Xi * Xi1 * Xs
    num, den = _strip(num), _strip(den)
    if num.is_zero():
        return True
    g = poly_gcd(num, den)
    reduced = den.divrem(g)[0]
    return reduced.degree == 0


# --- verification ---------------------------------------------------------------------------------


def verify_family(D, lam, nmax=None, extra=2):
    """Structural checks of the multi-indexed family; returns a Report."""
    fam = MultiIndexed(D, lam, extra)
    finite = lam.N is not None
    if nmax is None:
        nmax = lam.N if finite else 6
    rep = Report("multi-indexed family", D=list(fam.D), **lam.as_dict())
    if fam.M:
        xi = fam.xi_poly
        rep.check("xi degree", xi.degree == fam.ell, degree=xi.degree)
        rep.check("xi leading coefficient", xi.leading == lead_xi_D(fam.D, lam))
        rep.check("xi normalisation constant", fam.xi_raw(0) == C_D(fam.D, lam))
    shifted = MultiIndexed(fam.D, lam.shift(1), extra)
    rep.check("shape invariance", fam.poly(0) == shifted.xi_poly)
    for n in range(nmax + 1):
        p = fam.poly(n)
        rep.check(f"degree n={n}", p.degree == fam.ell + n, degree=p.degree)
        rep.check(f"leading coefficient n={n}", p.leading == lead_P_D(fam.D, n, lam))
        rep.check(f"normalisation constant n={n}", fam.p_raw(n, 0) == C_Dn(fam.D, n, lam))
    if finite:
        de = Deformed(fam)
        V = de.eigenvectors()
        HV = de.matrix @ V
        for n in range(lam.N + 1):
            En = energy(n, lam)
            rep.check(f"eigen-equation n={n}",
                      all(HV[x, n] == En * V[x, n] for x in range(lam.N + 1)))
        norms = [norm2_D(fam.D, n, lam) for n in range(lam.N + 1)]
        gram = V.transpose().scale_cols(de.psi2) @ V
        ok = all(gram[n, m] == (1 / norms[n] if n == m else 0)
                 for n in range(lam.N + 1) for m in range(lam.N + 1))
        rep.check("orthogonality", ok)
        if lam.in_range(fam.D):
            rep.check("positive weights", all(w > 0 for w in de.psi2))
            rep.check("positive norms", all(v > 0 for v in norms))
        else:
            rep.advisory("parameter range", violations=lam.range_violations(fam.D))
    return rep
