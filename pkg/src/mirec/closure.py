"""Closure relation between the deformed Hamiltonian and multiplication by X.

With alpha_1 .. alpha_2L the eigenvalue shifts E_{n+k} - E_n (k = L..1 and
-1..-L) written as functions of z = E_n, the coefficients R_i(z) of

    prod_j (t - alpha_j(z)) = t^K - sum_{i<K} R_i(z) t^i,     K = 2L,

give (ad H)^K X = sum_{i<K} (ad H)^i X R_i(H) + R_{-1}(H), and the same data
build 2L ladder operators that shift the multi-indexed polynomials.
Functions of H are realised on its eigenbasis, the lattice vectors of
P_{D,0..N}.
"""

from .errors import (ConjectureCounterexample, DegenerateSpectrum,
                     InsufficientBasis)
from .exact import ONE, ZERO, Matrix, Poly, interpolate
from .family import energy, eta
from .multi import Deformed, MultiIndexed
from .rconst import alpha_pair, alpha_values, grid_table, xpoly
from .report import Report


def alpha_pairs(L, lam):
    return [alpha_pair(j, L, lam) for j in range(1, L + 1)]


def closure_coeffs(L, lam):
    """R_0 .. R_{2L-1} as polynomials in z."""
    poly_t = [Poly.const(1)]                      # coefficients of t^0, t^1, ...
    for s, p in alpha_pairs(L, lam):
        nxt = [Poly() for _ in range(len(poly_t) + 2)]
        for i, c in enumerate(poly_t):
            nxt[i + 2] = nxt[i + 2] + c
            nxt[i + 1] = nxt[i + 1] - s * c
            nxt[i] = nxt[i] + p * c
        poly_t = nxt
    K = 2 * L
    return [-poly_t[i] for i in range(K)]


def alpha_order(L, lam, n):
    """Whether alpha_1 > .. > alpha_L > 0 > alpha_{L+1} > .. > alpha_2L at z = E_n."""
    al = alpha_values(L, n, lam)
    return all(al[i] > al[i + 1] for i in range(2 * L - 1)) and al[L - 1] > 0 > al[L]


class Closure:
    """Closure data for one (D, X) pair in finite mode."""

    def __init__(self, D, X, L, lam, fam=None):
        self.fam = fam or MultiIndexed(D, lam)
        self.lam = lam
        self.X = X
        self.L = L
        self.K = 2 * L
        self.N = lam.N
        self.deformed = Deformed(self.fam)
        self.H = self.deformed.matrix
        self.V = self.deformed.eigenvectors()
        self.Vinv = self.V.inverse()
        self.table = grid_table(self.fam, X, L)
        self.R = closure_coeffs(L, lam)
        self.energies = [energy(n, lam) for n in range(self.N + 1)]
        self.Xmat = Matrix.diag([X(eta(x, lam, self.fam.M)) for x in range(self.N + 1)])
        self.R_minus1 = self._fit_r_minus1()

    def _fit_r_minus1(self):
        K = self.K
        samples = [(z, -self.table.r(n, 0) * self.R[0](z)) for n, z in enumerate(self.energies)]
        if len(samples) < K + 2:
            raise InsufficientBasis(f"need at least {K + 2} rows to fit and check R_-1")
        fit, rest = samples[:K + 1], samples[K + 1:]
        poly = interpolate([s[0] for s in fit], [s[1] for s in fit])
        for z, v in rest:
            if poly(z) != v:
                raise ConjectureCounterexample("R_-1 is not a polynomial of degree <= 2L")
        return poly

    def spectral(self, values):
        """The operator acting as ``values[n]`` on the n-th eigenvector."""
        return (self.V.scale_cols(values)) @ self.Vinv

    def of_H(self, poly):
        return self.spectral([poly(z) for z in self.energies])

    def ad_powers(self, upto):
        out = [self.Xmat]
        for _ in range(upto):
            out.append(self.H.commutator(out[-1]))
        return out

    def ladder(self, j, ads=None):
        """Ladder operator a^(j), j = 1..2L."""
        K, N = self.K, self.N
        ads = ads or self.ad_powers(K)
        al = [alpha_values(self.L, n, self.lam) for n in range(N + 1)]
        denom = []
        for n in range(N + 1):
            v = ONE
            for k in range(K):
                if k != j - 1:
                    diff = al[n][j - 1] - al[n][k]
                    if not diff:
                        raise DegenerateSpectrum(f"alpha_{j} = alpha_{k + 1} at n={n}")
                    v *= diff
            if not al[n][j - 1]:
                raise DegenerateSpectrum(f"alpha_{j} vanishes at n={n}")
            denom.append(v)
        Rv = [[r(z) for z in self.energies] for r in self.R]
        total = Matrix.zeros(N + 1)
        for i in range(1, K + 1):
            vals = []
            for n in range(N + 1):
                a = al[n][j - 1]
                p = a ** (K - i)
                for k in range(1, K - i + 1):
                    p -= Rv[K - k][n] * a ** (K - i - k)
                vals.append(p / denom[n])
            total = total + ads[i - 1] @ self.spectral(vals)
        rm1 = [self.R_minus1(z) / (al[n][j - 1] * denom[n]) for n, z in enumerate(self.energies)]
        return total + self.spectral(rm1)

    def shift_of(self, j):
        return self.L + 1 - j if j <= self.L else -(j - self.L)


def verify_closure(D, X, L, lam, fam=None):
    """Closure identity, ladder actions and resummation at finite N."""
    cl = Closure(D, X, L, lam, fam)
    K, N = cl.K, cl.N
    rep = Report("closure relation", D=list(cl.fam.D), L=L, **lam.as_dict())
    rep.check("R_-1 degree", cl.R_minus1.degree <= K, degree=cl.R_minus1.degree)
    ads = cl.ad_powers(K)
    rhs = cl.of_H(cl.R_minus1)
    for i in range(K):
        rhs = rhs + ads[i] @ cl.of_H(cl.R[i])
    rep.check("closure identity", ads[K] == rhs)
    # the spectral construction agrees with the matrix polynomial on H
    horner = Matrix.zeros(N + 1)
    for c in reversed(cl.R[0].dense()):
        horner = horner @ cl.H + Matrix.identity(N + 1).scale(c)
    rep.check("spectral function of H", horner == cl.of_H(cl.R[0]))
    ladders = [cl.ladder(j, ads) for j in range(1, K + 1)]
    for j, a in enumerate(ladders, start=1):
        k = cl.shift_of(j)
        img = a @ cl.V
        ok = True
        for n in range(N + 1):
            m = n + k
            want = [cl.table.r(n, k) * cl.V[x, m] if 0 <= m <= N else ZERO for x in range(N + 1)]
            ok &= img.column(n) == want
        rep.check(f"ladder a^({j}) shifts by {k}", ok)
    r0inv = cl.spectral([1 / cl.R[0](z) for z in cl.energies])
    total = ladders[0]
    for a in ladders[1:]:
        total = total + a
    rep.check("resummation", total - cl.of_H(cl.R_minus1) @ r0inv == cl.Xmat)
    for n in range(min(N, 4) + 1):
        s, p = zip(*[(s(cl.energies[n]), p(cl.energies[n])) for s, p in alpha_pairs(L, lam)])
        al = alpha_values(L, n, lam)
        ok = all(al[j] + al[K - 1 - j] == s[j] and al[j] * al[K - 1 - j] == p[j] for j in range(L))
        rep.check(f"alpha pairs at E_{n}", ok)
    return rep


def minimal_x(D, lam, fam=None):
    return xpoly(D, 1, lam, fam)
