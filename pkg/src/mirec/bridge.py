"""Racah <-> Wilson and q-Racah <-> Askey-Wilson correspondence.

For index sets of virtual states of a single kind the multi-indexed
(q-)Racah polynomials are, after an affine change of the sinusoidal
coordinate and a rescaling, the multi-indexed (Askey-)Wilson polynomials
with parameters shifted by half of the fourth one:

    R -> W:   a_i = lam_i - d/2,          eta' = -eta - (d + M)^2 / 4
    qR -> AW: a_i = lam_i / sqrt(d),      eta' = (eta + 1 + d q^M) / (2 sqrt(d) q^(M/2))

The Wilson-side leading coefficient is not constructed here. Transported
polynomials are made monic (or scaled to a caller-supplied leading
coefficient), which is enough because every identity checked below involves
only ratios of the Wilson-side normalisations.
"""

from dataclasses import dataclass

from .errors import IrrationalShift
from .exact import ONE, ZERO, Poly, Q, poch, qpoch, rational_sqrt
from .family import ParameterSet
from .multi import MultiIndexed, index_set
from .rconst import extract_row, xpoly
from .report import Report


@dataclass(frozen=True)
class AWParameters:
    """Wilson (``W``) or Askey-Wilson (``AW``) parameters.

    With ``squared`` set, ``a`` holds the squares a_i**2 and ``signs`` the
    signs of the original q-Racah entries; this is the form returned when the
    square root of d is not rational.
    """

    family: str
    a: tuple
    q: object = None
    M1: int = 0
    M2: int = 0
    squared: bool = False
    signs: tuple = (1, 1, 1, 1)

    @property
    def a1(self):
        return self.a[0]

    @property
    def a2(self):
        return self.a[1]

    @property
    def a3(self):
        return self.a[2]

    @property
    def a4(self):
        return self.a[3]

    @property
    def M(self):
        return self.M1 + self.M2

    def as_dict(self):
        from .exact import fmt
        out = {"family": self.family, "M1": self.M1, "M2": self.M2,
               ("a_squared" if self.squared else "a"): [fmt(v) for v in self.a]}
        if self.q is not None:
            out["q"] = fmt(self.q)
        return out


def map_params(lam, M=0, strict=True):
    """Shift every parameter by minus half the fourth one."""
    vals = lam.values()
    if not lam.is_q:
        half = lam.d / 2
        return AWParameters("W", tuple(v - half for v in vals), None, M)
    r = rational_sqrt(lam.d)
    if r is None:
        if strict:
            raise IrrationalShift(f"d = {lam.d} has no rational square root")
        signs = tuple(1 if v > 0 else -1 for v in vals)
        return AWParameters("AW", tuple(v * v / lam.d for v in vals), lam.q, M,
                            squared=True, signs=signs)
    return AWParameters("AW", tuple(v / r for v in vals), lam.q, M)


def unmap(aw, N=None):
    """Inverse of :func:`map_params`."""
    if aw.family == "W":
        a4 = aw.a4
        return ParameterSet.racah(*(v + a4 for v in aw.a), N=N)
    if aw.squared:
        vals = []
        for sq, sign in zip(aw.a, aw.signs):
            r = rational_sqrt(sq * aw.a4)
            if r is None:
                raise IrrationalShift("squared parameters do not determine a rational set")
            vals.append(sign * r)
        return ParameterSet.qracah(*vals, aw.q, N=N)
    a4 = aw.a4
    return ParameterSet.qracah(*(v * a4 for v in aw.a), aw.q, N=N)


def _scale(lam, M):
    """sqrt(d q^M) for qR; raises if it is irrational."""
    r = rational_sqrt(lam.d * lam.q ** M)
    if r is None:
        raise IrrationalShift(f"d q^{M} has no rational square root")
    return r


def coordinate_map(lam, M):
    """(A, B) with eta = A eta' + B, eta on the (q-)Racah side."""
    if lam.is_q:
        return 2 * _scale(lam, M), -1 - lam.d * lam.q ** M
    return Q(-1), -(lam.d + M) ** 2 / 4


def to_wilson_coordinate(eta_value, lam, M):
    A, B = coordinate_map(lam, M)
    return (eta_value - B) / A


def from_wilson_coordinate(eta_prime, lam, M):
    A, B = coordinate_map(lam, M)
    return A * eta_prime + B


def transport(p, lam, M):
    """A polynomial in eta rewritten in the Wilson-side coordinate eta'."""
    A, B = coordinate_map(lam, M)
    return p.compose(Poly([B, A]))


def eta0(aw):
    """The point where the transported polynomials take product values."""
    s = aw.M1 - aw.M2
    if aw.family == "W":
        return -(aw.a4 + Q(s) / 2) ** 2
    if aw.squared:
        raise IrrationalShift("eta0 needs the unsquared parameters")
    qh = rational_sqrt(aw.q ** abs(s))
    if qh is None:
        raise IrrationalShift("q^(M/2) is irrational")
    qh = qh if s >= 0 else 1 / qh
    return (aw.a4 * qh + 1 / (aw.a4 * qh)) / 2


class Transported:
    """Multi-indexed polynomials seen from the Wilson side.

    ``poly(n)`` is P_{D,n} in eta' divided by its leading coefficient, times
    ``lead(n)`` when a leading-coefficient function is supplied.
    """

    def __init__(self, fam, lead=None):
        self.source = fam
        self.D = fam.D
        self.M = fam.M
        self.ell = fam.ell
        self.lam = fam.lam
        self.aw = map_params(fam.lam, fam.M)
        self.lead = lead
        self._polys = {}
        self._kappa = {}

    def kappa(self, n):
        """Factor with P^{(q)R}_{D,n}(eta) = kappa_n * P'_{D,n}(eta')."""
        k = self._kappa.get(n)
        if k is None:
            t = transport(self.source.poly(n), self.lam, self.M)
            k = t.leading / (self.lead(n) if self.lead else ONE)
            self._kappa[n] = k
            self._polys[n] = t / k
        return k

    def poly(self, n):
        if n not in self._polys:
            self.kappa(n)
        return self._polys[n]

    def x(self, X):
        return transport(X, self.lam, self.M)


def to_aw(fam, nmax, lead=None):
    """Transported P'_{D,0..nmax}; see :class:`Transported`."""
    t = Transported(fam, lead)
    return {n: t.poly(n) for n in range(nmax + 1)}


def eta0_product(aw, D, n, cP=ONE):
    """Closed-form value of the Wilson-side P_{D,n} at :func:`eta0`.

    Only type-I index sets; ``cP`` is the Wilson-side leading coefficient.
    """
    D = index_set(D)
    a1, a2, a3, a4 = aw.a
    M = len(D)
    ell = sum(D) - M * (M - 1) // 2
    out = Q(cP)
    if aw.family == "W":
        out *= (-1) ** (ell + n)
        for j, dj in enumerate(D, start=1):
            out *= poch(a4 - a1 + 1, dj) * poch(a4 - a2 + 1, dj) * poch(a3 + a4, dj)
            out /= poch(a3 + a4 - a1 - a2 + dj + 1, dj)
            out /= poch(a4 - a1 + 1, j - 1) * poch(a4 - a2 + 1, j - 1) * poch(a3 + a4, j - 1)
            for dk in D[j:]:
                out *= a3 + a4 - a1 - a2 + dj + dk + 1
            out *= (a3 + a4 + dj + n) / (a3 + a4 + j - 1)
        out *= poch(a1 + a4, n) * poch(a2 + a4, n) * poch(a3 + a4, n)
        out /= poch(a1 + a2 + a3 + a4 + n - 1, n)
        return out
    q = aw.q
    qh = rational_sqrt(q ** M)
    if qh is None or aw.squared:
        raise IrrationalShift("the product needs a4 q^(M/2) rational")
    out *= (2 * a4 * qh) ** -(ell + n)
    u, v, w = a4 * q / a1, a4 * q / a2, a3 * a4
    t = a3 * a4 / (a1 * a2)
    for j, dj in enumerate(D, start=1):
        out *= qpoch(u, q, dj) * qpoch(v, q, dj) * qpoch(w, q, dj)
        out /= qpoch(t * q ** (dj + 1), q, dj)
        out /= qpoch(u, q, j - 1) * qpoch(v, q, j - 1) * qpoch(w, q, j - 1)
        for dk in D[j:]:
            out *= 1 - t * q ** (dj + dk + 1)
        out *= (1 - w * q ** (dj + n)) / (1 - w * q ** (j - 1))
    out *= qpoch(a1 * a4, q, n) * qpoch(a2 * a4, q, n) * qpoch(a3 * a4, q, n)
    out /= qpoch(a1 * a2 * a3 * a4 * q ** (n - 1), q, n)
    return out


def eta0_spot_check(D, n, lam, fam=None, tr=None):
    """Transported P'_{D,n} at eta0 against the product formula (monic normalisation)."""
    if isinstance(lam, AWParameters):
        lam = unmap(lam)
    D = index_set(D)
    tr = tr or Transported(fam or MultiIndexed(D, lam))
    aw = tr.aw
    e0 = eta0(aw)
    rep = Report("eta0 product value", D=list(D), n=n, **aw.as_dict())
    rep.check(f"eta0 is the image of eta = 0 (n={n})", from_wilson_coordinate(e0, lam, len(D)) == 0)
    got = tr.poly(n)(e0)
    want = eta0_product(aw, D, n)
    rep.check(f"product formula n={n}", got == want, value=got, formula=want)
    return rep


def rn0_identity_check(D, X, lam, rows, fam=None, tr=None):
    """Spot identity for r_{n,0} at eta0 on the transported family.

    The transported table is re-extracted from the transported polynomials
    and compared with the (q-)Racah table rescaled by kappa_{n+k} / kappa_n;
    the (q-)Racah row must also satisfy the sum rule.
    """
    if isinstance(lam, AWParameters):
        lam = unmap(lam)
    D = index_set(D)
    fam = fam or MultiIndexed(D, lam)
    tr = tr or Transported(fam)
    if X is None:
        X, L = xpoly(D, 1, lam, fam)
    else:
        L = fam.ell + X.degree - fam.ell  # band half-width of a supplied X
        L = X.degree
    Xp = tr.x(X)
    e0 = eta0(tr.aw)
    rep = Report("r_(n,0) spot identity", D=list(D), L=L, **tr.aw.as_dict())
    for n in rows:
        row = extract_row(fam, X, L, n)
        rep.check(f"sum rule n={n}", row[0] == -sum((v for k, v in row.items() if k), ZERO))
        row_t = extract_row(tr, Xp, L, n)
        kn = tr.kappa(n)
        rep.check(f"transported table n={n}",
                  all(row_t[k] == row[k] * tr.kappa(n + k) / kn for k in row))
        pn = tr.poly(n)(e0)
        rhs = Xp(e0) - sum((tr.poly(n + k)(e0) / pn * v for k, v in row_t.items() if k), ZERO)
        rep.check(f"spot identity n={n}", row_t[0] == rhs, r=row_t[0], spot=rhs)
    return rep


def verify_bridge(lam, index_sets=((), (1,), (1, 2)), nmax=4):
    rep = Report("bridge", **lam.as_dict())
    aw = map_params(lam)
    back = unmap(aw, lam.N)
    rep.check("parameter round trip", back == lam)
    for D in index_sets:
        fam = MultiIndexed(D, lam)
        tr = Transported(fam)
        for n in range(nmax + 1):
            rep.extend(eta0_spot_check(D, n, lam, fam, tr), prefix=f"D={list(D)} ")
        rep.extend(rn0_identity_check(D, None, lam, range(nmax + 1), fam, tr),
                   prefix=f"D={list(D)} ")
    return rep
