from fractions import Fraction as F

import pytest

from mirec.errors import InsufficientBasis, IrrationalShift, TheoremViolation
from mirec.exact import Poly, interpolate
from mirec.family import energy, eta
from mirec.multi import MultiIndexed
from mirec.rconst import (RTable, alpha_values, conjecture_poly, extract_row, extract_table,
                          gprime, gprime_AW, grid_table, imap, limit_rows,
                          pochhammer_factor_check, verify_relations, xpoly)

from conftest import QR_FINITE, QR_GENERIC, R_FINITE, R_GENERIC
from oracles import example_row, example_x

ETA = Poly([0, 1])


def _gprime_oracle(n, lam):
    """Divided difference of eta^(n+1) re-expanded in eta(x; lam - delta) by interpolation."""
    low = lam.shift(-1)
    xs = [eta(x, low) for x in range(1, n + 2)]
    ys = [(eta(x, lam) ** (n + 1) - eta(x - 1, lam) ** (n + 1)) / (eta(x, lam) - eta(x - 1, lam))
          for x in range(1, n + 2)]
    return interpolate(xs, ys)


@pytest.mark.parametrize("lam", R_GENERIC[:2] + QR_GENERIC[:2])
def test_gprime_matches_interpolation(lam):
    for n in range(6):
        p = _gprime_oracle(n, lam)
        for k in range(n + 1):
            assert gprime(n, k, lam) == p.coeff(n - k)


def test_gprime_aw_needs_rational_root():
    assert gprime_AW(3, 1, F(1, 4)) == 0
    with pytest.raises(IrrationalShift):
        gprime_AW(3, 2, F(1, 2))
    assert gprime_AW(4, 2, F(1, 4)) is not None


@pytest.mark.parametrize("lam", R_GENERIC + QR_GENERIC)
def test_imap_telescopes(lam):
    p = Poly([F(1, 2), -3, F(2, 7), 1])
    P = imap(p, lam)
    assert P(0) == 0
    for x in range(1, 6):
        e1, e0 = eta(x, lam), eta(x - 1, lam)
        assert (P(e1) - P(e0)) / (e1 - e0) == p(eta(x, lam.shift(-1)))


@pytest.mark.parametrize("lam", R_GENERIC + QR_GENERIC)
def test_example_closed_forms(lam):
    fam = MultiIndexed((1,), lam)
    X, L = xpoly((1,), 1, lam, fam)
    assert L == 2
    scale, Xc = example_x(lam)
    assert X * scale == Xc
    for n in range(6):
        row = extract_row(fam, X, L, n)
        want = example_row(n, lam)
        for k in range(-2, 3):
            if n + k >= 0:
                assert row[k] * scale == want[k], (n, k)
        # ratio form, independent of the overall scale of X
        assert {k: row[k] / row[L] for k in row} == {k: want[k] / want[L] for k in row}


@pytest.mark.parametrize("D,Y", [((1,), 1), ((2,), 1), ((1,), ETA), ((2,), ETA), ((1, 2), 1)])
def test_relations_generic(generic_lam, D, Y):
    fam = MultiIndexed(D, generic_lam)
    X, L = xpoly(D, Y, generic_lam, fam)
    table = extract_table(fam, X, L, 5)
    rep = verify_relations(fam, X, L, table, finite=False)
    assert rep.ok, rep.failures()


def test_negative_control(generic_lam):
    fam = MultiIndexed((1,), generic_lam)
    with pytest.raises(TheoremViolation):
        extract_row(fam, ETA, 1, 0)


@pytest.mark.parametrize("D,Y", [((1,), 1), ((2,), ETA)])
def test_grid_table_and_norm_relation(finite_lam, D, Y):
    fam = MultiIndexed(D, finite_lam)
    X, L = xpoly(D, Y, finite_lam, fam)
    grid = grid_table(fam, X, L)
    poly_rows = extract_table(fam, X, L, finite_lam.N - L)
    for n, row in poly_rows.rows.items():
        assert grid.rows[n] == row
    rep = verify_relations(fam, X, L, grid)
    assert rep.ok, rep.failures()


def test_finite_mode_stops_at_N():
    fam = MultiIndexed((1,), R_FINITE)
    X, L = xpoly((1,), 1, R_FINITE, fam)
    with pytest.raises(InsufficientBasis):
        extract_row(fam, X, L, R_FINITE.N - 1)


@pytest.mark.parametrize("lam", [R_FINITE, QR_FINITE])
def test_vanishing_tail_in_the_limit(lam):
    N = lam.N
    D = (1,)
    L = 2
    rows = [N - 1, N]
    limits, _ = limit_rows(D, lambda f: xpoly(D, 1, f.lam, f), lam, rows, range(1, L + 1))
    for n in rows:
        for k in range(N - n + 1, L + 1):
            assert limits[(n, k)] == 0
    grid = grid_table(MultiIndexed(D, lam), *xpoly(D, 1, lam))
    assert limits[(N - 1, 1)] == grid.r(N - 1, 1)


def test_pochhammer_factors(generic_lam):
    rep = pochhammer_factor_check((1,), 1, generic_lam, range(3))
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("lam", [R_GENERIC[0], QR_GENERIC[0]])
def test_conjectured_polynomial_degree(lam):
    fam = MultiIndexed((1,), lam)
    X, L = xpoly((1,), 1, lam, fam)
    table = extract_table(fam, X, L, 2 * L + 3)
    I, rep = conjecture_poly(L, lam, table, range(2 * L + 1), range(2 * L + 1, 2 * L + 4))
    assert I.degree == 4
    assert rep.ok


def test_alpha_values_are_energy_gaps(generic_lam):
    al = alpha_values(2, 3, generic_lam)
    E = [energy(n, generic_lam) for n in range(6)]
    assert al == [E[5] - E[3], E[4] - E[3], E[2] - E[3], E[1] - E[3]]


def test_rtable_lists():
    t = RTable(1, {0: {0: F(1, 2), 1: F(3)}})
    assert t.as_lists() == {0: {0: "1/2", 1: "3"}}
    assert t.r(5, 0) == 0
