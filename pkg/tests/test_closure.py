import pytest

from mirec.closure import Closure, alpha_order, closure_coeffs, minimal_x, verify_closure
from mirec.exact import Poly
from mirec.family import energy

ETA = Poly([0, 1])


def test_closure_coeffs_annihilate_alphas(finite_lam):
    from mirec.rconst import alpha_values
    L = 2
    R = closure_coeffs(L, finite_lam)
    for n in range(4):
        z = energy(n, finite_lam)
        for a in alpha_values(L, n, finite_lam):
            assert a ** 4 - sum(R[i](z) * a ** i for i in range(4)) == 0


def test_alpha_ordering(finite_lam):
    for n in range(finite_lam.N + 1):
        assert alpha_order(2, finite_lam, n)


def test_three_term_closure(finite_lam):
    rep = verify_closure((), ETA, 1, finite_lam)
    assert rep.ok, rep.failures()


def test_minimal_x_closure(finite_lam):
    X, L = minimal_x((1,), finite_lam)
    rep = verify_closure((1,), X, L, finite_lam)
    assert rep.ok, rep.failures()


def test_ladder_factors_match_table(finite_lam):
    X, L = minimal_x((1,), finite_lam)
    cl = Closure((1,), X, L, finite_lam)
    a = cl.ladder(1)
    img = a @ cl.V
    n = 2
    want = [cl.table.r(n, 2) * cl.V[x, n + 2] for x in range(finite_lam.N + 1)]
    assert img.column(n) == want


def test_wrong_x_breaks_closure(finite_lam):
    X, L = minimal_x((1,), finite_lam)
    cl = Closure((1,), X, L, finite_lam)
    ads = cl.ad_powers(cl.K)
    rhs = cl.of_H(cl.R_minus1)
    for i in range(cl.K):
        rhs = rhs + ads[i] @ cl.of_H(cl.R[i] * 2)
    assert ads[cl.K] != rhs


def test_closure_needs_finite_mode(generic_lam):
    from mirec.errors import AssumptionViolated
    with pytest.raises(AssumptionViolated):
        verify_closure((), ETA, 1, generic_lam)
