from fractions import Fraction as F

import pytest

from mirec.errors import AssumptionViolated, UnsupportedPoint
from mirec.exact import Poly
from mirec.family import (ParameterSet, energy, eta, eta_xfunc, hypergeometric_value,
                          lead_coeff, racah_poly, racah_values, shift_xfunc, ttrc,
                          verify_base)

from conftest import QR_GENERIC, R_GENERIC


def test_finite_mode_pins_a():
    with pytest.raises(ValueError):
        ParameterSet.racah(-7, 1, 1, 1, N=8)
    lam = ParameterSet.finite("qR", F(1, 3), F(1, 2), F(1, 5), 3, q=F(1, 2))
    assert lam.a == 8


def test_q_validation():
    with pytest.raises(ValueError):
        ParameterSet.qracah(1, 2, 3, 4, F(3, 2))
    with pytest.raises(ValueError):
        ParameterSet("R", 1, 2, 3, 4, q=F(1, 2))


def test_shift_and_twist():
    lam = R_GENERIC[0]
    s = lam.shift(2)
    assert s.values() == tuple(v + 2 for v in lam.values())
    t = lam.twist()
    assert (t.a, t.b, t.c, t.d) == (lam.d - lam.a + 1, lam.d - lam.b + 1, lam.c, lam.d)
    qt = QR_GENERIC[0].twist()
    q = QR_GENERIC[0]
    assert qt.a == q.d * q.q / q.a


def test_eta_xfunc_matches_eta(generic_lam):
    for s in range(3):
        f = eta_xfunc(generic_lam, s)
        for x in range(5):
            z = generic_lam.q ** x if generic_lam.is_q else x
            assert f(z) == eta(x, generic_lam, s)
            assert shift_xfunc(f, generic_lam, 1)(z) == eta(x + 1, generic_lam, s)


def test_qracah_needs_integer_x():
    with pytest.raises(UnsupportedPoint):
        eta(F(1, 2), QR_GENERIC[0])


def test_three_term_recurrence_on_polynomials(generic_lam):
    var = Poly([0, 1])
    for n in range(1, 5):
        A, B, C = ttrc(n, generic_lam)
        lhs = var * racah_poly(n, generic_lam)
        rhs = (racah_poly(n + 1, generic_lam) * A + racah_poly(n, generic_lam) * B
               + racah_poly(n - 1, generic_lam) * C)
        assert lhs == rhs


def test_normalisation_and_leading(generic_lam):
    for n in range(6):
        p = racah_poly(n, generic_lam)
        assert p(0) == 1
        assert p.degree == n
        assert p.leading == lead_coeff(n, generic_lam)


@pytest.mark.parametrize("lam", R_GENERIC + QR_GENERIC)
def test_hypergeometric_oracle_generic(lam):
    for x in range(4):
        vals = racah_values(5, x, lam)
        assert [hypergeometric_value(n, x, lam) for n in range(6)] == vals


def test_energy_zero_at_ground(generic_lam):
    assert energy(0, generic_lam) == 0


def test_base_family(finite_lam):
    rep = verify_base(finite_lam)
    assert rep.ok, rep.failures()


def test_base_needs_finite_mode():
    with pytest.raises(AssumptionViolated):
        verify_base(R_GENERIC[0])


def test_out_of_range_is_advisory():
    lam = ParameterSet.finite("R", F(27, 2), F(2, 5), F(20), 6)
    rep = verify_base(lam)
    assert rep.ok
    assert any(c.status == "range-advisory" for c in rep.checks)
