from fractions import Fraction as F

import pytest

from mirec.bridge import (AWParameters, Transported, coordinate_map, eta0, eta0_product,
                          eta0_spot_check, map_params, rn0_identity_check, to_aw, transport,
                          unmap, verify_bridge)
from mirec.errors import IrrationalShift
from mirec.exact import Poly, poch, qpoch
from mirec.family import ParameterSet, racah_poly
from mirec.multi import MultiIndexed

from conftest import QR_BRIDGE, QR_GENERIC, R_GENERIC


def test_racah_shift_by_half_d():
    lam = ParameterSet.racah(5, 7, 3, 2)
    aw = map_params(lam)
    assert aw.family == "W" and aw.a == (4, 6, 2, 1)


def test_qracah_divides_by_q_when_d_is_q_squared():
    q = F(1, 4)
    lam = ParameterSet.qracah(F(1, 3), F(1, 5), F(1, 2), q * q, q)
    aw = map_params(lam)
    assert aw.a == tuple(v / q for v in lam.values())


@pytest.mark.parametrize("lam", [R_GENERIC[0], QR_BRIDGE])
def test_round_trip(lam):
    assert unmap(map_params(lam)) == lam


def test_irrational_root():
    lam = QR_GENERIC[0]           # d = 1/3
    with pytest.raises(IrrationalShift):
        map_params(lam)
    sq = map_params(lam, strict=False)
    assert sq.squared and sq.a[3] == lam.d
    assert unmap(sq) == lam
    with pytest.raises(IrrationalShift):
        eta0(sq)


def test_wilson_map_sends_zero_to_eta0():
    lam = R_GENERIC[0]
    for M in range(3):
        A, B = coordinate_map(lam, M)
        assert A == -1 and B == -(lam.d + M) ** 2 / 4
        assert eta0(map_params(lam, M)) == B


def test_empty_set_is_classical_ratio():
    lam = QR_BRIDGE
    aw = map_params(lam)
    a1, a2, a3, a4 = aw.a
    q = aw.q
    for n in range(4):
        want = ((2 * a4) ** -n * qpoch(a1 * a4, q, n) * qpoch(a2 * a4, q, n) * qpoch(a3 * a4, q, n)
                / qpoch(a1 * a2 * a3 * a4 * q ** (n - 1), q, n))
        assert eta0_product(aw, (), n) == want


def test_wilson_empty_set():
    lam = R_GENERIC[1]
    aw = map_params(lam)
    a1, a2, a3, a4 = aw.a
    for n in range(4):
        p = to_aw(MultiIndexed((), lam), n)[n]
        want = ((-1) ** n * poch(a1 + a4, n) * poch(a2 + a4, n) * poch(a3 + a4, n)
                / poch(a1 + a2 + a3 + a4 + n - 1, n))
        assert p(eta0(aw)) == want


def test_transport_is_monic_and_consistent():
    fam = MultiIndexed((1,), QR_BRIDGE)
    tr = Transported(fam)
    for n in range(3):
        p = tr.poly(n)
        assert p.leading == 1
        assert p * tr.kappa(n) == transport(fam.poly(n), QR_BRIDGE, 1)


def test_declared_leading_coefficient():
    fam = MultiIndexed((), R_GENERIC[0])
    tr = Transported(fam, lead=lambda n: F(n + 2))
    assert tr.poly(3).leading == 5
    assert transport(racah_poly(3, R_GENERIC[0]), R_GENERIC[0], 0) == tr.poly(3) * tr.kappa(3)


@pytest.mark.parametrize("D", [(), (1,), (1, 2)])
def test_eta0_product(D):
    fam = MultiIndexed(D, QR_BRIDGE)
    tr = Transported(fam)
    for n in range(5):
        assert eta0_spot_check(D, n, QR_BRIDGE, fam, tr).ok


def test_eta0_product_rejects_wrong_value():
    aw = map_params(QR_BRIDGE, 1)
    got = Transported(MultiIndexed((1,), QR_BRIDGE)).poly(2)(eta0(aw))
    assert got == eta0_product(aw, (1,), 2)
    assert got != eta0_product(aw, (2,), 2)


def test_eta0_spot_check_accepts_aw_parameters():
    aw = map_params(QR_BRIDGE, 1)
    assert eta0_spot_check((1,), 1, AWParameters("AW", aw.a, aw.q, 1)).ok


@pytest.mark.parametrize("D", [(), (1,), (1, 2)])
def test_rn0_identity(D):
    rep = rn0_identity_check(D, None, QR_BRIDGE, range(5))
    assert rep.ok, rep.failures()


def test_rn0_identity_three_term():
    rep = rn0_identity_check((), Poly([0, 1]), R_GENERIC[0], range(4))
    assert rep.ok


def test_verify_bridge_wilson():
    assert verify_bridge(R_GENERIC[2]).ok
