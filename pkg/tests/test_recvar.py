import pytest

from mirec.errors import VerificationFailure
from mirec.exact import Poly
from mirec.family import eta_xfunc
from mirec.multi import MultiIndexed
from mirec.recvar import (VarRecurrence, compare_paths, generate, involution, rtable_eta,
                          verify_shift_identity, verify_variable_recurrence)

from conftest import QR_GENERIC, R_GENERIC


def test_s_minus_one_is_unit(generic_lam):
    rec = VarRecurrence(generic_lam)
    assert rec.entry(-1, 3, 0) == Poly.const(1)
    assert rec.entry(-1, 3, 1).is_zero()


def test_s_zero_is_three_term(generic_lam):
    from mirec.family import ttrc
    rec = VarRecurrence(generic_lam)
    A, B, C = ttrc(2, generic_lam)
    assert rec.entry(0, 2, 1) == Poly.const(A)
    assert rec.entry(0, 2, -1) == Poly.const(C)
    assert rec.entry(0, 2, 0) == Poly.const(B) - eta_xfunc(generic_lam, 0)


def test_eta_degrees(generic_lam):
    table = rtable_eta(2, 3, generic_lam)
    for k, p in table.items():
        assert p.degree == 3 - abs(k)


def test_involution_is_an_involution(generic_lam):
    f = eta_xfunc(generic_lam, 0) * eta_xfunc(generic_lam, 2) + Poly([1, 2])
    assert involution(involution(f, generic_lam, 1), generic_lam, 1) == f


@pytest.mark.parametrize("lam", [R_GENERIC[0], QR_GENERIC[0]])
@pytest.mark.parametrize("D", [(1,), (2,), (1, 2), (2, 3)])
def test_variable_recurrence_identity(lam, D):
    fam = MultiIndexed(D, lam)
    rec = VarRecurrence(lam)
    for n in range(5):
        assert verify_variable_recurrence(D, n, lam, fam, rec).ok


@pytest.mark.parametrize("lam", [R_GENERIC[1], QR_GENERIC[1]])
def test_shift_identity(lam):
    rep = verify_shift_identity(lam, 3, 3)
    assert rep.ok, rep.failures()


def test_generate_matches_determinants(generic_lam):
    D = (1, 2)
    fam = MultiIndexed(D, generic_lam)
    assert generate(D, generic_lam, 7) == fam.polys(7)


def test_compare_paths_shape(generic_lam):
    rows = compare_paths((1,), generic_lam, 4)
    assert [r[0] for r in rows].count("determinant") == 5
    assert all(isinstance(r[2], int) for r in rows)


def test_compare_paths_detects_mismatch(monkeypatch):
    import mirec.recvar as rv
    original = rv._recurrence_run

    def broken(D, lam, nmax, on_step):
        out = original(D, lam, nmax, on_step)
        out[-1] = out[-1] * 2
        return out
    monkeypatch.setattr(rv, "_recurrence_run", broken)
    with pytest.raises(VerificationFailure):
        compare_paths((1,), R_GENERIC[0], 3)
