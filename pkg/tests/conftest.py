from fractions import Fraction as F

import pytest

from mirec.family import ParameterSet

# in-range finite-mode points (N = 8)
R_FINITE = ParameterSet.finite("R", F(27, 2), F(2, 5), F(1, 3), 8)
QR_FINITE = ParameterSet.finite("qR", F(1, 16384), F(1, 2), F(1, 3), 8, q=F(1, 2))

# generic points with a free
R_GENERIC = [
    ParameterSet.racah(F(37, 3), F(27, 2), F(2, 5), F(1, 3)),
    ParameterSet.racah(F(-31, 4), F(19, 2), F(3, 5), F(5, 7)),
    ParameterSet.racah(F(5, 2), F(17, 3), F(3, 4), F(2, 7)),
]
QR_GENERIC = [
    ParameterSet.qracah(F(3, 7), F(1, 5), F(1, 2), F(1, 3), F(1, 2)),
    ParameterSet.qracah(F(5, 3), F(1, 9), F(2, 3), F(1, 4), F(1, 3)),
    ParameterSet.qracah(F(2, 7), F(3, 5), F(1, 7), F(1, 5), F(2, 3)),
]

# square-root free point for the bridge: q = 1/4, d = q^2
QR_BRIDGE = ParameterSet.qracah(F(3, 7), F(1, 5), F(1, 2), F(1, 16), F(1, 4))


@pytest.fixture(params=["R", "qR"])
def finite_lam(request):
    return R_FINITE if request.param == "R" else QR_FINITE


@pytest.fixture(params=["R", "qR"])
def generic_lam(request):
    return R_GENERIC[0] if request.param == "R" else QR_GENERIC[0]


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
