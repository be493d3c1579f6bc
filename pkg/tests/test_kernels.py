import random
from fractions import Fraction as F

import pytest

from mirec import _kernels_py, kernels
from mirec.errors import SingularSystem
from mirec.exact import Poly
from mirec.multi import MultiIndexed

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(),
                                    reason="compiled kernels not built")


def _rat(rng):
    return F(rng.randint(-30, 30), rng.randint(1, 12))


@needs_compiled
def test_backends_agree():
    from mirec import _kernels as fast
    rng = random.Random(11)
    for size in range(1, 7):
        for _ in range(10):
            A = [[_rat(rng) for _ in range(size)] for _ in range(size)]
            b = [_rat(rng) for _ in range(size)]
            xs = [F(i, 2) + _rat(rng) / 1000 for i in range(size)]
            assert fast.det(A) == _kernels_py.det(A)
            assert fast.matmul(A, A) == _kernels_py.matmul(A, A)
            assert fast.poly_mul(b, b[::-1]) == _kernels_py.poly_mul(b, b[::-1])
            assert fast.poly_eval(b, xs[0]) == _kernels_py.poly_eval(b, xs[0])
            assert fast.divided_differences(xs, b) == _kernels_py.divided_differences(xs, b)
            try:
                want = _kernels_py.solve(A, b)
            except SingularSystem:
                with pytest.raises(SingularSystem):
                    fast.solve(A, b)
            else:
                assert fast.solve(A, b) == want


@needs_compiled
def test_singular_rank_matches_reference():
    from mirec import _kernels as fast
    A = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1), F(0), F(1)]]
    with pytest.raises(SingularSystem) as ref:
        _kernels_py.solve(A, [F(1)] * 3)
    with pytest.raises(SingularSystem) as got:
        fast.solve(A, [F(1)] * 3)
    assert got.value.rank == ref.value.rank == 2


def test_use_backend_round_trip():
    old = kernels.use_backend("python")
    try:
        assert kernels.BACKEND_NAME == "python"
        assert (Poly([1, 2]) * Poly([3, 4])) == Poly([3, 10, 8])
    finally:
        kernels.use_backend(old)


def test_counting_is_deterministic(generic_lam):
    counts = []
    for _ in range(2):
        with kernels.counting() as c:
            MultiIndexed((1,), generic_lam, extra=0).poly(2)
        counts.append(c.count)
    assert counts[0] == counts[1] > 0


def test_counting_restores_fraction():
    mul = F.__mul__
    with kernels.counting():
        F(1, 2) * F(1, 3)
    assert F.__mul__ is mul


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys
    code = ("import mirec; from mirec.multi import MultiIndexed; from mirec.family import ParameterSet;"
            "lam = ParameterSet.racah('37/3', '27/2', '2/5', '1/3');"
            "print(mirec.BACKEND_NAME, MultiIndexed((1, 2), lam).poly(2))")
    env = dict(os.environ, MIREC_PURE_PYTHON="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    env.pop("MIREC_PURE_PYTHON")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert slow.stdout.split()[0] == "python"
    assert slow.stdout.split(" ", 1)[1] == fast.stdout.split(" ", 1)[1]
