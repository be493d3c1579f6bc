"""Backend selection and multiplication accounting for the exact kernels.

The compiled extension is used when it imports; setting ``MIREC_PURE_PYTHON=1``
forces the reference implementation. Both backends return identical values.
"""

import os
from contextlib import contextmanager
from fractions import Fraction

from . import _kernels_py

try:
    if os.environ.get("MIREC_PURE_PYTHON") == "1":
        raise ImportError
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

backend = _compiled if _compiled is not None else _kernels_py
BACKEND_NAME = "compiled" if _compiled is not None else "python"


class MultCounter:
    """Running total of exact rational multiplications, divisions and powers."""

    def __init__(self):
        self.count = 0


_OPS = ("__mul__", "__rmul__", "__truediv__", "__rtruediv__", "__pow__", "__rpow__")
_active = []


def _instrument(name, original):
    def wrapped(self, other):
        for c in _active:
            c.count += 1
        return original(self, other)
    wrapped.__name__ = name
    return wrapped


@contextmanager
def counting():
    """Count every Fraction multiplication, division and power in the block.

    The block runs on the reference backend so that work done inside the
    kernels is counted too; the compiled backend performs the same sequence
    of operations on integer numerators, which is not observable this way.
    Not thread-safe: it patches ``Fraction`` for the duration.
    """
    global backend
    c = MultCounter()
    saved_backend = backend
    backend = _kernels_py
    patched = not _active
    if patched:
        originals = {name: getattr(Fraction, name) for name in _OPS}
        for name, fn in originals.items():
            setattr(Fraction, name, _instrument(name, fn))
    _active.append(c)
    try:
        yield c
    finally:
        _active.remove(c)
        if patched:
            for name, fn in originals.items():
                setattr(Fraction, name, fn)
        backend = saved_backend


def use_backend(name):
    """Switch backend globally ("compiled" or "python"); returns the old name."""
    global backend, BACKEND_NAME
    old = BACKEND_NAME
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        backend, BACKEND_NAME = _compiled, "compiled"
    elif name == "python":
        backend, BACKEND_NAME = _kernels_py, "python"
    else:
        raise ValueError(name)
    return old


def compiled_available():
    return _compiled is not None


def poly_mul(a, b):
    return backend.poly_mul(a, b)


def poly_eval(coeffs, x):
    return backend.poly_eval(coeffs, x)


def interpolate_coeffs(xs, ys):
    dd = backend.divided_differences(xs, ys)
    return backend.newton_to_monomial(xs, dd)


def divided_differences(xs, ys):
    return backend.divided_differences(xs, ys)


def newton_to_monomial(xs, dd):
    return backend.newton_to_monomial(xs, dd)


def det(rows):
    return backend.det(rows)


def solve(rows, rhs):
    return backend.solve(rows, rhs)


def matmul(a, b):
    return backend.matmul(a, b)
