"""The compiled and pure-Python kernels must agree."""

import math

import numpy as np
import pytest

from ostrowski import _backend, _pykernels
from ostrowski.funcmodel import FunctionSpec

try:
    from ostrowski import _ckernels
except ImportError:  # pragma: no cover - fallback-only installs
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

CASES = [
    ("poly:0,0,0,1", 0.0, 1.0),
    ("exp", 0.0, 1.0),
    ("ln", 1.0, 2.0),
    ("pow_s:0.5", 0.0, 1.0),
    ("breckner:0,1,0,0.5", 0.25, 1.0),
    ("cpow:1,0.25", 0.0, 1.0),
]


def test_backend_selection_is_reported():
    assert _backend.BACKEND in ("cython", "python")


@needs_ext
@pytest.mark.parametrize("fid, a, b", CASES)
@pytest.mark.parametrize("k", [0, 1, 2])
def test_family_values_agree(fid, a, b, k):
    f = FunctionSpec.parse(fid)
    for t in np.linspace(a + 1e-3, b, 17):
        u = _pykernels.family_value(f.code, f.params, k, float(t))
        v = _ckernels.family_value(f.code, f.params, k, float(t))
        assert u == pytest.approx(v, rel=1e-14, abs=1e-300)


@needs_ext
@pytest.mark.parametrize("fid, a, b", CASES)
def test_quadrature_agrees(fid, a, b):
    f = FunctionSpec.parse(fid)
    for k in (0, 2):
        args = (f.code, f.params, k, True, 1.0, 2.0, 0.0, 1.0, 0.0, a, b, 1e-10, 50)
        pv, pe, pf, pn = _pykernels.simpson_family(*args)
        cv, ce, cf, cn = _ckernels.simpson_family(*args)
        assert pf == cf and pn == cn
        assert pv == pytest.approx(cv, rel=1e-13)


@needs_ext
@pytest.mark.parametrize("fid, a, b, q, s", [("exp", 0.0, 1.0, 2.0, 0.5), ("poly:0,0,0,2,-1", 0.0, 1.0, 1.0, 1.0),
                                              ("ln", 1.0, 2.0, 2.0, 1.0)])
def test_lattice_agrees(fid, a, b, q, s):
    f = FunctionSpec.parse(fid)
    xs = np.linspace(a, b, 11)
    ts = np.linspace(0.0, 1.0, 11)
    p = _pykernels.lattice_extrema(f.code, f.params, 2, True, q, s, xs, ts)
    c = _ckernels.lattice_extrema(f.code, f.params, 2, True, q, s, xs, ts)
    assert p[1:4] == c[1:4] and p[5:8] == c[5:8] and p[9] == c[9]
    for i in (0, 4, 8):
        assert math.isclose(p[i], c[i], rel_tol=1e-12, abs_tol=1e-15)


@needs_ext
def test_scan_agrees():
    f = FunctionSpec.parse("poly:0,0,0,2,-1")
    assert _pykernels.scan_abs(f.code, f.params, 2, 0.0, 1.0, 101) == _ckernels.scan_abs(f.code, f.params, 2, 0.0, 1.0, 101)
