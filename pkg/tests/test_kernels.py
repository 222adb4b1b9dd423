import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostrowski import DomainError, FunctionSpec, Interval, identity_residual, lemma1_rhs, ostrowski_functional
from ostrowski.kernels import classic_lhs, perturbed_trapezoid_lhs

from conftest import MP_FUNCS, mp_mean

T3 = FunctionSpec.parse("poly:0,0,0,1")


def test_cubic_values():
    iv = Interval(0, 1)
    assert ostrowski_functional(T3, 0.5, iv) == pytest.approx(0.125, abs=1e-12)
    assert lemma1_rhs(T3, 0.5, iv) == pytest.approx(3 / 64 + 5 / 64, abs=1e-12)


def test_identity_on_eleven_points(regular):
    _, f, iv = regular
    for x in iv.grid(11):
        assert identity_residual(f, x, iv).residual < 1e-9


def test_functional_against_mpmath(regular):
    fid, f, iv = regular
    x = iv.a + 0.3 * iv.width
    expected = mp_mean(fid, iv.a, iv.b) - float(MP_FUNCS[fid](x)) + (x - iv.midpoint) * f.eval_d1(x)
    assert ostrowski_functional(f, x, iv) == pytest.approx(expected, abs=1e-10)


def test_ln_identity():
    assert identity_residual(FunctionSpec.parse("ln"), 1.5, Interval(1, 2)).residual < 1e-9


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-2, 2), st.floats(0.1, 3), st.floats(0, 1))
def test_affine_functional_vanishes(c0, c1, a, w, u):
    f = FunctionSpec("poly", (c0, c1))
    iv = Interval(a, a + w)
    x = min(iv.a + u * w, iv.b)
    ev = identity_residual(f, x, iv)
    assert abs(ev.lhs_signed) < 1e-12 and ev.rhs_identity == 0.0


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1))
def test_symmetric_function_gives_symmetric_values(u):
    # t^2 (1-t)^2 is even about 1/2
    f = FunctionSpec("poly", (0, 0, 1, -2, 1))
    iv = Interval(0, 1)
    assert abs(ostrowski_functional(f, u, iv)) == pytest.approx(abs(ostrowski_functional(f, 1 - u, iv)), abs=1e-12)


def test_endpoints_skip_singular_terms():
    # f'' of t^2.25 is fine, but f'' of sqrt blows up at 0; x = b drops the b-term
    f = FunctionSpec.parse("pow_s:0.5")
    iv = Interval(0.25, 1)
    assert identity_residual(f, 1.0, iv).residual < 1e-9
    assert identity_residual(f, 0.25, iv).residual < 1e-9


def test_x_outside_interval():
    with pytest.raises(DomainError):
        ostrowski_functional(T3, 1.5, Interval(0, 1))


def test_classic_lhs():
    iv = Interval(0, 1)
    assert classic_lhs(FunctionSpec.parse("poly:0,1"), 0.0, iv) == pytest.approx(0.5)
    assert classic_lhs(FunctionSpec.parse("poly:0,0,1"), 1 / math.sqrt(3), iv) == pytest.approx(0.0, abs=1e-12)
    assert classic_lhs(FunctionSpec.parse("poly:7"), 0.3, iv) == pytest.approx(0.0, abs=1e-14)


def test_perturbed_trapezoid():
    iv = Interval(0, 1)
    assert perturbed_trapezoid_lhs(T3, iv) == pytest.approx(0.5, abs=1e-12)
    assert perturbed_trapezoid_lhs(FunctionSpec.parse("poly:0,0,1"), iv) == pytest.approx(1 / 3, abs=1e-12)
    assert perturbed_trapezoid_lhs(FunctionSpec.parse("poly:2,-3"), iv) == pytest.approx(0.0, abs=1e-14)
