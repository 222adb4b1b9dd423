import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostrowski import FunctionSpec, Interval, ParamError, SParams, Verdict, check_s_concave, check_s_convex, hadamard_check
from ostrowski.funcmodel import Derived


def d2(fid, power=1.0):
    return Derived(FunctionSpec.parse(fid), order=2, power=power)


def test_sparams_conjugacy():
    assert SParams(0.5, p=2).q == pytest.approx(2.0)
    assert SParams(0.5, p=4).q == pytest.approx(4 / 3)
    with pytest.raises(ParamError):
        SParams(0.5, p=2, q=3)
    with pytest.raises(ParamError):
        SParams(0.0)
    with pytest.raises(ParamError):
        SParams(0.5, p=1.0)
    with pytest.raises(ParamError):
        SParams(0.5, q=0.5)
    with pytest.raises(ParamError):
        SParams(0.5, q=2).require_p()


def test_negative_square_is_not_convex():
    rep = check_s_convex(lambda t: -t * t, 1.0, Interval(0, 1))
    assert rep.verdict is Verdict.VIOLATED
    assert rep.worst_violation == pytest.approx(0.25)


@pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("fid", ["poly:0,0,1", "poly:0,0,0,1", "poly:0,0,0,0,1", "exp"])
def test_nonnegative_convex_second_derivative_is_s_convex(fid, s):
    assert check_s_convex(d2(fid), s, Interval(0, 1)).satisfied


def test_breckner_is_s_convex_for_its_own_s():
    g = Derived(FunctionSpec.parse("breckner:2,1,1,0.5"), order=0, absolute=False)
    assert check_s_convex(g, 0.5, Interval(0, 1)).satisfied
    assert not check_s_convex(g, 1.0, Interval(0, 1)).satisfied


def test_positive_function_is_never_s_concave_below_one():
    # x = y gives t^s + (1-t)^s > 1 when s < 1
    g = d2("cpow:1,0.25", power=2.0)
    assert check_s_concave(g, 1.0, Interval(0, 1)).satisfied
    assert not check_s_concave(g, 0.5, Interval(0, 1)).satisfied


def test_concave_second_derivative():
    g = d2("poly:0,0,0,2,-1")
    assert not check_s_convex(g, 1.0, Interval(0, 1)).satisfied
    assert check_s_concave(g, 1.0, Interval(0, 1)).satisfied


def test_singular_endpoint_is_inset():
    rep = check_s_convex(d2("pow_s:0.5"), 0.5, Interval(0, 1))
    assert math.isfinite(rep.worst_violation)


def test_hadamard_best_constant():
    left, right = hadamard_check(FunctionSpec.parse("pow_s:0.5"), 0.5, Interval(0, 1))
    assert right.hypothesis_checked and left.hypothesis_checked
    assert abs(right.lhs - right.rhs) < 1e-9
    assert left.holds and right.holds


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 1.0), st.floats(0.0, 3.0), st.floats(0.1, 3.0))
def test_hadamard_holds_for_exp_family(s, a, w):
    left, right = hadamard_check(FunctionSpec.parse("exp"), s, Interval(a, a + w), grid_n=9)
    assert left.holds and right.holds
