import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostrowski import FunctionSpec, Interval, Options, ParamError, evaluate
from ostrowski import bounds as B
from ostrowski.funcmodel import sup_abs_d2
from ostrowski.kernels import ostrowski_functional

T3 = FunctionSpec.parse("poly:0,0,0,1")
UNIT = Interval(0, 1)


def rel_close(u, v, rel=1e-12):
    return abs(u - v) <= rel * max(abs(u), abs(v), 1e-300)


def random_tuples(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        a = rng.uniform(-5, 5)
        b = a + rng.uniform(0.01, 10)
        yield Interval(a, b), rng.uniform(a, b), rng.uniform(0.01, 1.0), rng.uniform(0, 100)


# ------------------------------------------------------------ pure formulas


def test_cubic_sum_identity():
    for iv, x, _, _ in random_tuples(200, 1):
        direct, closed = B.cubic_sum(x, iv)
        assert rel_close(direct, closed, 1e-10)


def test_s_factor_at_one_is_a_third():
    assert B.sconvex_factor(1.0) == pytest.approx(1 / 3, rel=1e-15)


def test_sconvex_M_at_s_one_is_cerone():
    for iv, x, _, M in random_tuples(1000, 2):
        assert rel_close(B.bound_sconvex_M(x, iv, 1.0, M), B.cerone_rhs(x, iv, M))


def test_powermean_M_at_q_one_is_sconvex_M():
    for iv, x, s, M in random_tuples(1000, 3):
        assert rel_close(B.bound_powermean_M(x, iv, s, 1.0, M), B.bound_sconvex_M(x, iv, s, M))


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_midpoint_corollaries_equal_parent_at_midpoint(p):
    for iv, _, s, M in random_tuples(300, 4):
        m = iv.midpoint
        assert rel_close(B.holder_midpoint(iv, s, p, M), B.bound_holder_M(m, iv, s, p, M))
        assert rel_close(B.powermean_midpoint(iv, s, p, M), B.bound_powermean_M(m, iv, s, p, M))
        assert rel_close(B.cerone_midpoint(iv, M), B.cerone_rhs(m, iv, M))
        # the x-free s-convex midpoint form is the x-free relaxation
        assert rel_close(B.sconvex_midpoint(iv, s, M), B.bound_sconvex_M(m, iv, s, M, relaxed=True))


def test_sconcave_midpoint_equals_parent():
    f = FunctionSpec.parse("cpow:1,0.25")
    for iv, _, s, _ in random_tuples(200, 5):
        iv = Interval(abs(iv.a), abs(iv.a) + iv.width)
        assert rel_close(B.sconcave_midpoint(f, iv, s, 2.0), B.sconcave_rhs(f, iv.midpoint, iv, s, 2.0))


@pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
def test_trapezoid_bounds_sum_the_endpoint_bounds(s):
    # the perturbed trapezoid deviation is (b-a)/2 |Phi(a) + Phi(b)|
    for iv, _, _, M in random_tuples(200, 6):
        h = iv.width
        for p in (1.5, 3.0):
            both = B.bound_holder_M(iv.a, iv, s, p, M) + B.bound_holder_M(iv.b, iv, s, p, M)
            assert rel_close(B.trapezoid_holder_rhs(iv, s, p, M), h / 2 * both)
            both = B.bound_powermean_M(iv.a, iv, s, p, M) + B.bound_powermean_M(iv.b, iv, s, p, M)
            assert rel_close(B.trapezoid_powermean_rhs(iv, s, p, M), h / 2 * both)


def test_relaxed_forms_dominate_tight():
    for iv, x, s, M in random_tuples(500, 7):
        assert B.bound_sconvex_M(x, iv, s, M) <= B.bound_sconvex_M(x, iv, s, M, relaxed=True) * (1 + 1e-12)
        assert B.cerone_rhs(x, iv, M) <= B.cerone_rhs(x, iv, M, relaxed=True) * (1 + 1e-12)


def test_formula_parameter_validation():
    with pytest.raises(ParamError):
        B.bound_sconvex_M(0.5, UNIT, 0.0, 1.0)
    with pytest.raises(ParamError):
        B.bound_holder_M(0.5, UNIT, 0.5, 1.0, 1.0)
    with pytest.raises(ParamError):
        B.cerone_rhs(0.5, UNIT, -1.0)


# ------------------------------------------------------- function-dependent


def mp_sconvex_rhs(f, x, iv, s):
    """Bound assembled from t^s-weighted integrals computed by mpmath."""
    m2 = mpmath.quad(lambda t: t ** (s + 2), [0, 1])
    mb = mpmath.quad(lambda t: t**2 * (1 - t) ** s, [0, 1])
    d = lambda t: abs(f.eval_d2(t))  # noqa: E731
    left = (x - iv.a) ** 3 * (d(x) * m2 + d(iv.a) * mb) if x > iv.a else 0
    right = (iv.b - x) ** 3 * (d(x) * m2 + d(iv.b) * mb) if x < iv.b else 0
    return float((left + right) / (2 * iv.width))


@pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("x", [0.0, 0.3, 0.5, 1.0])
def test_sconvex_rhs_against_mpmath(s, x):
    for fid in ("poly:0,0,0,1", "exp"):
        f = FunctionSpec.parse(fid)
        assert B.sconvex_rhs(f, x, UNIT, s) == pytest.approx(mp_sconvex_rhs(f, x, UNIT, s), rel=1e-12, abs=1e-15)


def test_cubic_equality_witness():
    r = evaluate("e2.5", T3, UNIT, 0.5, s=1.0)
    assert r.hypothesis_checked and r.holds
    assert r.lhs == pytest.approx(0.125, abs=1e-12)
    assert abs(r.lhs - r.rhs) < 1e-9


def test_classic_sharpness():
    for a, b in [(0, 1), (2, 5)]:
        r = evaluate("classic", FunctionSpec.parse("poly:0,1"), Interval(a, b), a)
        assert r.lhs == (b - a) / 2 and r.rhs == (b - a) / 2


def test_known_values():
    r = evaluate("e2.7", T3, UNIT, 0.5, s=1.0, p=2)
    assert r.rhs == pytest.approx(0.1918752, abs=1e-7)
    r = evaluate("cor8", T3, UNIT, s=1.0, q=1)
    assert r.lhs == pytest.approx(0.5) and r.rhs == pytest.approx(1.0)


def test_powermean_q_one_equals_sconvex_rhs(regular):
    _, f, iv = regular
    for x in iv.grid(7):
        for s in (0.25, 0.75, 1.0):
            try:
                u = B.powermean_rhs(f, x, iv, s, 1.0)
            except ArithmeticError:
                continue
            assert rel_close(u, B.sconvex_rhs(f, x, iv, s))


DOMINANCE_EQS = ["e2.5", "e2.6", "e2.7", "e2.8", "teo3", "cor6", "cor5", "cor8", "e1.2", "e1.3", "classic"]


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["poly:0,0,1", "poly:0,0,0,1", "poly:0,0,0,0,1", "exp", "poly:1,-1,0.5,0,0.25"]),
    st.floats(0.0, 2.0), st.floats(0.1, 2.0), st.floats(0, 1), st.sampled_from([0.25, 0.5, 1.0]),
    st.sampled_from([1.5, 2.0, 4.0]), st.sampled_from(DOMINANCE_EQS),
)
def test_dominance_property(fid, a, w, u, s, p, eq):
    f, iv = FunctionSpec.parse(fid), Interval(a, a + w)
    x = min(iv.a + u * w, iv.b)
    r = evaluate(eq, f, iv, x, s=s, p=p if eq in ("e2.7", "e2.8", "cor5") else None,
                 q=p if eq in ("teo3", "cor6", "cor8") else None, opts=Options(grid_n=9))
    assert r.hypothesis_checked
    assert r.holds, r


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_sconcave_genuine_cases(p):
    # |f''|^q = (c t^0.25)^q is concave for q <= 4, hence 1-concave
    f = FunctionSpec.parse("cpow:1,0.25")
    for x in UNIT.grid(11):
        r = evaluate("e2.9", f, UNIT, x, s=1.0, p=p)
        assert r.hypothesis_checked and r.holds
        r = evaluate("e2.9", f, UNIT, x, s=0.5, p=p)
        assert not r.hypothesis_checked


def test_ln_sconcave_gate_fails_but_bound_holds():
    r = evaluate("e2.9", FunctionSpec.parse("ln"), Interval(1, 2), 1.5, s=1.0, p=2)
    assert not r.hypothesis_checked and r.metadata["hypothesis"] == "failed"
    assert r.holds
    assert r.lhs == pytest.approx(0.0191707, abs=1e-7)


def test_impostor_violates_only_without_gate():
    f = FunctionSpec.parse("poly:0,0,0,2,-1")
    gated = evaluate("e2.5", f, UNIT, 0.0, s=1.0)
    assert not gated.holds and not gated.hypothesis_checked
    ungated = evaluate("e2.5", f, UNIT, 0.0, s=1.0, opts=Options(gate=False))
    assert ungated.hypothesis_checked and not ungated.holds
    assert ungated.metadata["hypothesis"] == "assumed"


def test_given_M_below_supremum_is_not_a_hypothesis_pass():
    r = evaluate("e2.6", T3, UNIT, 0.5, s=1.0, M=1.0)
    assert not r.hypothesis_checked
    r = evaluate("e2.6", T3, UNIT, 0.5, s=1.0, M=6.0)
    assert r.hypothesis_checked and r.holds


def test_singular_endpoint_raises():
    with pytest.raises(ArithmeticError):
        evaluate("e2.5", FunctionSpec.parse("pow_s:0.5"), UNIT, 0.5, s=0.5)


def test_dispatcher_errors():
    with pytest.raises(ParamError):
        evaluate("e2.5", T3, UNIT, 0.5)
    with pytest.raises(ParamError):
        evaluate("e2.7", T3, UNIT, 0.5, s=1.0)
    with pytest.raises(ParamError):
        evaluate("e2.5", T3, UNIT, None, s=1.0)
    with pytest.raises(ParamError):
        evaluate("bogus", T3, UNIT, 0.5)
    with pytest.raises(ParamError):
        evaluate("ee1", T3, UNIT, 0.5, s=0.5)


def test_x_free_equations_use_midpoint():
    r = evaluate("cor4", T3, UNIT, s=1.0, p=2)
    assert r.x == 0.5 and r.lhs == pytest.approx(abs(ostrowski_functional(T3, 0.5, UNIT)))
    assert B.needs_x("e2.5") and not B.needs_x("cor7")


def test_tightness_never_exceeds_one_for_cubic():
    sup = sup_abs_d2(T3, UNIT)
    for x in UNIT.grid(21):
        r = evaluate("e2.6", T3, UNIT, x, s=1.0)
        assert r.ratio is None or r.ratio <= 1 + 1e-9
        assert r.metadata["M"] == sup
    # constant f'' makes the M-form exact at the midpoint
    sq = FunctionSpec.parse("poly:0,0,1")
    assert math.isclose(evaluate("e2.6", sq, UNIT, 0.5, s=1.0).ratio, 1.0, rel_tol=1e-9)
