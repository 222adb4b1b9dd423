"""Right-hand sides of the Ostrowski-type inequalities and their checks.

Every ``bound_*`` function taking a ``FunctionSpec`` returns a
:class:`BoundResult` whose lhs is the absolute Ostrowski functional (or the
classical / perturbed-trapezoid deviation) and whose rhs is the bound.  The
``*_M`` and ``*_midpoint`` functions are pure formulas in terms of a bound
M on |f''|.

Hypotheses are gated, not enforced: the sampled convexity check sets
``hypothesis_checked`` but a failing check never suppresses the comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .convexity import DEFAULT_GRID, SParams, check_s_concave, check_s_convex
from .errors import NonFiniteValue, ParamError
from .funcmodel import Derived, FunctionSpec, Interval, sup_abs_d1, sup_abs_d2
from .kernels import classic_lhs, ostrowski_functional, perturbed_trapezoid_lhs
from .quadrature import QuadratureConfig, moment_beta, moment_s2
from .results import DEFAULT_TOLERANCE, BoundResult, check_equation_id, make_result

# relative slack when comparing a user-supplied M with the computed supremum
M_CHECK_RTOL = 1e-9


def _s(s: float) -> float:
    return SParams(s).s


def _holder_pq(p: float, q: float | None = None) -> tuple[float, float]:
    params = SParams(1.0, p=p, q=q)
    return params.require_p()


def _q(q: float) -> float:
    params = SParams(1.0, q=q)
    return params.q


def _m(M: float) -> float:
    M = float(M)
    if not (M >= 0.0 and math.isfinite(M)):
        raise ParamError(f"M must be a finite nonnegative number, got {M}")
    return M


def sconvex_factor(s: float) -> float:
    """(s^2 + 3s + 4) / ((s+1)(s+2)(s+3))."""
    return (s * s + 3.0 * s + 4.0) / ((s + 1.0) * (s + 2.0) * (s + 3.0))


def position_bracket(x: float, iv: Interval) -> float:
    """(b-a)^2/24 + (x - (a+b)/2)^2 / 2."""
    return iv.width**2 / 24.0 + 0.5 * (x - iv.midpoint) ** 2


def cubic_sum(x: float, iv: Interval) -> tuple[float, float]:
    """The two sides of (x-a)^3 + (b-x)^3 = (b-a)[(b-a)^2/4 + 3(x-mid)^2]."""
    direct = (x - iv.a) ** 3 + (iv.b - x) ** 3
    closed = iv.width * (iv.width**2 / 4.0 + 3.0 * (x - iv.midpoint) ** 2)
    return direct, closed


# ---------------------------------------------------------------- formulas


def cerone_rhs(x: float, iv: Interval, M: float, relaxed: bool = False) -> float:
    M = _m(M)
    if relaxed:
        return iv.width**2 / 6.0 * M
    return position_bracket(x, iv) * M


def cerone_midpoint(iv: Interval, M: float) -> float:
    return _m(M) * iv.width**2 / 24.0


def bound_sconvex_M(x: float, iv: Interval, s: float, M: float, relaxed: bool = False) -> float:
    s, M = _s(s), _m(M)
    k = sconvex_factor(s)
    if relaxed:
        return M * iv.width**2 / 2.0 * k
    return 3.0 * M * k * position_bracket(x, iv)


def sconvex_midpoint(iv: Interval, s: float, M: float) -> float:
    """x-free midpoint form M (b-a)^2/2 times the s-factor (the relaxed bound)."""
    s, M = _s(s), _m(M)
    return M * iv.width**2 / 2.0 * sconvex_factor(s)


def bound_holder_M(x: float, iv: Interval, s: float, p: float, M: float, q: float | None = None) -> float:
    s, M = _s(s), _m(M)
    p, q = _holder_pq(p, q)
    return 3.0 * M / (2.0 * p + 1.0) ** (1.0 / p) * (2.0 / (s + 1.0)) ** (1.0 / q) * position_bracket(x, iv)


def holder_midpoint(iv: Interval, s: float, p: float, M: float, q: float | None = None) -> float:
    s, M = _s(s), _m(M)
    p, q = _holder_pq(p, q)
    return iv.width**2 / (8.0 * (2.0 * p + 1.0) ** (1.0 / p)) * (2.0 / (s + 1.0)) ** (1.0 / q) * M


def bound_powermean_M(x: float, iv: Interval, s: float, q: float, M: float) -> float:
    s, q, M = _s(s), _q(q), _m(M)
    return M * (3.0 * sconvex_factor(s)) ** (1.0 / q) * position_bracket(x, iv)


def powermean_midpoint(iv: Interval, s: float, q: float, M: float) -> float:
    s, q, M = _s(s), _q(q), _m(M)
    return M * (3.0 * sconvex_factor(s)) ** (1.0 / q) * iv.width**2 / 24.0


def trapezoid_holder_rhs(iv: Interval, s: float, p: float, M: float, q: float | None = None) -> float:
    s, M = _s(s), _m(M)
    p, q = _holder_pq(p, q)
    return iv.width**3 / (2.0 * (2.0 * p + 1.0) ** (1.0 / p)) * (2.0 / (s + 1.0)) ** (1.0 / q) * M


def trapezoid_powermean_rhs(iv: Interval, s: float, q: float, M: float) -> float:
    s, q, M = _s(s), _q(q), _m(M)
    return iv.width**3 / 6.0 * (3.0 * sconvex_factor(s)) ** (1.0 / q) * M


def _abs_d2(f: FunctionSpec, t: float) -> float:
    return abs(f.eval_d2(t))


def sconvex_rhs(f: FunctionSpec, x: float, iv: Interval, s: float) -> float:
    s = _s(s)
    m2, mb = moment_s2(s), moment_beta(s)
    h = iv.width
    total = 0.0
    if x > iv.a:
        total += (_abs_d2(f, x) * m2 + _abs_d2(f, iv.a) * mb) * (x - iv.a) ** 3
    if x < iv.b:
        total += (_abs_d2(f, x) * m2 + _abs_d2(f, iv.b) * mb) * (iv.b - x) ** 3
    return total / (2.0 * h)


def holder_rhs(f: FunctionSpec, x: float, iv: Interval, s: float, p: float, q: float | None = None) -> float:
    s = _s(s)
    p, q = _holder_pq(p, q)
    c = (1.0 / (2.0 * p + 1.0)) ** (1.0 / p)
    h = iv.width
    total = 0.0
    if x > iv.a:
        dx, da = _abs_d2(f, x), _abs_d2(f, iv.a)
        total += (x - iv.a) ** 3 / (2.0 * h) * c * ((dx**q + da**q) / (s + 1.0)) ** (1.0 / q)
    if x < iv.b:
        dx, db = _abs_d2(f, x), _abs_d2(f, iv.b)
        total += (iv.b - x) ** 3 / (2.0 * h) * c * ((dx**q + db**q) / (s + 1.0)) ** (1.0 / q)
    return total


def powermean_rhs(f: FunctionSpec, x: float, iv: Interval, s: float, q: float) -> float:
    """Power-mean bound; with q = 1 this is exactly the plain s-convex bound."""
    s, q = _s(s), _q(q)
    c = (1.0 / 3.0) ** (1.0 - 1.0 / q)
    m2, mb = moment_s2(s), moment_beta(s)
    h = iv.width
    total = 0.0
    if x > iv.a:
        dx, da = _abs_d2(f, x), _abs_d2(f, iv.a)
        total += (x - iv.a) ** 3 / (2.0 * h) * c * (dx**q * m2 + da**q * mb) ** (1.0 / q)
    if x < iv.b:
        dx, db = _abs_d2(f, x), _abs_d2(f, iv.b)
        total += (iv.b - x) ** 3 / (2.0 * h) * c * (dx**q * m2 + db**q * mb) ** (1.0 / q)
    return total


def sconcave_rhs(f: FunctionSpec, x: float, iv: Interval, s: float, p: float, q: float | None = None) -> float:
    s = _s(s)
    p, q = _holder_pq(p, q)
    h = iv.width
    inner = 0.0
    if x > iv.a:
        inner += (x - iv.a) ** 3 * _abs_d2(f, 0.5 * (x + iv.a))
    if x < iv.b:
        inner += (iv.b - x) ** 3 * _abs_d2(f, 0.5 * (iv.b + x))
    return 2.0 ** ((s - 1.0) / q) / ((2.0 * p + 1.0) ** (1.0 / p) * h) * inner / 2.0


def sconcave_midpoint(f: FunctionSpec, iv: Interval, s: float, p: float, q: float | None = None) -> float:
    s = _s(s)
    p, q = _holder_pq(p, q)
    a, b = iv.a, iv.b
    pts = _abs_d2(f, (3.0 * a + b) / 4.0) + _abs_d2(f, (a + 3.0 * b) / 4.0)
    return 2.0 ** ((s - 1.0) / q) * iv.width**2 / (16.0 * (2.0 * p + 1.0) ** (1.0 / p)) * pts


# ---------------------------------------------------------------- gating


def _gate(
    f: FunctionSpec, iv: Interval, s: float, power: float, concave: bool, gate: bool, grid_n: int
) -> tuple[bool, dict[str, Any]]:
    if not gate:
        return True, {"hypothesis": "assumed"}
    g = Derived(f, order=2, power=power)
    try:
        rep = (check_s_concave if concave else check_s_convex)(g, s, iv, grid_n)
    except NonFiniteValue:
        return False, {"hypothesis": "failed", "hypothesis_error": "non-finite |f''| on lattice"}
    meta: dict[str, Any] = {"hypothesis": "verified" if rep.satisfied else "failed"}
    if not rep.satisfied:
        meta["hypothesis_witness"] = list(rep.witness)
        meta["hypothesis_violation"] = rep.worst_violation
    return rep.satisfied, meta


def _resolve_M(f: FunctionSpec, iv: Interval, M: float | str | None) -> tuple[float, bool, dict[str, Any]]:
    """M to use, whether it provably bounds |f''|, and metadata."""
    try:
        sup = sup_abs_d2(f, iv)
    except NonFiniteValue:
        if M is None or M == "auto":
            raise
        return _m(M), False, {"M": float(M), "M_source": "given", "sup_abs_d2": math.inf}
    if M is None or M == "auto":
        return sup, True, {"M": sup, "M_source": "auto"}
    M = _m(M)
    return M, M >= sup * (1.0 - M_CHECK_RTOL), {"M": M, "M_source": "given", "sup_abs_d2": sup}


def _base_meta(f: FunctionSpec, iv: Interval, **extra) -> dict[str, Any]:
    meta = {"function": f.id, "a": iv.a, "b": iv.b}
    meta.update({k: v for k, v in extra.items() if v is not None})
    return meta


@dataclass(frozen=True)
class Options:
    """Settings shared by all checks."""

    cfg: QuadratureConfig | None = None
    tolerance: float = DEFAULT_TOLERANCE
    gate: bool = True
    grid_n: int = DEFAULT_GRID


_DEFAULT_OPTIONS = Options()


def _olhs(f, x, iv, opts: Options) -> float:
    return abs(ostrowski_functional(f, x, iv, opts.cfg))


# ---------------------------------------------------------------- checks


def bound_classic(f: FunctionSpec, x: float, iv: Interval, opts: Options = _DEFAULT_OPTIONS) -> BoundResult:
    """|f(x) - mean| <= [1/4 + (x-mid)^2/(b-a)^2] (b-a) sup|f'|."""
    sup1 = sup_abs_d1(f, iv)
    rhs = (0.25 + (x - iv.midpoint) ** 2 / iv.width**2) * iv.width * sup1
    lhs = classic_lhs(f, x, iv, opts.cfg)
    meta = _base_meta(f, iv, sup_abs_d1=sup1, hypothesis="verified")
    return make_result("classic", lhs, rhs, hypothesis_checked=True, x=float(x), tolerance=opts.tolerance, metadata=meta)


def bound_cerone(
    f: FunctionSpec, x: float, iv: Interval, relaxed: bool = False, M: float | str | None = None,
    opts: Options = _DEFAULT_OPTIONS,
) -> BoundResult:
    M, m_ok, mmeta = _resolve_M(f, iv, M)
    rhs = cerone_rhs(x, iv, M, relaxed)
    meta = _base_meta(f, iv, relaxed=relaxed, hypothesis="verified" if m_ok else "failed", **mmeta)
    return make_result(
        "e1.2b" if relaxed else "e1.2", _olhs(f, x, iv, opts), rhs,
        hypothesis_checked=m_ok, x=float(x), tolerance=opts.tolerance, metadata=meta,
    )


def bound_sconvex(f: FunctionSpec, x: float, iv: Interval, s: float, opts: Options = _DEFAULT_OPTIONS) -> BoundResult:
    rhs = sconvex_rhs(f, x, iv, s)
    hyp, hmeta = _gate(f, iv, s, 1.0, False, opts.gate, opts.grid_n)
    meta = _base_meta(f, iv, s=s, **hmeta)
    return make_result("e2.5", _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp, x=float(x),
                       tolerance=opts.tolerance, metadata=meta)


def bound_holder(
    f: FunctionSpec, x: float, iv: Interval, s: float, p: float, q: float | None = None,
    opts: Options = _DEFAULT_OPTIONS,
) -> BoundResult:
    p, q = _holder_pq(p, q)
    rhs = holder_rhs(f, x, iv, s, p, q)
    hyp, hmeta = _gate(f, iv, s, q, False, opts.gate, opts.grid_n)
    meta = _base_meta(f, iv, s=s, p=p, q=q, **hmeta)
    return make_result("e2.7", _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp, x=float(x),
                       tolerance=opts.tolerance, metadata=meta)


def bound_powermean(
    f: FunctionSpec, x: float, iv: Interval, s: float, q: float, opts: Options = _DEFAULT_OPTIONS
) -> BoundResult:
    q = _q(q)
    rhs = powermean_rhs(f, x, iv, s, q)
    hyp, hmeta = _gate(f, iv, s, q, False, opts.gate, opts.grid_n)
    meta = _base_meta(f, iv, s=s, q=q, **hmeta)
    return make_result("teo3", _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp, x=float(x),
                       tolerance=opts.tolerance, metadata=meta)


def bound_sconcave(
    f: FunctionSpec, x: float, iv: Interval, s: float, p: float, q: float | None = None,
    opts: Options = _DEFAULT_OPTIONS,
) -> BoundResult:
    """s-concave |f''|^q bound; p > 1 is required (the q = 1 case is not covered)."""
    p, q = _holder_pq(p, q)
    rhs = sconcave_rhs(f, x, iv, s, p, q)
    hyp, hmeta = _gate(f, iv, s, q, True, opts.gate, opts.grid_n)
    meta = _base_meta(f, iv, s=s, p=p, q=q, **hmeta)
    return make_result("e2.9", _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp, x=float(x),
                       tolerance=opts.tolerance, metadata=meta)


@dataclass(frozen=True)
class Holder:
    p: float


@dataclass(frozen=True)
class PowerMean:
    q: float


def bound_perturbed_trapezoid(
    f: FunctionSpec, iv: Interval, s: float, variant: Holder | PowerMean, M: float | str | None = None,
    opts: Options = _DEFAULT_OPTIONS,
) -> BoundResult:
    M, m_ok, mmeta = _resolve_M(f, iv, M)
    if isinstance(variant, Holder):
        p, q = _holder_pq(variant.p)
        rhs = trapezoid_holder_rhs(iv, s, p, M, q)
        eq, extra = "cor5", {"p": p, "q": q}
    elif isinstance(variant, PowerMean):
        q = _q(variant.q)
        rhs = trapezoid_powermean_rhs(iv, s, q, M)
        eq, extra = "cor8", {"q": q}
    else:
        raise ParamError(f"unknown trapezoid variant {variant!r}")
    hyp, hmeta = _gate(f, iv, s, q, False, opts.gate, opts.grid_n)
    hyp = hyp and m_ok
    meta = _base_meta(f, iv, s=s, **extra, **mmeta, **hmeta)
    return make_result(eq, perturbed_trapezoid_lhs(f, iv, opts.cfg), rhs, hypothesis_checked=hyp,
                       tolerance=opts.tolerance, metadata=meta)


# ---------------------------------------------------------------- dispatcher

_X_FREE = {"e1.3", "cor2", "cor4", "cor7", "e2.12", "cor5", "cor8"}


def needs_x(eq: str) -> bool:
    return check_equation_id(eq) not in _X_FREE


def evaluate(
    eq: str,
    f: FunctionSpec,
    iv: Interval,
    x: float | None = None,
    *,
    s: float | None = None,
    p: float | None = None,
    q: float | None = None,
    M: float | str | None = None,
    opts: Options = _DEFAULT_OPTIONS,
) -> BoundResult:
    """Evaluate one catalogued inequality by equation id."""
    check_equation_id(eq)
    if eq in _X_FREE:
        x = iv.midpoint
    elif x is None:
        raise ParamError(f"{eq} needs an evaluation point x")
    x = float(x)
    if eq == "classic":
        return bound_classic(f, x, iv, opts)
    if eq in ("e1.2", "e1.2b"):
        return bound_cerone(f, x, iv, eq == "e1.2b", M, opts)
    if eq == "e1.3":
        Mv, m_ok, mmeta = _resolve_M(f, iv, M)
        meta = _base_meta(f, iv, hypothesis="verified" if m_ok else "failed", **mmeta)
        return make_result("e1.3", _olhs(f, x, iv, opts), cerone_midpoint(iv, Mv), hypothesis_checked=m_ok,
                           x=x, tolerance=opts.tolerance, metadata=meta)
    if s is None:
        raise ParamError(f"{eq} needs s")
    if eq == "e2.5":
        return bound_sconvex(f, x, iv, s, opts)
    if eq == "e2.7":
        return bound_holder(f, x, iv, s, _need(p, "p", eq), q, opts)
    if eq == "teo3":
        return bound_powermean(f, x, iv, s, _need(q, "q", eq), opts)
    if eq == "e2.9":
        return bound_sconcave(f, x, iv, s, _need(p, "p", eq), q, opts)
    if eq == "cor5":
        return bound_perturbed_trapezoid(f, iv, s, Holder(_need(p, "p", eq)), M, opts)
    if eq == "cor8":
        return bound_perturbed_trapezoid(f, iv, s, PowerMean(_need(q, "q", eq)), M, opts)
    if eq == "e2.12":
        p_, q_ = _holder_pq(_need(p, "p", eq), q)
        rhs = sconcave_midpoint(f, iv, s, p_, q_)
        hyp, hmeta = _gate(f, iv, s, q_, True, opts.gate, opts.grid_n)
        meta = _base_meta(f, iv, s=s, p=p_, q=q_, **hmeta)
        return make_result("e2.12", _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp, x=x,
                           tolerance=opts.tolerance, metadata=meta)
    # M-based corollaries of the three s-convex theorems
    Mv, m_ok, mmeta = _resolve_M(f, iv, M)
    if eq in ("e2.6", "e2.6a", "e2.6b", "cor2"):
        power, extra = 1.0, {}
        if eq == "cor2":
            rhs = sconvex_midpoint(iv, s, Mv)
        else:
            rhs = bound_sconvex_M(x, iv, s, Mv, relaxed=eq == "e2.6b")
    elif eq in ("e2.8", "cor4"):
        p_, q_ = _holder_pq(_need(p, "p", eq), q)
        power, extra = q_, {"p": p_, "q": q_}
        rhs = holder_midpoint(iv, s, p_, Mv, q_) if eq == "cor4" else bound_holder_M(x, iv, s, p_, Mv, q_)
    elif eq in ("cor6", "cor7"):
        q_ = _q(_need(q, "q", eq))
        power, extra = q_, {"q": q_}
        rhs = powermean_midpoint(iv, s, q_, Mv) if eq == "cor7" else bound_powermean_M(x, iv, s, q_, Mv)
    else:
        raise ParamError(f"{eq} is not a bound on the Ostrowski functional")
    hyp, hmeta = _gate(f, iv, s, power, False, opts.gate, opts.grid_n)
    meta = _base_meta(f, iv, s=s, **extra, **mmeta, **hmeta)
    return make_result(eq, _olhs(f, x, iv, opts), rhs, hypothesis_checked=hyp and m_ok, x=x,
                       tolerance=opts.tolerance, metadata=meta)


def _need(v, name: str, eq: str):
    if v is None:
        raise ParamError(f"{eq} needs {name}")
    return v
