"""Special means and the bounds they inherit from the general inequalities.

Means are evaluated in log space through the ratio r = y/x, which keeps them
accurate for nearly equal arguments and free of overflow for large ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .bounds import (
    Options,
    _DEFAULT_OPTIONS,
    _gate,
    bound_holder_M,
    bound_powermean_M,
    bound_sconvex_M,
)
from .convexity import SParams
from .errors import DomainError, ParamError
from .funcmodel import Interval, log_natural, power_s, sup_abs_d2
from .results import BoundResult, make_result

EQUAL_RTOL = 1e-14
EXCLUDED_P_TOL = 1e-12


def arithmetic_mean(x: float, y: float) -> float:
    if x < 0.0 or y < 0.0:
        raise DomainError("arithmetic mean is defined here for x, y >= 0")
    return 0.5 * (x + y)


def _check_positive(x: float, y: float) -> None:
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"mean needs positive arguments, got ({x}, {y})")


def _log_ratio(x: float, y: float) -> float:
    # log(y/x) without forming y/x - 1 by subtraction of nearly equal numbers
    return math.log1p((y - x) / x)


def identric_mean(x: float, y: float) -> float:
    """I(x, y) = (1/e) (y^y / x^x)^(1/(y-x)), and x when x == y."""
    _check_positive(x, y)
    if abs(x - y) <= EQUAL_RTOL * max(x, y):
        return float(x)
    u = _log_ratio(x, y)
    r = math.exp(u)
    # ln I = ln x + r ln r / (r - 1) - 1
    return x * math.exp(r * u / math.expm1(u) - 1.0)


def gen_log_mean(x: float, y: float, p: float) -> float:
    """L_p(x, y) = [(y^(p+1) - x^(p+1)) / ((p+1)(y-x))]^(1/p), p not in {-1, 0}."""
    _check_positive(x, y)
    if abs(p) <= EXCLUDED_P_TOL or abs(p + 1.0) <= EXCLUDED_P_TOL:
        raise ParamError(f"generalized log-mean is undefined for p={p}")
    if abs(x - y) <= EQUAL_RTOL * max(x, y):
        return float(x)
    u = _log_ratio(x, y)
    ratio = math.expm1((p + 1.0) * u) / ((p + 1.0) * math.expm1(u))
    return x * math.exp(math.log(ratio) / p)


def power_mean_of_ts(a: float, b: float, s: float) -> float:
    """L_s^s(a, b) = (b^(s+1) - a^(s+1)) / ((s+1)(b-a)), the mean of t^s on [a, b]."""
    return (b ** (s + 1.0) - a ** (s + 1.0)) / ((s + 1.0) * (b - a))


@dataclass(frozen=True)
class MeansInput:
    a: float
    b: float
    s: float
    x: float | None = None
    p: float | None = None
    q: float | None = None

    def __post_init__(self):
        if not 0.0 < self.a < self.b:
            raise DomainError(f"need 0 < a < b, got a={self.a}, b={self.b}")
        if self.x is not None and not self.a <= self.x <= self.b:
            raise DomainError(f"x={self.x} lies outside [{self.a}, {self.b}]")
        # s, p, q validation and conjugacy
        SParams(self.s, self.p, self.q)

    @property
    def interval(self) -> Interval:
        return Interval(self.a, self.b)

    @property
    def point(self) -> float:
        return arithmetic_mean(self.a, self.b) if self.x is None else self.x


class PowerVariant(str, Enum):
    EE1 = "ee1"
    EE2 = "ee2"
    EE3 = "ee3"


def prop_power_bound(inp: MeansInput, variant: PowerVariant | str, opts: Options = _DEFAULT_OPTIONS) -> BoundResult:
    """Bounds on |L_s^s(a,b) - x^s + s(x - A) x^(s-1)| from f(t) = t^s."""
    variant = PowerVariant(variant)
    s, a, b = inp.s, inp.a, inp.b
    if not 0.0 < s < 1.0:
        raise ParamError(f"the power-mean propositions need s in (0, 1), got {s}")
    iv = inp.interval
    x = inp.point
    A = arithmetic_mean(a, b)
    f = power_s(s)
    M = sup_abs_d2(f, iv)
    lhs = abs(power_mean_of_ts(a, b, s) - x**s + s * (x - A) * x ** (s - 1.0))
    params = SParams(s, inp.p, inp.q)
    if variant is PowerVariant.EE1:
        rhs = bound_sconvex_M(x, iv, s, M)
        power = 1.0
    elif variant is PowerVariant.EE2:
        p, q = params.require_p()
        rhs = bound_holder_M(x, iv, s, p, M, q)
        power = q
    else:
        if params.q is None:
            raise ParamError("ee3 needs q")
        rhs = bound_powermean_M(x, iv, s, params.q, M)
        power = params.q
    hyp, hmeta = _gate(f, iv, s, power, False, opts.gate, opts.grid_n)
    meta = {
        "function": f.id, "a": a, "b": b, "s": s, "p": params.p, "q": params.q, "M": M,
        "at_arithmetic_mean": x == A, "b_le_1": b <= 1.0, **hmeta,
    }
    return make_result(variant.value, lhs, rhs, hypothesis_checked=hyp, x=x, tolerance=opts.tolerance, metadata=meta)


def p6_printed_rhs(a: float, b: float, s: float, p: float, q: float) -> float:
    """Variant with the bracket [-1/(3a+b)^2 - 1/(a+3b)^2]; always negative."""
    return 2.0 ** ((s - 1.0) / q) * (b - a) ** 2 / (2.0 * p + 1.0) ** (1.0 / p) * (
        -1.0 / (3.0 * a + b) ** 2 - 1.0 / (a + 3.0 * b) ** 2
    )


def p6_corrected_rhs(a: float, b: float, s: float, p: float, q: float) -> float:
    """The same bound with |(ln)''(t)| = 1/t^2 substituted, hence positive."""
    return 2.0 ** ((s - 1.0) / q) * (b - a) ** 2 / (2.0 * p + 1.0) ** (1.0 / p) * (
        1.0 / (3.0 * a + b) ** 2 + 1.0 / (a + 3.0 * b) ** 2
    )


def prop_log_identric(inp: MeansInput, opts: Options = _DEFAULT_OPTIONS) -> BoundResult:
    """|ln I(a,b) - ln A(a,b)| against the midpoint s-concave bound for ln.

    The bound is computed with the positive bracket; the negative-bracket
    variant is reported in the metadata together with its (failing) verdict.
    """
    a, b, s = inp.a, inp.b, inp.s
    p, q = SParams(s, inp.p, inp.q).require_p()
    lhs = abs(math.log(identric_mean(a, b)) - math.log(arithmetic_mean(a, b)))
    rhs = p6_corrected_rhs(a, b, s, p, q)
    printed = p6_printed_rhs(a, b, s, p, q)
    hyp, hmeta = _gate(log_natural(), inp.interval, s, q, True, opts.gate, opts.grid_n)
    printed_check = make_result("p6", lhs, printed, hypothesis_checked=hyp, tolerance=opts.tolerance)
    meta = {
        "function": "ln", "a": a, "b": b, "s": s, "p": p, "q": q,
        "printed_rhs": printed, "printed_holds": printed_check.holds, **hmeta,
    }
    return make_result("p6", lhs, rhs, hypothesis_checked=hyp, x=arithmetic_mean(a, b),
                       tolerance=opts.tolerance, metadata=meta)
