"""Sampled s-convexity / s-concavity checks and the Hadamard inequality.

A function g is s-convex in the second sense on [a, b] when

    g(t x + (1-t) y) <= t^s g(x) + (1-t)^s g(y)

for all x, y in [a, b] and t in [0, 1].  The checker evaluates the defect
D = lhs - rhs on a grid_n^3 lattice; it is a hypothesis gate, not a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _pykernels
from ._backend import kernels
from .errors import NonFiniteValue, ParamError
from .funcmodel import Derived, FunctionSpec, Interval
from .quadrature import QuadratureConfig, integrate
from .results import DEFAULT_TOLERANCE, BoundResult, make_result

DEFAULT_GRID = 21
ENDPOINT_INSET = 1e-9
SLACK_SCALE = 1e-10
CONJUGACY_TOL = 1e-12


@dataclass(frozen=True)
class SParams:
    """Exponents (s, p, q).

    Supplying only p fills in its conjugate q = p/(p-1).  Supplying only q
    leaves p unset (the power-mean theorem has no p).
    """

    s: float
    p: float | None = None
    q: float | None = None

    def __post_init__(self):
        s = float(self.s)
        if not 0.0 < s <= 1.0:
            raise ParamError(f"s must lie in (0, 1], got {s}")
        object.__setattr__(self, "s", s)
        p, q = self.p, self.q
        if p is not None:
            p = float(p)
            if not p > 1.0:
                raise ParamError(f"p must exceed 1, got {p}")
        if q is not None:
            q = float(q)
            if not q >= 1.0:
                raise ParamError(f"q must be at least 1, got {q}")
        if p is not None and q is not None:
            if abs(1.0 / p + 1.0 / q - 1.0) > CONJUGACY_TOL:
                raise ParamError(f"p={p} and q={q} are not conjugate")
        elif p is not None:
            q = p / (p - 1.0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def require_p(self) -> tuple[float, float]:
        """(p, q) for the Hoelder-type bounds, where both must exceed 1."""
        if self.p is None:
            raise ParamError("this bound needs p > 1")
        return self.p, self.q


class Verdict(str, Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class ConvexityReport:
    verdict: Verdict
    worst_violation: float
    witness: tuple[float, float, float] | None
    samples: int
    slack: float
    s: float
    mode: str

    @property
    def satisfied(self) -> bool:
        return self.verdict is Verdict.SATISFIED

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "worst_violation": self.worst_violation,
            "witness": list(self.witness) if self.witness else None,
            "samples": self.samples,
            "slack": self.slack,
            "s": self.s,
            "mode": self.mode,
        }


def _value(g, t: float) -> float:
    try:
        v = g.raw(t) if isinstance(g, Derived) else float(g(t))
    except (ArithmeticError, ValueError):
        return math.nan
    return v


def _nodes(g, iv: Interval, grid_n: int) -> np.ndarray:
    xs = np.array(iv.grid(grid_n))
    if not math.isfinite(_value(g, iv.a)):
        xs[0] = iv.a + ENDPOINT_INSET * iv.width
    if not math.isfinite(_value(g, iv.b)):
        xs[-1] = iv.b - ENDPOINT_INSET * iv.width
    return xs


def _lattice(g, s: float, iv: Interval, grid_n: int):
    if grid_n < 3:
        raise ParamError("grid_n must be at least 3")
    if not 0.0 < s <= 1.0:
        raise ParamError(f"s must lie in (0, 1], got {s}")
    xs = _nodes(g, iv, grid_n)
    ts = np.linspace(0.0, 1.0, grid_n)
    if isinstance(g, Derived):
        out = kernels.lattice_extrema(g.f.code, g.f.params, g.order, g.absolute, g.power, s, xs, ts)
    else:
        gx = np.array([_value(g, x) for x in xs])
        z = ts[None, None, :] * xs[:, None, None] + (1.0 - ts[None, None, :]) * xs[None, :, None]
        gz = np.array([_value(g, v) for v in z.ravel()]).reshape(z.shape)
        out = _pykernels.lattice_extrema_values(gx, gz, ts, s)
    if not out[9]:
        raise NonFiniteValue(f"g is not finite on the sampling lattice over [{iv.a}, {iv.b}]")
    return xs, ts, out


@lru_cache(maxsize=8192)
def _cached_lattice(g: Derived, s: float, a: float, b: float, grid_n: int):
    return _lattice(g, s, Interval(a, b), grid_n)


def _report(g, s, iv, grid_n, slack, mode) -> ConvexityReport:
    if isinstance(g, Derived):
        xs, ts, out = _cached_lattice(g, float(s), iv.a, iv.b, grid_n)
    else:
        xs, ts, out = _lattice(g, float(s), iv, grid_n)
    dmax, i1, j1, l1, dmin, i2, j2, l2, gmax, _ = out
    if slack is None:
        slack = SLACK_SCALE * (1.0 + gmax)
    if mode == "convex":
        worst, idx = max(0.0, dmax), (i1, j1, l1)
    else:
        worst, idx = max(0.0, -dmin), (i2, j2, l2)
    violated = worst > slack
    witness = (float(xs[idx[0]]), float(xs[idx[1]]), float(ts[idx[2]])) if violated else None
    return ConvexityReport(
        verdict=Verdict.VIOLATED if violated else Verdict.SATISFIED,
        worst_violation=float(worst),
        witness=witness,
        samples=grid_n**3,
        slack=float(slack),
        s=float(s),
        mode=mode,
    )


def check_s_convex(
    g: Callable[[float], float] | Derived,
    s: float,
    iv: Interval,
    grid_n: int = DEFAULT_GRID,
    slack: float | None = None,
) -> ConvexityReport:
    """Sampled test of s-convexity (second sense) of g on [a, b].

    The default slack is 1e-10 * (1 + max |g|) over the sampled values.
    Endpoints where g is not finite are moved inward by 1e-9*(b-a).
    """
    return _report(g, s, iv, grid_n, slack, "convex")


def check_s_concave(
    g: Callable[[float], float] | Derived,
    s: float,
    iv: Interval,
    grid_n: int = DEFAULT_GRID,
    slack: float | None = None,
) -> ConvexityReport:
    """Sampled test of s-concavity: D >= -slack everywhere on the lattice."""
    return _report(g, s, iv, grid_n, slack, "concave")


def hadamard_check(
    f: FunctionSpec,
    s: float,
    iv: Interval,
    cfg: QuadratureConfig | None = None,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    grid_n: int = DEFAULT_GRID,
) -> tuple[BoundResult, BoundResult]:
    """Both sides of 2^(s-1) f(mid) <= mean(f) <= (f(a) + f(b))/(s+1)."""
    if not 0.0 < s <= 1.0:
        raise ParamError(f"s must lie in (0, 1], got {s}")
    quad = integrate(f, iv, cfg)
    mean = quad.value / iv.width
    gate = check_s_convex(Derived(f, order=0, absolute=False), s, iv, grid_n)
    nonneg = min(f.eval(iv.a), f.eval(iv.b), f.eval(iv.midpoint)) >= 0.0
    hyp = gate.satisfied and nonneg
    meta = {"s": s, "hypothesis": "verified" if hyp else "failed", "mean": mean, **quad.metadata}
    left = make_result(
        "e1.1a", 2.0 ** (s - 1.0) * f.eval(iv.midpoint), mean,
        hypothesis_checked=hyp, tolerance=tolerance, metadata=meta,
    )
    right = make_result(
        "e1.1b", mean, (f.eval(iv.a) + f.eval(iv.b)) / (s + 1.0),
        hypothesis_checked=hyp, tolerance=tolerance, metadata=meta,
    )
    return left, right
