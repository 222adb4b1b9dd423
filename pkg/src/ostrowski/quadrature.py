"""Adaptive Simpson quadrature used as the integration oracle.

Panels are accepted when the Richardson estimate |S_fine - S_coarse| / 15
falls below the panel's share of the tolerance; the tolerance halves with
every subdivision, so the summed estimate stays under ``abs_tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import _pykernels
from ._backend import kernels
from .errors import MaxDepthExceeded, NonFiniteValue, ParamError
from .funcmodel import Derived, FunctionSpec, Interval


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-11
    max_depth: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ParamError("abs_tol must be positive")
        if self.max_depth < 10:
            raise ParamError("max_depth must be at least 10")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    """Integral estimate plus diagnostics.

    ``inset_a``/``inset_b`` record that a non-finite endpoint value forced
    integration to start 1e-12*(b-a) inside the interval.
    """

    value: float
    error: float
    evaluations: int
    inset_a: bool = False
    inset_b: bool = False
    depth_exceeded: bool = False

    def __float__(self) -> float:
        return self.value

    @property
    def metadata(self) -> dict:
        return {
            "quad_error": self.error,
            "quad_evaluations": self.evaluations,
            "quad_inset_a": self.inset_a,
            "quad_inset_b": self.inset_b,
            "quad_depth_exceeded": self.depth_exceeded,
        }


def _finish(raw, a: float, b: float, raise_on_depth: bool) -> QuadResult:
    value, err, flags, nevals = raw
    if flags & _pykernels.FLAG_NONFINITE:
        raise NonFiniteValue(f"integrand is not finite inside [{a}, {b}]")
    res = QuadResult(
        value=float(value),
        error=float(err),
        evaluations=int(nevals),
        inset_a=bool(flags & _pykernels.FLAG_INSET_A),
        inset_b=bool(flags & _pykernels.FLAG_INSET_B),
        depth_exceeded=bool(flags & _pykernels.FLAG_DEPTH),
    )
    if res.depth_exceeded and raise_on_depth:
        raise MaxDepthExceeded(f"max depth reached on [{a}, {b}]", res.value, res.error)
    return res


def _safe(f: Callable[[float], float]) -> Callable[[float], float]:
    def g(t: float) -> float:
        try:
            return float(f(t))
        except (ArithmeticError, ValueError):
            return math.nan

    return g


def integrate(
    f: Callable[[float], float] | FunctionSpec | Derived,
    iv: Interval,
    cfg: QuadratureConfig | None = None,
    *,
    raise_on_depth: bool = False,
) -> QuadResult:
    """Integral of f over [a, b].

    Family members and ``Derived`` objects run in the compiled kernel when it
    is available; any other callable goes through the Python implementation.
    Exceptions raised by a callable count as non-finite values.
    """
    cfg = cfg or DEFAULT_CONFIG
    if isinstance(f, FunctionSpec):
        f = Derived(f, order=0, absolute=False)
    if isinstance(f, Derived):
        raw = kernels.simpson_family(
            f.f.code, f.f.params, f.order, f.absolute, f.power,
            0.0, 0.0, 1.0, 0.0, iv.a, iv.b, cfg.abs_tol, cfg.max_depth,
        )
    else:
        raw = _pykernels.simpson(_safe(f), iv.a, iv.b, cfg.abs_tol, cfg.max_depth)
    return _finish(raw, iv.a, iv.b, raise_on_depth)


def integrate_segment(
    f: FunctionSpec,
    order: int,
    start: float,
    end: float,
    t_power: float = 0.0,
    cfg: QuadratureConfig | None = None,
) -> QuadResult:
    """Integral over t in [0, 1] of t**t_power * f^(order)(t*end + (1-t)*start)."""
    cfg = cfg or DEFAULT_CONFIG
    raw = kernels.simpson_family(
        f.code, f.params, order, False, 1.0,
        t_power, 0.0, end - start, start, 0.0, 1.0, cfg.abs_tol, cfg.max_depth,
    )
    return _finish(raw, 0.0, 1.0, False)


def integrate_weight(e1: float, e2: float, cfg: QuadratureConfig | None = None) -> QuadResult:
    """Integral of t**e1 * (1-t)**e2 over [0, 1]."""
    cfg = cfg or DEFAULT_CONFIG
    raw = kernels.simpson_family(0, (0.0,), -1, False, 1.0, e1, e2, 1.0, 0.0, 0.0, 1.0, cfg.abs_tol, cfg.max_depth)
    return _finish(raw, 0.0, 1.0, False)


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise ParamError(f"s must lie in (0, 1], got {s}")
    return s


def moment_s2(s: float) -> float:
    """Integral of t^(s+2) over [0, 1], i.e. 1/(s+3)."""
    s = _check_s(s)
    return 1.0 / (s + 3.0)


def moment_beta(s: float) -> float:
    """Integral of t^2 (1-t)^s over [0, 1], i.e. 2/((s+1)(s+2)(s+3))."""
    s = _check_s(s)
    return 2.0 / ((s + 1.0) * (s + 2.0) * (s + 3.0))
