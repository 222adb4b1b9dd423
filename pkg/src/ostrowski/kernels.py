"""The Ostrowski functional and its integral representation.

For twice differentiable f,

    (1/(b-a)) int_a^b f - f(x) + (x - (a+b)/2) f'(x)
      = (x-a)^3/(2(b-a)) int_0^1 t^2 f''(t x + (1-t) a) dt
      + (b-x)^3/(2(b-a)) int_0^1 t^2 f''(t x + (1-t) b) dt.

The left side integrates f over [a, b]; the right side integrates over the
unit t-interval, so the two sides never share a subdivision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .funcmodel import FunctionSpec, Interval
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate, integrate_segment


@dataclass(frozen=True)
class KernelEvaluation:
    x: float
    lhs_signed: float
    rhs_identity: float
    residual: float

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "lhs_signed": self.lhs_signed,
            "rhs_identity": self.rhs_identity,
            "residual": self.residual,
        }


@lru_cache(maxsize=4096)
def _mean(f: FunctionSpec, a: float, b: float, cfg: QuadratureConfig) -> float:
    return integrate(f, Interval(a, b), cfg).value / (b - a)


def integral_mean(f: FunctionSpec, iv: Interval, cfg: QuadratureConfig | None = None) -> float:
    """(1/(b-a)) times the integral of f over [a, b] (cached per f, interval, config)."""
    return _mean(f, iv.a, iv.b, cfg or DEFAULT_CONFIG)


def _check_x(x: float, iv: Interval) -> float:
    x = float(x)
    if x not in iv:
        raise DomainError(f"x={x} lies outside [{iv.a}, {iv.b}]")
    return x


def ostrowski_functional(f: FunctionSpec, x: float, iv: Interval, cfg: QuadratureConfig | None = None) -> float:
    """Signed value of mean(f) - f(x) + (x - (a+b)/2) f'(x)."""
    x = _check_x(x, iv)
    return integral_mean(f, iv, cfg) - f.eval(x) + (x - iv.midpoint) * f.eval_d1(x)


def lemma1_rhs(f: FunctionSpec, x: float, iv: Interval, cfg: QuadratureConfig | None = None) -> float:
    """Integral form of the functional; zero-prefactor terms are skipped."""
    x = _check_x(x, iv)
    total = 0.0
    if x > iv.a:
        inner = integrate_segment(f, 2, iv.a, x, t_power=2.0, cfg=cfg).value
        total += (x - iv.a) ** 3 / (2.0 * iv.width) * inner
    if x < iv.b:
        inner = integrate_segment(f, 2, iv.b, x, t_power=2.0, cfg=cfg).value
        total += (iv.b - x) ** 3 / (2.0 * iv.width) * inner
    return total


def identity_residual(f: FunctionSpec, x: float, iv: Interval, cfg: QuadratureConfig | None = None) -> KernelEvaluation:
    lhs = ostrowski_functional(f, x, iv, cfg)
    rhs = lemma1_rhs(f, x, iv, cfg)
    return KernelEvaluation(x=float(x), lhs_signed=lhs, rhs_identity=rhs, residual=abs(lhs - rhs))


def classic_lhs(f: FunctionSpec, x: float, iv: Interval, cfg: QuadratureConfig | None = None) -> float:
    """|f(x) - mean(f)|."""
    x = _check_x(x, iv)
    return abs(f.eval(x) - integral_mean(f, iv, cfg))


def perturbed_trapezoid_lhs(f: FunctionSpec, iv: Interval, cfg: QuadratureConfig | None = None) -> float:
    """|int f - (b-a)/2 (f(a)+f(b)) + (b-a)^2/4 (f'(b) - f'(a))|."""
    h = iv.width
    integral = integral_mean(f, iv, cfg) * h
    return abs(
        integral
        - 0.5 * h * (f.eval(iv.a) + f.eval(iv.b))
        + 0.25 * h * h * (f.eval_d1(iv.b) - f.eval_d1(iv.a))
    )
