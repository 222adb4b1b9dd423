"""Test-function catalogue with closed-form derivatives.

Every family is addressable by a short string id::

    poly:1,0,-2,3      1 - 2t^2 + 3t^3 (ascending coefficients)
    pow_s:0.5          t^s, s in (0, 1]
    breckner:0,1,0,0.5 u at t = 0, v*t^s + w for t > 0
    ln                 natural logarithm
    exp                exponential
    cpow:2,0.5         c*t^(s+2), whose second derivative is c(s+2)(s+1)t^s
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._backend import kernels
from ._pykernels import BRECKNER, CPOW, EXP, LN, POLY, POW_S, family_value
from .errors import DomainError, NonFiniteValue, ParamError

FAMILY_CODES = {
    "poly": POLY,
    "pow_s": POW_S,
    "breckner": BRECKNER,
    "ln": LN,
    "exp": EXP,
    "cpow": CPOW,
}

_ARITY = {"pow_s": 1, "breckner": 4, "ln": 0, "exp": 0, "cpow": 2}

SUP_GRID = 10_001
SUP_TOL = 1e-10
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() and abs(v) < 1e15 else repr(float(v))


@dataclass(frozen=True)
class Interval:
    """Closed integration domain [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise DomainError(f"interval needs a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def grid(self, n: int) -> list[float]:
        """n uniformly spaced points including both endpoints."""
        if n < 2:
            raise ParamError("grid needs at least 2 points")
        h = self.width / (n - 1)
        return [self.a + i * h for i in range(n - 1)] + [self.b]

    def __contains__(self, x: float) -> bool:
        return self.a <= x <= self.b


@dataclass(frozen=True)
class FunctionSpec:
    """An immutable, hashable member of one of the built-in families."""

    family: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILY_CODES:
            raise ParamError(f"unknown family {self.family!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if not all(math.isfinite(p) for p in params):
            raise ParamError("family parameters must be finite")
        if self.family == "poly":
            if not params:
                raise ParamError("polynomial needs at least one coefficient")
            return
        if len(params) != _ARITY[self.family]:
            raise ParamError(f"{self.family} takes {_ARITY[self.family]} parameters, got {len(params)}")
        if self.family in ("pow_s", "cpow"):
            s = params[-1]
            if not 0.0 < s <= 1.0:
                raise ParamError(f"{self.family} requires s in (0, 1], got {s}")
        elif self.family == "breckner":
            u, v, w, s = params
            if not 0.0 < s < 1.0:
                raise ParamError(f"breckner requires s in (0, 1), got {s}")
            if v < 0.0 or not 0.0 <= w <= u:
                raise ParamError("breckner requires v >= 0 and 0 <= w <= u")

    @classmethod
    def parse(cls, text: str) -> "FunctionSpec":
        """Build a spec from its string id, e.g. ``"poly:0,0,0,1"``."""
        name, _, rest = text.strip().partition(":")
        name = name.strip()
        try:
            params = tuple(float(p) for p in rest.split(",")) if rest.strip() else ()
        except ValueError as exc:
            raise ParamError(f"bad parameters in function id {text!r}") from exc
        return cls(name, params)

    @property
    def id(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(_fmt(p) for p in self.params)

    def __str__(self) -> str:
        return self.id

    @property
    def code(self) -> int:
        return FAMILY_CODES[self.family]

    @property
    def domain_min(self) -> float:
        """Greatest lower bound of the natural domain."""
        if self.family in ("poly", "exp"):
            return -math.inf
        return 0.0

    def _check_domain(self, t: float) -> None:
        if math.isnan(t):
            raise DomainError("argument is NaN")
        if t < self.domain_min or (self.family == "ln" and t <= 0.0):
            raise DomainError(f"{self.id} is not defined at t={t}")

    def derivative(self, k: int, t: float) -> float:
        """k-th derivative (k = 0, 1, 2) at t, in closed form."""
        if k not in (0, 1, 2):
            raise ParamError("only derivatives of order 0, 1, 2 are available")
        t = float(t)
        self._check_domain(t)
        v = family_value(self.code, self.params, k, t)
        if not math.isfinite(v):
            raise NonFiniteValue(f"derivative {k} of {self.id} is not finite at t={t}")
        return v

    def eval(self, t: float) -> float:
        return self.derivative(0, t)

    def eval_d1(self, t: float) -> float:
        return self.derivative(1, t)

    def eval_d2(self, t: float) -> float:
        return self.derivative(2, t)

    def __call__(self, t: float) -> float:
        return self.derivative(0, t)


def polynomial(*coefficients: float) -> FunctionSpec:
    return FunctionSpec("poly", coefficients)


def power_s(s: float) -> FunctionSpec:
    return FunctionSpec("pow_s", (s,))


def breckner(u: float, v: float, w: float, s: float) -> FunctionSpec:
    return FunctionSpec("breckner", (u, v, w, s))


def log_natural() -> FunctionSpec:
    return FunctionSpec("ln")


def exponential() -> FunctionSpec:
    return FunctionSpec("exp")


def scaled_power_s(c: float, s: float) -> FunctionSpec:
    return FunctionSpec("cpow", (c, s))


@dataclass(frozen=True)
class Derived:
    """The scalar function t -> |f^(order)(t)|**power (or the signed derivative).

    Used as the ``g`` of the convexity checks: the theorems put their
    hypotheses on |f''| or |f''|^q.
    """

    f: FunctionSpec
    order: int = 2
    power: float = 1.0
    absolute: bool = True

    def __post_init__(self):
        if self.order not in (0, 1, 2):
            raise ParamError("order must be 0, 1 or 2")
        if not self.absolute and self.power != 1.0:
            raise ParamError("a power other than 1 requires absolute=True")
        if self.power <= 0.0:
            raise ParamError("power must be positive")

    def raw(self, t: float) -> float:
        """Value without domain checks; may be inf or nan."""
        d = family_value(self.f.code, self.f.params, self.order, float(t))
        if self.absolute:
            d = abs(d)
            if self.power != 1.0 and d == d:
                d = math.inf if d == math.inf else d**self.power
        return d

    def __call__(self, t: float) -> float:
        d = self.f.derivative(self.order, t)
        return abs(d) ** self.power if self.absolute else d


def sup_abs_derivative(f: FunctionSpec, k: int, iv: Interval, n: int = SUP_GRID, tol: float = SUP_TOL) -> float:
    """Supremum of |f^(k)| on [a, b].

    Dense grid scan followed by golden-section refinement on the two grid
    cells around the grid maximum.
    """
    return _sup_abs(f, k, iv.a, iv.b, n, tol)


@lru_cache(maxsize=4096)
def _sup_abs(f: FunctionSpec, k: int, a: float, b: float, n: int, tol: float) -> float:
    if n < 3:
        raise ParamError("grid needs at least 3 points")
    if a < f.domain_min or (f.family == "ln" and a <= 0.0):
        raise DomainError(f"{f.id} is not defined on all of [{a}, {b}]")
    best, idx = kernels.scan_abs(f.code, f.params, k, a, b, n)
    if not math.isfinite(best):
        h = (b - a) / (n - 1)
        raise NonFiniteValue(f"|f^({k})| of {f.id} is unbounded on [{a}, {b}] (near t={a + idx * h})")
    h = (b - a) / (n - 1)
    lo = max(a, a + (idx - 1) * h)
    hi = min(b, a + (idx + 1) * h)

    def phi(t: float) -> float:
        return abs(family_value(f.code, f.params, k, t))

    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = phi(c), phi(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = phi(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = phi(d)
    return max(best, fc, fd, phi(lo), phi(hi))


def sup_abs_d2(f: FunctionSpec, iv: Interval, n: int = SUP_GRID, tol: float = SUP_TOL) -> float:
    """Least M with |f''(t)| <= M on [a, b] (up to refinement tolerance)."""
    return sup_abs_derivative(f, 2, iv, n, tol)


def sup_abs_d1(f: FunctionSpec, iv: Interval, n: int = SUP_GRID, tol: float = SUP_TOL) -> float:
    return sup_abs_derivative(f, 1, iv, n, tol)
