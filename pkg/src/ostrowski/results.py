"""The BoundResult record shared by every inequality check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .errors import ParamError

DEFAULT_TOLERANCE = 1e-9

# equation id -> short description
EQUATIONS: dict[str, str] = {
    "classic": "Ostrowski, bounded first derivative",
    "e1.1a": "Hadamard left: 2^(s-1) f(mid) <= mean",
    "e1.1b": "Hadamard right: mean <= (f(a)+f(b))/(s+1)",
    "e1.2": "Cerone-Dragomir-Roumeliotis, bounded second derivative (tight)",
    "e1.2b": "Cerone-Dragomir-Roumeliotis, relaxed (b-a)^2/6",
    "e1.3": "midpoint, (b-a)^2/24 ||f''||",
    "e2.5": "|f''| s-convex",
    "e2.6": "|f''| s-convex with |f''| <= M (tight)",
    "e2.6a": "|f''| s-convex with |f''| <= M (tight)",
    "e2.6b": "|f''| s-convex with |f''| <= M (relaxed)",
    "cor2": "midpoint form of e2.6",
    "e2.7": "|f''|^q s-convex, Hoelder",
    "e2.8": "|f''|^q s-convex, Hoelder, |f''| <= M",
    "cor4": "midpoint form of e2.8",
    "cor5": "perturbed trapezoid, Hoelder",
    "teo3": "|f''|^q s-convex, power mean",
    "cor6": "|f''|^q s-convex, power mean, |f''| <= M",
    "cor7": "midpoint form of cor6",
    "cor8": "perturbed trapezoid, power mean",
    "e2.9": "|f''|^q s-concave",
    "e2.12": "midpoint form of e2.9",
    "ee1": "power mean of t^s via e2.6",
    "ee2": "power mean of t^s via e2.8",
    "ee3": "power mean of t^s via cor6",
    "p6": "ln I - ln A via e2.12",
}


def check_equation_id(eq: str) -> str:
    if eq not in EQUATIONS:
        raise ParamError(f"unknown equation id {eq!r}; expected one of {sorted(EQUATIONS)}")
    return eq


@dataclass(frozen=True)
class BoundResult:
    """One evaluated inequality ``lhs <= rhs``.

    ``holds`` allows a mixed absolute/relative slack of
    ``tolerance * (1 + |rhs|)``.  ``hypothesis_checked`` is True when the
    theorem's convexity hypothesis passed its sampled check (or was assumed
    with gating disabled; ``metadata["hypothesis"]`` tells which).
    """

    equation_id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    hypothesis_checked: bool
    x: float | None = None
    metadata: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "equation_id": self.equation_id,
            "x": self.x,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "hypothesis_checked": self.hypothesis_checked,
            "metadata": self.metadata,
        }

    @property
    def ratio(self) -> float | None:
        return self.lhs / self.rhs if self.rhs > 0 else None


def make_result(
    equation_id: str,
    lhs: float,
    rhs: float,
    *,
    hypothesis_checked: bool,
    x: float | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    metadata: dict[str, Any] | None = None,
) -> BoundResult:
    check_equation_id(equation_id)
    lhs, rhs = float(lhs), float(rhs)
    margin = rhs - lhs
    holds = math.isfinite(margin) and margin >= -tolerance * (1.0 + abs(rhs))
    return BoundResult(
        equation_id=equation_id,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        holds=holds,
        hypothesis_checked=hypothesis_checked,
        x=x,
        metadata=dict(metadata or {}),
    )
