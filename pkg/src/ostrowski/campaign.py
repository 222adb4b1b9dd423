"""Verification campaigns and x-sweeps over the bound catalogue.

A campaign evaluates every (function, interval, equation, parameter, x)
cell in a fixed order.  Cells whose preconditions fail (a singular f'' at
an endpoint, an undefined logarithm, ...) are recorded as skipped with the
reason; they are never counted as counterexamples.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterator

from .bounds import Options, evaluate, needs_x
from .errors import OstrowskiError, ParamError
from .funcmodel import FunctionSpec, Interval
from .quadrature import QuadratureConfig
from .results import DEFAULT_TOLERANCE, check_equation_id

_S_FREE = {"classic", "e1.2", "e1.2b", "e1.3"}
_USES_P = {"e2.7", "e2.8", "cor4", "cor5", "e2.9", "e2.12"}
_USES_Q = {"teo3", "cor6", "cor7", "cor8"}

DEFAULT_FUNCTIONS = [
    "poly:0,0,1",
    "poly:0,0,0,1",
    "poly:0,0,0,0,1",
    "exp",
    "ln",
    "breckner:0,1,0,0.5",
    "cpow:1,0.25",
]
DEFAULT_INTERVALS = [(0.0, 1.0), (0.25, 1.0), (1.0, 2.0)]
DEFAULT_EQUATIONS = [
    "e2.5", "e2.6", "e2.7", "e2.8", "teo3", "cor6", "e2.9", "e2.12", "cor5", "cor8", "e1.2", "classic",
]

SWEEP_COLUMNS = ["x", "lhs", "rhs", "margin", "holds", "hypothesis_checked"]
CAMPAIGN_COLUMNS = ["function", "a", "b", "equation_id", "s", "p", "q", "status"] + SWEEP_COLUMNS + ["reason"]


@dataclass
class VerificationCampaign:
    functions: list[str] = field(default_factory=lambda: list(DEFAULT_FUNCTIONS))
    intervals: list[tuple[float, float]] = field(default_factory=lambda: list(DEFAULT_INTERVALS))
    s_grid: list[float] = field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    p_grid: list[float] = field(default_factory=lambda: [1.5, 2.0, 4.0])
    q_grid: list[float] = field(default_factory=lambda: [1.0, 2.0, 3.0])
    x_points: int = 21
    equations: list[str] = field(default_factory=lambda: list(DEFAULT_EQUATIONS))
    tolerance: float = DEFAULT_TOLERANCE
    gate: bool = True
    grid_n: int = 21
    quad_tol: float = 1e-11
    quad_depth: int = 60

    def validate(self) -> None:
        for name in ("functions", "intervals", "s_grid", "p_grid", "q_grid", "equations"):
            if not getattr(self, name):
                raise ParamError(f"campaign field {name!r} must be nonempty")
        for eq in self.equations:
            check_equation_id(eq)
            if eq in ("p6", "ee1", "ee2", "ee3", "e1.1a", "e1.1b"):
                raise ParamError(f"{eq} is not a campaign equation; use the means/convexity commands")
        if self.x_points < 2:
            raise ParamError("x_points must be at least 2")
        for f in self.functions:
            FunctionSpec.parse(f)
        for a, b in self.intervals:
            Interval(a, b)

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "VerificationCampaign":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ParamError(f"unknown campaign keys: {sorted(unknown)}")
        data = dict(data)
        if "intervals" in data:
            data["intervals"] = [tuple(float(v) for v in iv) for iv in data["intervals"]]
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "VerificationCampaign":
        """Read a campaign from JSON or from ``key = value`` lines.

        In the key-value form lists are separated by ``;`` and an interval
        is written ``a,b``::

            functions = poly:0,0,0,1; exp
            intervals = 0,1; 1,2
            s_grid = 0.5; 1
            gate = false
        """
        text = Path(path).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            data = _parse_key_values(text)
        if not isinstance(data, dict):
            raise ParamError("campaign config must be a mapping")
        return cls.from_mapping(data)

    @property
    def options(self) -> Options:
        return Options(
            cfg=QuadratureConfig(self.quad_tol, self.quad_depth),
            tolerance=self.tolerance,
            gate=self.gate,
            grid_n=self.grid_n,
        )


def _parse_key_values(text: str) -> dict[str, Any]:
    lists = {"functions", "s_grid", "p_grid", "q_grid", "equations"}
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParamError(f"line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        items = [v.strip() for v in value.split(";") if v.strip()]
        try:
            if key == "intervals":
                out[key] = [tuple(float(c) for c in v.split(",")) for v in items]
            elif key in lists:
                out[key] = items if key in ("functions", "equations") else [float(v) for v in items]
            elif key == "gate":
                out[key] = value.lower() in ("1", "true", "yes", "on")
            elif key in ("x_points", "grid_n", "quad_depth"):
                out[key] = int(value)
            else:
                out[key] = float(value)
        except ValueError as exc:
            raise ParamError(f"line {lineno}: cannot parse value for {key!r}") from exc
    return out


@dataclass
class CampaignReport:
    results: list[dict[str, Any]]
    skipped: list[dict[str, Any]]
    violations: list[dict[str, Any]]
    tightness: dict[str, float]
    summary: dict[str, Any]

    @property
    def exit_code(self) -> int:
        return 2 if self.violations else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "summary": self.summary,
            "tightness": self.tightness,
            "violations": self.violations,
            "skipped": self.skipped,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        rows = sorted(self.results + self.skipped, key=lambda r: r["index"])
        return rows_to_csv(rows, CAMPAIGN_COLUMNS)


def _param_sets(eq: str, c: VerificationCampaign) -> Iterator[dict[str, float | None]]:
    if eq in _S_FREE:
        yield {"s": None, "p": None, "q": None}
        return
    for s in c.s_grid:
        if eq in _USES_P:
            for p in c.p_grid:
                yield {"s": s, "p": p, "q": None}
        elif eq in _USES_Q:
            for q in c.q_grid:
                yield {"s": s, "p": None, "q": q}
        else:
            yield {"s": s, "p": None, "q": None}


def run_campaign(c: VerificationCampaign) -> CampaignReport:
    c.validate()
    opts = c.options
    results: list[dict[str, Any]] = []
    skipped: list[dict[str, Any]] = []
    index = 0
    for fid in c.functions:
        f = FunctionSpec.parse(fid)
        for a, b in c.intervals:
            iv = Interval(a, b)
            for eq in c.equations:
                xs = iv.grid(c.x_points) if needs_x(eq) else [None]
                for params in _param_sets(eq, c):
                    for x in xs:
                        cell = {"index": index, "function": f.id, "a": iv.a, "b": iv.b, "equation_id": eq, **params}
                        index += 1
                        try:
                            r = evaluate(eq, f, iv, x, s=params["s"], p=params["p"], q=params["q"], opts=opts)
                        except (OstrowskiError, ArithmeticError, ValueError) as exc:
                            skipped.append({**cell, "x": x, "status": "skipped", "reason": str(exc)})
                            continue
                        results.append({
                            **cell,
                            "status": "evaluated",
                            "x": r.x,
                            "lhs": r.lhs,
                            "rhs": r.rhs,
                            "margin": r.margin,
                            "holds": r.holds,
                            "hypothesis_checked": r.hypothesis_checked,
                            "hypothesis": r.metadata.get("hypothesis"),
                        })
    violations = [r for r in results if r["hypothesis_checked"] and not r["holds"]]
    tightness: dict[str, float] = {}
    for r in results:
        if r["hypothesis_checked"] and r["rhs"] > 0:
            ratio = r["lhs"] / r["rhs"]
            tightness[r["equation_id"]] = max(tightness.get(r["equation_id"], 0.0), ratio)
    summary = {
        "cells": index,
        "evaluated": len(results),
        "skipped": len(skipped),
        "hypothesis_checked": sum(1 for r in results if r["hypothesis_checked"]),
        "violations": len(violations),
        "campaign": {k: (list(map(list, v)) if k == "intervals" else v) for k, v in asdict(c).items()},
    }
    return CampaignReport(results, skipped, violations, tightness, summary)


def sweep(
    f: FunctionSpec,
    iv: Interval,
    equation_id: str,
    params: dict[str, Any],
    n_points: int,
    opts: Options | None = None,
) -> list[dict[str, Any]]:
    """Rows (x, lhs, rhs, margin, holds, hypothesis_checked) on a uniform x-grid.

    Points where the bound cannot be evaluated produce rows whose value
    columns are ``None`` (empty in CSV) plus a ``reason``.
    """
    if n_points < 2:
        raise ParamError("a sweep needs at least 2 points")
    check_equation_id(equation_id)
    opts = opts or Options()
    rows = []
    for x in iv.grid(n_points):
        try:
            r = evaluate(equation_id, f, iv, x, s=params.get("s"), p=params.get("p"), q=params.get("q"),
                         M=params.get("M"), opts=opts)
        except (OstrowskiError, ArithmeticError, ValueError) as exc:
            rows.append({"x": x, "lhs": None, "rhs": None, "margin": None, "holds": None,
                         "hypothesis_checked": None, "reason": str(exc)})
            continue
        rows.append({"x": x, "lhs": r.lhs, "rhs": r.rhs, "margin": r.margin, "holds": r.holds,
                     "hypothesis_checked": r.hypothesis_checked})
    return rows


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows: list[dict[str, Any]], columns: list[str] = SWEEP_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()
