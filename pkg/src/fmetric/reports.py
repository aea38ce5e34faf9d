"""Report dataclasses shared across the checking modules.

Conventions: `passed` is the overall verdict, `violations` lists the
offending items in evaluation order, and numeric fields are plain floats
so reports serialize to JSON without surprises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        try:
            return value.item()
        except Exception:
            pass
    return value


@dataclass
class PropertyReport:
    """Outcome of a pointwise function-property check (F1, F2, altering)."""

    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": _jsonable(self.failures),
            "note": self.note,
        }


@dataclass
class VerificationReport:
    """Outcome of one distance-axiom check on a finite space.

    Each violation is (point pair, lhs value, rhs value), where lhs is the
    observed quantity and rhs the bound it had to satisfy.
    """

    axiom: str
    passed: bool
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "violations": [
                {"pair": _jsonable(list(pair)), "lhs": _jsonable(lhs), "rhs": _jsonable(rhs)}
                for pair, lhs, rhs in self.violations
            ],
        }


@dataclass
class ConditionReport:
    """Outcome of a contraction-style condition check over a sample.

    margin_min is the smallest rhs - lhs seen (inf when nothing was
    evaluated, e.g. a vacuous trigger); source records where the sample
    came from so a run can be reproduced.
    """

    condition: str
    passed: bool
    checked: int
    violations: list = field(default_factory=list)
    margin_min: float = math.inf
    source: str = ""

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "passed": self.passed,
            "checked": self.checked,
            "violations": _jsonable(self.violations),
            "margin_min": _jsonable(self.margin_min),
            "source": self.source,
        }


@dataclass
class SolveReport:
    """Outcome of a fixed-point iteration run."""

    status: str                      # converged | cycle_detected | budget_exhausted
    iterations: int
    fixed_point: Any = None
    residual: float | None = None
    cycle: list | None = None
    trace: Any = None                # IterationTrace, omitted from to_dict

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "iterations": self.iterations,
            "fixed_point": _jsonable(self.fixed_point),
            "residual": _jsonable(self.residual),
            "cycle": _jsonable(self.cycle),
        }
