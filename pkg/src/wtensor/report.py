"""Check reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exactmath import RingPoly


def to_jsonable(x: Any) -> Any:
    """Convert library values to plain JSON data.

    Constant polynomials become ints, others their text form; matrices become
    row-major arrays of polynomial strings.
    """
    from .matrix import Matrix

    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, RingPoly):
        return x.constant() if x.is_constant() else str(x)
    if isinstance(x, Matrix):
        return x.to_json()
    if hasattr(x, "to_jsonable"):
        return x.to_jsonable()
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: to_jsonable(v) for k, v in x.items()}
        return [[to_jsonable(k), to_jsonable(v)] for k, v in x.items()]
    if isinstance(x, (frozenset, set)):
        return sorted(to_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return repr(x)


@dataclass
class Report:
    """Outcome of one check.

    A failing report always carries a counterexample with the offending input
    and both sides of the identity, so it can be replayed.
    """

    op: str
    params: dict
    passed: bool
    counterexample: dict | None = None
    count: Any = None
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError(f"failing report for {self.op} lacks a counterexample")

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "op": self.op,
            "params": to_jsonable(self.params),
            "count": to_jsonable(self.count),
            "pass": self.passed,
            "counterexample": to_jsonable(self.counterexample),
        }
        if self.details:
            out["details"] = to_jsonable(self.details)
        if timing:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, ensure_ascii=False)


def merge(op: str, params: dict, reports: list[Report], **details) -> Report:
    """Fold sub-reports into one; the first failure in list order wins."""
    failed = next((r for r in reports if not r.passed), None)
    sub = [{"op": r.op, "pass": r.passed} for r in reports]
    return Report(
        op=op,
        params=params,
        passed=failed is None,
        counterexample=None
        if failed is None
        else {"sub_op": failed.op, "params": failed.params, **(failed.counterexample or {})},
        details={"checks": sub, **details},
        elapsed=sum(r.elapsed for r in reports),
    )
