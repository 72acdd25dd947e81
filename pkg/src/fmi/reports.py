"""Check reports shared by the library sweeps and the command line."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(obj) -> complex:
    if isinstance(obj, dict):
        return complex(float(obj["re"]), float(obj.get("im", 0.0)))
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(float(obj), 0.0)
    raise ValueError(f"not a complex number: {obj!r}")


def _jsonable(value):
    if isinstance(value, complex):
        return complex_to_json(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


@dataclass
class CheckReport:
    check_name: str
    verdict: bool
    min_eigenvalue: float | None = None
    residual: float | None = None
    witness_point: complex | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "verdict": bool(self.verdict),
            "min_eigenvalue": None if self.min_eigenvalue is None else float(self.min_eigenvalue),
            "residual": None if self.residual is None else float(self.residual),
            "witness_point": None if self.witness_point is None else complex_to_json(self.witness_point),
            "details": _jsonable(self.details),
        }


def sort_reports(reports: Iterable[CheckReport]) -> list[CheckReport]:
    def key(r: CheckReport):
        w = r.witness_point
        return (r.check_name, (0, 0.0, 0.0) if w is None else (1, w.real, w.imag))

    return sorted(reports, key=key)


def render_json(reports: Iterable[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in sort_reports(reports)], indent=2, sort_keys=True)


def render_text(reports: Iterable[CheckReport]) -> str:
    lines = []
    for r in sort_reports(reports):
        parts = [f"{'PASS' if r.verdict else 'FAIL'}  {r.check_name}"]
        if r.min_eigenvalue is not None:
            parts.append(f"min_eig={r.min_eigenvalue:.3e}")
        if r.residual is not None:
            parts.append(f"residual={r.residual:.3e}")
        if r.witness_point is not None:
            parts.append(f"at z={r.witness_point.real:+.6g}{r.witness_point.imag:+.6g}j")
        lines.append("  ".join(parts))
    return "\n".join(lines)
