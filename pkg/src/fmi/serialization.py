"""JSON forms of problems and certificate measures."""
from __future__ import annotations

import numpy as np

from .errors import FmiError
from .hamburger_fmi import MomentData
from .measures import CircleMeasure, DiskHerglotz, HalfPlaneNevanlinna, LineMeasure
from .np_fmi import NpData
from .reports import complex_from_json, complex_to_json


def problem_to_json(problem) -> dict:
    if isinstance(problem, NpData):
        return {
            "problem": "np",
            "nodes": [complex_to_json(z) for z in problem.nodes],
            "values": [complex_to_json(w) for w in problem.values],
        }
    if isinstance(problem, MomentData):
        return {"problem": "hamburger", "moments": [float(x) for x in problem.s]}
    raise TypeError(f"cannot serialize {type(problem).__name__}")


def _list(obj: dict, key: str) -> list:
    val = obj.get(key)
    if not isinstance(val, list):
        raise FmiError(f"field {key!r} must be a list")
    return val


def _real(x) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FmiError(f"expected a real number, got {x!r}")
    return float(x)


def problem_from_json(obj) -> NpData | MomentData:
    if not isinstance(obj, dict):
        raise FmiError("problem must be a JSON object")
    kind = obj.get("problem")
    try:
        if kind == "np":
            nodes = [complex_from_json(z) for z in _list(obj, "nodes")]
            values = [complex_from_json(w) for w in _list(obj, "values")]
            return NpData(nodes, values)
        if kind == "hamburger":
            return MomentData([_real(x) for x in _list(obj, "moments")])
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, FmiError):
            raise
        raise FmiError(f"malformed problem: {exc}") from exc
    raise FmiError(f"unknown problem kind {kind!r}")


def measure_to_json(w) -> dict:
    if isinstance(w, DiskHerglotz):
        m = w.measure
        return {
            "kind": "circle",
            "atoms": [complex_to_json(t) for t in m.atoms],
            "weights": [float(x) for x in m.weights],
            "c": float(w.c),
        }
    if isinstance(w, HalfPlaneNevanlinna):
        m = w.measure
        return {"kind": "line", "atoms": [float(x) for x in m.atoms], "weights": [float(x) for x in m.weights]}
    raise TypeError(f"cannot serialize {type(w).__name__}")


def measure_from_json(obj) -> DiskHerglotz | HalfPlaneNevanlinna:
    """Parse a certificate into the function it generates."""
    if not isinstance(obj, dict):
        raise FmiError("measure must be a JSON object")
    kind = obj.get("kind")
    try:
        weights = np.array([_real(x) for x in _list(obj, "weights")])
        if kind == "circle":
            atoms = np.array([complex_from_json(t) for t in _list(obj, "atoms")])
            return DiskHerglotz(CircleMeasure(atoms, weights), _real(obj.get("c", 0.0)))
        if kind == "line":
            atoms = np.array([_real(x) for x in _list(obj, "atoms")])
            return HalfPlaneNevanlinna(LineMeasure(atoms, weights))
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, FmiError):
            raise
        raise FmiError(f"malformed measure: {exc}") from exc
    raise FmiError(f"unknown measure kind {kind!r}")
