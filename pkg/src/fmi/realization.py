"""Realizations (A, T, u, v) and the assembled matrices built on them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FmiError
from .numerics import adjoint, as_cmatrix

KINDS = ("disk", "halfplane")


@dataclass(frozen=True, eq=False)
class Realization:
    """Data matrix ``A``, node matrix ``T`` and value columns ``u``, ``v``.

    ``kind="disk"`` realizations satisfy ``A - T A T* = u v* + v u*``;
    ``kind="halfplane"`` ones satisfy ``T A - A T* = u v* - v u*``.
    """

    A: np.ndarray
    T: np.ndarray
    u: np.ndarray
    v: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FmiError(f"unknown realization kind {self.kind!r}")
        A, T = as_cmatrix(self.A), as_cmatrix(self.T)
        u, v = as_cmatrix(self.u), as_cmatrix(self.v)
        n = A.shape[0]
        if A.shape != (n, n) or T.shape != (n, n) or u.shape != (n, 1) or v.shape != (n, 1):
            raise FmiError(
                f"inconsistent shapes A{A.shape} T{T.shape} u{u.shape} v{v.shape}"
            )
        for name, val in (("A", A), ("T", T), ("u", u), ("v", v)):
            object.__setattr__(self, name, val)

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def fi_sides(self) -> tuple[np.ndarray, np.ndarray]:
        A, T, u, v = self.A, self.T, self.u, self.v
        if self.kind == "disk":
            return A - T @ A @ adjoint(T), u @ adjoint(v) + v @ adjoint(u)
        return T @ A - A @ adjoint(T), u @ adjoint(v) - v @ adjoint(u)

    def fi_residual(self) -> float:
        lhs, rhs = self.fi_sides()
        return float(np.max(np.abs(lhs - rhs)))

    def fi_tolerance(self, base: float = 1e-10) -> float:
        return base * (1.0 + float(np.linalg.norm(self.A, 2)))

    def with_A(self, A) -> "Realization":
        return Realization(A, self.T, self.u, self.v, self.kind)


@dataclass(frozen=True, eq=False)
class FmiMatrix:
    """Block matrix ``[[A, B(z)], [B(z)*, C(z)]]`` at the point ``z``."""

    z: complex
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def A(self) -> np.ndarray:
        return self.matrix[:-1, :-1]

    @property
    def column(self) -> np.ndarray:
        return self.matrix[:-1, -1:]

    @property
    def corner(self) -> float:
        return float(self.matrix[-1, -1].real)


def assemble(A: np.ndarray, column: np.ndarray, corner: float) -> np.ndarray:
    return np.block([[A, column], [adjoint(column), np.array([[corner]], dtype=complex)]])


@dataclass(frozen=True, eq=False)
class TfmiResult:
    """A transformed inequality computed from its definition and as a framed product."""

    kind: str
    z: complex
    direct: np.ndarray
    framed: np.ndarray
    residual: float
