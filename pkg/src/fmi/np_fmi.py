"""Nevanlinna-Pick interpolation in the Caratheodory class of the disk.

The data (nodes z_k, values w_k) are realized as

    T = diag(z_k),  u = (1, ..., 1)^T,  v = (w_k)^T,
    A_kl = (w_k + conj w_l) / (1 - z_k conj z_l),

which satisfy the Stein identity ``A - T A T* = u v* + v u*``. A function
``w`` enters through the column ``B(z) = (zI - T)^{-1} (u w(z) - v)`` and the
corner ``C(z) = (w + conj w) / (1 - |z|^2)``.

Everything past the realization only uses the Stein identity, so the
transform ``W``, the framings and the transformed inequalities accept any
disk-kind :class:`Realization`, diagonal or not.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
import scipy.linalg

from .errors import BoundaryError, FmiError, PoleError, SingularPointError
from .numerics import adjoint, check_psd, residual_norm, scaled_residual
from .realization import FmiMatrix, Realization, TfmiResult, assemble
from .reports import CheckReport

Evaluator = Callable[[complex], complex]

NODE_TOL = 1e-12
SINGULAR_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class NpData:
    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=complex))
        values = np.atleast_1d(np.asarray(self.values, dtype=complex))
        if nodes.ndim != 1 or nodes.size == 0:
            raise FmiError("need at least one interpolation node")
        if values.shape != nodes.shape:
            raise FmiError(f"{nodes.size} nodes but {values.size} values")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise FmiError("nodes and values must be finite")
        if np.any(np.abs(nodes) >= 1.0 - 1e-12):
            raise FmiError("interpolation nodes must lie inside the unit disk")
        if nodes.size > 1:
            gaps = np.abs(nodes[:, None] - nodes[None, :])
            np.fill_diagonal(gaps, np.inf)
            if gaps.min() <= SINGULAR_TOL:
                raise FmiError("interpolation nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.nodes.size


def np_realization(data: NpData) -> Realization:
    z, w = data.nodes, data.values
    A = (w[:, None] + np.conj(w)[None, :]) / (1.0 - z[:, None] * np.conj(z)[None, :])
    return Realization(
        A=A,
        T=np.diag(z),
        u=np.ones((data.n, 1), dtype=complex),
        v=w.reshape(-1, 1),
        kind="disk",
    )


def stein_realization(T, u, v) -> Realization:
    """Solve ``A - T A T* = u v* + v u*`` for ``A`` (``T`` must have spectral radius < 1)."""
    T = np.asarray(T, dtype=complex)
    u = np.asarray(u, dtype=complex).reshape(-1, 1)
    v = np.asarray(v, dtype=complex).reshape(-1, 1)
    if np.max(np.abs(np.linalg.eigvals(T))) >= 1.0:
        raise FmiError("Stein equation needs T with spectral radius below one")
    Q = u @ adjoint(v) + v @ adjoint(u)
    A = scipy.linalg.solve_discrete_lyapunov(T, Q)
    A = 0.5 * (A + adjoint(A))
    return Realization(A, T, u, v, "disk")


def realization_nodes(real: Realization) -> np.ndarray:
    T = real.T
    if np.count_nonzero(T - np.diag(np.diag(T))) == 0:
        return np.diag(T).copy()
    return np.linalg.eigvals(T)


def np_nonsingular(z: complex, nodes: Iterable[complex], tol: float = SINGULAR_TOL) -> bool:
    """True when ``z`` avoids 0, the unit circle, every node and every reflected node."""
    z = complex(z)
    if abs(z) <= tol or abs(abs(z) - 1.0) <= tol:
        return False
    for zk in np.atleast_1d(np.asarray(list(nodes), dtype=complex)):
        if abs(z - zk) <= tol:
            return False
        # reflected node 1/conj(zk); compare without dividing so zk = 0 is harmless
        if abs(1.0 - np.conj(zk) * z) <= tol:
            return False
    return True


def _require_off_circle(z: complex) -> None:
    if abs(abs(z) - 1.0) <= NODE_TOL:
        raise BoundaryError(f"|z| = 1 at z = {z}")


def _require_not_node(real: Realization, z: complex) -> None:
    if np.min(np.abs(realization_nodes(real) - z)) <= NODE_TOL:
        raise PoleError(f"z = {z} is an interpolation node")


def _require_nonsingular(real: Realization, z: complex) -> None:
    if not np_nonsingular(z, realization_nodes(real)):
        raise SingularPointError(f"z = {z} is a singular point")


def np_column(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """``(zI - T)^{-1} (u w(z) - v)``."""
    z = complex(z)
    _require_off_circle(z)
    _require_not_node(real, z)
    n = real.size
    return np.linalg.solve(z * np.eye(n) - real.T, real.u * w(z) - real.v)


def np_column_entries(w: Evaluator, data: NpData, z: complex) -> np.ndarray:
    """Divided differences ``(w(z) - w_k) / (z - z_k)`` as a column."""
    z = complex(z)
    _require_off_circle(z)
    if np.min(np.abs(data.nodes - z)) <= NODE_TOL:
        raise PoleError(f"z = {z} is an interpolation node")
    return ((w(z) - data.values) / (z - data.nodes)).reshape(-1, 1)


def np_corner(w: Evaluator, z: complex) -> float:
    z = complex(z)
    _require_off_circle(z)
    wz = complex(w(z))
    return 2.0 * wz.real / (1.0 - abs(z) ** 2)


def np_fmi(w: Evaluator, real: Realization, z: complex) -> FmiMatrix:
    z = complex(z)
    return FmiMatrix(z, assemble(real.A, np_column(w, real, z), np_corner(w, z)))


def np_selector(n: int, k: int) -> np.ndarray:
    """Two-row framing that keeps row/column ``k`` (1-based) and the corner."""
    if not 1 <= k <= n:
        raise IndexError(f"node index {k} outside 1..{n}")
    M = np.zeros((2, n + 1), dtype=complex)
    M[0, k - 1] = 1.0
    M[1, n] = 1.0
    return M


def np_subinequality(fmi: FmiMatrix, k: int) -> np.ndarray:
    n = fmi.size
    if not 1 <= k <= n:
        raise IndexError(f"node index {k} outside 1..{n}")
    idx = [k - 1, n]
    return fmi.matrix[np.ix_(idx, idx)].copy()


# --- the transform W -------------------------------------------------------

def np_transform(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """The matrix function ``W(z)``.

    Computed as ``1/2 (T + zI)(T - zI)^{-1} A + z (zI - T)^{-1} u (v* + w(z) u*)(I - z T*)^{-1}``,
    which is analytic at the origin when no node sits there and gives
    ``W(0) = A / 2``.
    """
    z = complex(z)
    _require_off_circle(z)
    T, A, u, v = real.T, real.A, real.u, real.v
    n = real.size
    I = np.eye(n)
    if abs(z) > 0:
        _require_not_node(real, z)
    cayley = np.linalg.solve(T - z * I, (T + z * I) @ A)
    if z == 0:
        return 0.5 * cayley
    left = np.linalg.solve(z * I - T, u)
    # row (v* + w u*)(I - z T*)^{-1} is the adjoint of (I - conj(z) T)^{-1}(v + conj(w) u)
    right = adjoint(np.linalg.solve(I - np.conj(z) * T, v + np.conj(w(z)) * u))
    return 0.5 * cayley + z * left @ right


def np_transform_reflected(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """Second route to ``W``: ``1/2 A (I + zT*)(I - zT*)^{-1} + z B(z) u* (I - zT*)^{-1}``.

    Agrees with :func:`np_transform` only because of the Stein identity.
    """
    z = complex(z)
    T, A, u = real.T, real.A, real.u
    I = np.eye(real.size)
    Ts = adjoint(T)
    inv_r = np.linalg.inv(I - z * Ts)
    out = 0.5 * A @ (I + z * Ts) @ inv_r
    if z == 0:
        return out
    return out + z * np_column(w, real, z) @ adjoint(u) @ inv_r


def np_transform_via_column(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """Third route: ``1/2 (T + zI)(T - zI)^{-1} A - (zI - T)^{-1} u B(1/conj z)*``.

    Needs ``w`` outside the disk, so ``w`` must obey the disk symmetry.
    """
    z = complex(z)
    T, A, u = real.T, real.A, real.u
    I = np.eye(real.size)
    cayley = np.linalg.solve(T - z * I, (T + z * I) @ A)
    zr = 1.0 / np.conj(z)
    return 0.5 * cayley - np.linalg.solve(z * I - T, u) @ adjoint(np_column(w, real, zr))


def np_transform_entrywise(w: Evaluator, data: NpData, z: complex) -> np.ndarray:
    """Closed form of ``W`` for diagonal Pick data."""
    z = complex(z)
    _require_off_circle(z)
    if np.min(np.abs(data.nodes - z)) <= NODE_TOL:
        raise PoleError(f"z = {z} is an interpolation node")
    zk = data.nodes[:, None]
    zl = data.nodes[None, :]
    wk = data.values[:, None]
    wl = data.values[None, :]
    wz = complex(w(z))
    num = (zk + z) / (zk - z) * (wk - wz) + (1 + z * np.conj(zl)) / (1 - z * np.conj(zl)) * (wz + np.conj(wl))
    return 0.5 * num / (1.0 - zk * np.conj(zl))


def np_transform_symmetry_residual(w: Evaluator, real: Realization, z: complex) -> float:
    """``max |W(z) + W(1/conj z)*|``; vanishes when the Stein identity holds."""
    z = complex(z)
    return residual_norm(np_transform(w, real, z), -adjoint(np_transform(w, real, 1.0 / np.conj(z))))


def np_stein_vector(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """Column ``1/2 (T + zI)(T - zI)^{-1} (u w(z) - v)``."""
    z = complex(z)
    T = real.T
    I = np.eye(real.size)
    _require_off_circle(z)
    _require_not_node(real, z)
    return 0.5 * np.linalg.solve(T - z * I, (T + z * I) @ (real.u * w(z) - real.v))


# --- framings and transformed inequalities --------------------------------

def np_framing(kind: str, real: Realization, z: complex) -> np.ndarray:
    """Framing matrices ``M1`` (square, invertible), ``M2`` (tall) and ``N`` (left inverse of ``M2``).

    ``M1 = [[R, conj(z) R u], [0, 1]]`` and ``M2 = [[I, 0], [R, conj(z) R u]]``
    with ``R = (I - conj(z) T)^{-1}``.
    """
    z = complex(z)
    n = real.size
    I = np.eye(n)
    zb = np.conj(z)
    K = I - zb * real.T
    if abs(np.linalg.det(K)) <= SINGULAR_TOL:
        raise SingularPointError(f"I - conj(z) T is singular at z = {z}")
    R = np.linalg.inv(K)
    Ru = zb * R @ real.u
    zero_row = np.zeros((1, n), dtype=complex)
    one = np.ones((1, 1), dtype=complex)
    if kind == "M1":
        return np.block([[R, Ru], [zero_row, one]])
    if kind == "M2":
        return np.block([[I, np.zeros((n, 1))], [R, Ru]])
    if kind == "N":
        if abs(z) <= SINGULAR_TOL:
            raise SingularPointError("M2 has no left inverse at z = 0")
        u = real.u
        a_star = adjoint(u) / (zb * float(np.real(adjoint(u) @ u)[0, 0]))
        return np.block([[I, np.zeros((n, n))], [-a_star, a_star @ K]])
    raise ValueError(f"unknown framing {kind!r}")


def np_tfmi_direct(kind: str, w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    z = complex(z)
    d = 1.0 - abs(z) ** 2
    W = np_transform(w, real, z)
    Wsum = (W + adjoint(W)) / d
    if kind == "I":
        col = (np_column(w, real, z) - np_column(w, real, 1.0 / np.conj(z))) / d
        return assemble(Wsum, col, np_corner(w, z))
    if kind == "II":
        half = W + 0.5 * real.A
        return np.block([[real.A, half], [adjoint(half), Wsum]])
    raise ValueError(f"unknown transformed inequality {kind!r}")


def np_tfmi(kind: str, w: Evaluator, real: Realization, z: complex) -> TfmiResult:
    """Transformed inequality at a nonsingular ``z``, by definition and by framing the FMI."""
    z = complex(z)
    _require_nonsingular(real, z)
    direct = np_tfmi_direct(kind, w, real, z)
    M = np_framing("M1" if kind == "I" else "M2", real, z)
    framed = M @ np_fmi(w, real, z).matrix @ adjoint(M)
    return TfmiResult(kind, z, direct, framed, scaled_residual(direct, framed))


# --- identity catalogue ----------------------------------------------------

NP_IDENTITIES = (
    "cayley_resolvent",
    "resolvent_sandwich",
    "reflection_congruence",
    "reflected_fi",
    "transform_stein",
    "transform_routes",
    "transform_symmetry",
    "tfmi1_framing",
    "tfmi2_framing",
)


def np_identity_sides(name: str, real: Realization, w: Evaluator | None, z: complex,
                      t: complex | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of a catalogued identity at ``z``.

    ``t`` (a point on the unit circle) is only used by ``cayley_resolvent``;
    ``w`` is needed by the identities that involve the function.
    """
    z = complex(z)
    A, T, u, v = real.A, real.T, real.u, real.v
    n = real.size
    I = np.eye(n)
    Ts = adjoint(T)
    zb = np.conj(z)
    if name == "cayley_resolvent":
        t = complex(np.exp(0.7j) if t is None else t)
        rt = np.linalg.inv(t * I - T)
        lhs = 0.5 * np.linalg.solve(T - z * I, (T + z * I) @ rt)
        rhs = 0.5 * (t + z) / (t - z) * rt + z / (z - t) * np.linalg.inv(z * I - T)
        return lhs, rhs
    if name == "resolvent_sandwich":
        Zi = np.linalg.inv(z * I - T)
        Zs = np.linalg.inv(zb * I - Ts)
        d = 1.0 - z * zb
        lhs = Zi @ A @ Zs
        cay = 0.5 * np.linalg.solve(T - z * I, (T + z * I) @ A)
        cay_s = 0.5 * A @ (Ts + zb * I) @ np.linalg.inv(Ts - zb * I)
        rhs = (cay + cay_s) / d + Zi @ (u @ adjoint(v) + v @ adjoint(u)) @ Zs / d
        return lhs, rhs
    if name == "reflected_fi":
        lhs = (z * I - T) @ A @ (zb * I - Ts) + (1.0 - z * zb) * (u @ adjoint(v) + v @ adjoint(u))
        rhs = (I - zb * T) @ A @ (I - z * Ts)
        return lhs, rhs
    if name == "reflection_congruence":
        wz = complex(w(z))
        wr = complex(w(1.0 / zb))
        c = np_corner(w, z)
        a = -(1.0 - z * zb)
        L = np.block([[I, a * u], [np.zeros((1, n)), np.ones((1, 1))]])
        inner = assemble((z * I - T) @ A @ (zb * I - Ts), u * wz - v, c)
        lhs = L @ inner @ adjoint(L)
        rhs = assemble((I - zb * T) @ A @ (I - z * Ts), u * wr - v, c)
        return lhs, rhs
    if name == "transform_stein":
        W = np_transform(w, real, z)
        lhs = W + np_stein_vector(w, real, z) @ adjoint(u)
        rhs = T @ W @ Ts + u @ adjoint(np_stein_vector(w, real, 1.0 / zb))
        return lhs, rhs
    if name == "transform_routes":
        return np_transform(w, real, z), np_transform_reflected(w, real, z)
    if name == "transform_symmetry":
        return np_transform(w, real, z), -adjoint(np_transform(w, real, 1.0 / zb))
    if name in ("tfmi1_framing", "tfmi2_framing"):
        res = np_tfmi("I" if name == "tfmi1_framing" else "II", w, real, z)
        return res.direct, res.framed
    raise ValueError(f"unknown identity {name!r}")


def np_identity(name: str, real: Realization, w: Evaluator | None, z: complex,
                t: complex | None = None) -> float:
    """Max-entry residual between the two sides of a catalogued identity."""
    return residual_norm(*np_identity_sides(name, real, w, z, t))


# --- positivity of the transform -------------------------------------------

def np_schwarz_pick_equivalence(w: Evaluator, real: Realization, grid: Iterable[complex],
                                tol: float | None = None) -> CheckReport:
    """Compare positivity of ``W + W*`` with positivity of the second transformed inequality.

    Over the nonsingular grid points inside the disk, the smallest eigenvalue
    of ``W(z) + W(z)*`` and of the second transformed matrix are tracked; the
    verdict is that both are nonnegative or both fail somewhere.
    """
    nodes = realization_nodes(real)
    skipped = []
    best_a = (np.inf, None)
    best_b = (np.inf, None)
    for z in grid:
        z = complex(z)
        if abs(z) >= 1.0 or not np_nonsingular(z, nodes):
            skipped.append(z)
            continue
        W = np_transform(w, real, z)
        ra = check_psd(W + adjoint(W), tol)
        rb = check_psd(np_tfmi_direct("II", w, real, z), tol)
        # normalise by each matrix's tolerance so the two minima are comparable
        a = ra.min_eigenvalue / ra.tolerance
        b = rb.min_eigenvalue / rb.tolerance
        if a < best_a[0]:
            best_a = (a, z, ra.min_eigenvalue)
        if b < best_b[0]:
            best_b = (b, z, rb.min_eigenvalue)
    if best_a[1] is None:
        return CheckReport("schwarz_pick_equivalence", True, details={"skipped": len(skipped), "evaluated": 0})
    ok_a = best_a[0] >= -1.0
    ok_b = best_b[0] >= -1.0
    worst = best_a if best_a[0] <= best_b[0] else best_b
    return CheckReport(
        "schwarz_pick_equivalence",
        verdict=ok_a == ok_b,
        min_eigenvalue=worst[2],
        witness_point=worst[1],
        details={
            "transform_real_part_min": best_a[2],
            "transform_real_part_witness": best_a[1],
            "tfmi2_min": best_b[2],
            "tfmi2_witness": best_b[1],
            "transform_positive": ok_a,
            "tfmi2_positive": ok_b,
            "skipped": len(skipped),
        },
    )
