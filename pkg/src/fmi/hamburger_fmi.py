"""The Hamburger moment problem as an interpolation problem in the upper half-plane.

Moments ``s_0 .. s_2n`` are realized as

    A = Hankel(s_{k+l}),  T = lower shift,  u = e_0,  v = -(0, s_0, ..., s_{n-1})^T,

all of size ``n + 1``, which satisfy ``T A - A T* = u v* - v u*``. A Nevanlinna
function ``w`` enters through the column ``B(z) = (I - zT)^{-1} (u w(z) - v)``,
whose entries are the shifted tails

    b_k(z) = z^k w(z) + sum_{j<k} z^{k-1-j} s_j,   k = 0 .. n,

and the corner ``C(z) = Im w(z) / Im z``. Because ``T`` is nilpotent every
resolvent ``(I - zT)^{-1}`` is an exact finite sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import BoundaryError, FmiError, QuadratureError
from .measures import LineMeasure, HalfPlaneNevanlinna, moment_tail, moments
from .numerics import adjoint, check_psd, residual_norm, scaled_residual
from .realization import FmiMatrix, Realization, TfmiResult, assemble

Evaluator = Callable[[complex], complex]

AXIS_TOL = 1e-12
DEFAULT_LADDER = (1e3, 1e4, 1e5, 1e6)


@dataclass(frozen=True, eq=False)
class MomentData:
    s: np.ndarray

    def __post_init__(self):
        s = np.atleast_1d(np.asarray(self.s, dtype=float))
        if s.ndim != 1:
            raise FmiError("moments must be a flat sequence")
        if s.size < 3 or s.size % 2 == 0:
            raise FmiError(f"need an odd number (>= 3) of moments, got {s.size}")
        if not np.all(np.isfinite(s)):
            raise FmiError("moments must be finite")
        object.__setattr__(self, "s", s)

    @property
    def n(self) -> int:
        return (self.s.size - 1) // 2


def hankel_matrix(s: Sequence[float], size: int) -> np.ndarray:
    s = np.asarray(s)
    idx = np.arange(size)
    return s[idx[:, None] + idx[None, :]]


def shift_matrix(size: int) -> np.ndarray:
    return np.eye(size, k=-1, dtype=complex)


def hankel_realization(data: MomentData) -> Realization:
    n = data.n
    v = np.zeros((n + 1, 1), dtype=complex)
    v[1:, 0] = -data.s[:n]
    u = np.zeros((n + 1, 1), dtype=complex)
    u[0, 0] = 1.0
    return Realization(
        A=hankel_matrix(data.s, n + 1).astype(complex),
        T=shift_matrix(n + 1),
        u=u,
        v=v,
        kind="halfplane",
    )


def realization_moments(real: Realization) -> np.ndarray:
    """Read ``s_0 .. s_2n`` back off the Hankel matrix."""
    A = real.A
    n = real.size - 1
    return np.concatenate([A[0, :].real, A[1:, n].real]) if n else A[0, :].real


def nilpotent_resolvent(T: np.ndarray, z: complex) -> np.ndarray:
    """``(I - zT)^{-1}`` as the finite sum ``I + zT + ... + (zT)^{m-1}`` (``T`` nilpotent)."""
    m = T.shape[0]
    term = np.eye(m, dtype=complex)
    out = term.copy()
    zT = z * T
    for _ in range(m - 1):
        term = term @ zT
        out = out + term
    return out


def _require_off_axis(z: complex) -> None:
    if abs(z.imag) <= AXIS_TOL:
        raise BoundaryError(f"z = {z} is on the real axis")


def h_column(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """``(I - zT)^{-1} (u w(z) - v)``, the column ``(b_0(z), ..., b_n(z))``."""
    z = complex(z)
    _require_off_axis(z)
    return nilpotent_resolvent(real.T, z) @ (real.u * w(z) - real.v)


def h_column_entries(w: Evaluator, data: MomentData, z: complex) -> np.ndarray:
    z = complex(z)
    _require_off_axis(z)
    wz = complex(w(z))
    return np.array([moment_tail(wz, z, k, list(data.s[:k])) for k in range(data.n + 1)],
                    dtype=complex).reshape(-1, 1)


def h_corner(w: Evaluator, z: complex) -> float:
    z = complex(z)
    _require_off_axis(z)
    return complex(w(z)).imag / z.imag


def h_fmi(w: Evaluator, real: Realization, z: complex) -> FmiMatrix:
    z = complex(z)
    return FmiMatrix(z, assemble(real.A, h_column(w, real, z), h_corner(w, z)))


# --- the transform W -------------------------------------------------------

def h_transform(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """``T R(z) A - R(z) u v* R(z)^# + w(z) R(z) u u* R(z)^#`` with ``R(z) = (I - zT)^{-1}``
    and ``R(z)^# = (I - zT*)^{-1}``."""
    z = complex(z)
    _require_off_axis(z)
    T, A, u, v = real.T, real.A, real.u, real.v
    R = nilpotent_resolvent(T, z)
    Rs = adjoint(nilpotent_resolvent(T, np.conj(z)))
    return T @ R @ A - R @ u @ adjoint(v) @ Rs + complex(w(z)) * R @ u @ adjoint(u) @ Rs


def h_transform_via_column(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """Second route: ``T R(z) A + R(z) u B(conj z)*``."""
    z = complex(z)
    R = nilpotent_resolvent(real.T, z)
    return real.T @ R @ real.A + R @ real.u @ adjoint(h_column(w, real, np.conj(z)))


def h_transform_hankel(w_value, z, s: Sequence, n: int):
    """Hankel matrix ``b_{k+l}(z)``, ``0 <= k, l <= n``, from ``w(z)`` and ``s_0 .. s_{2n-1}``.

    Generic in the number type: with mpmath inputs it returns an mpmath matrix,
    which the large-``|z|`` asymptotics need.
    """
    if len(s) < 2 * n:
        raise ValueError(f"need {2 * n} moments, got {len(s)}")
    tails = [moment_tail(w_value, z, k, list(s[:k])) for k in range(2 * n + 1)]
    if isinstance(w_value, (mpmath.mpc, mpmath.mpf)):
        return mpmath.matrix([[tails[k + l] for l in range(n + 1)] for k in range(n + 1)])
    return np.array([[tails[k + l] for l in range(n + 1)] for k in range(n + 1)], dtype=complex)


def h_stein_vector(w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    """Column ``-T (I - zT)^{-1} (u w(z) - v)``."""
    return -real.T @ h_column(w, real, z)


# --- framings and transformed inequalities --------------------------------

def h_framing(kind: str, real: Realization, z: complex) -> np.ndarray:
    """Framing matrices for the half-plane inequalities.

    ``M1 = [[T R, R u], [0, 1]]`` and ``M2 = [[I, 0], [T R, R u]]`` with
    ``R = (I - conj(z) T)^{-1}``; ``N`` is a left inverse of ``M2``;
    ``m_trunc`` is the two-row framing that isolates the top moment;
    ``projector_lift`` is ``[[T*(I - conj(z) T), 0], [0, 1]]``, which maps
    ``M1`` to ``diag(P, 1)`` with ``P = T* T``.
    """
    z = complex(z)
    zb = np.conj(z)
    T, u = real.T, real.u
    m = real.size
    n = m - 1
    I = np.eye(m)
    R = nilpotent_resolvent(T, zb)
    zcol = np.zeros((m, 1))
    zrow = np.zeros((1, m))
    one = np.ones((1, 1))
    if kind == "M1":
        return np.block([[T @ R, R @ u], [zrow, one]])
    if kind == "M2":
        return np.block([[I, zcol], [T @ R, R @ u]])
    if kind == "N":
        e0 = np.zeros((1, m))
        e0[0, 0] = 1.0
        return np.block([[I, np.zeros((m, m))], [zrow, e0 @ (I - zb * T)]])
    if kind == "m_trunc":
        M = np.zeros((2, m + 1), dtype=complex)
        M[0, n] = 1.0
        for j in range(n):
            M[1, j] = zb ** (n - 1 - j)
        M[1, m] = zb ** n
        return M
    if kind == "projector_lift":
        return np.block([[adjoint(T) @ (I - zb * T), zcol], [zrow, one]])
    raise ValueError(f"unknown framing {kind!r}")


def h_tfmi_direct(kind: str, w: Evaluator, real: Realization, z: complex) -> np.ndarray:
    z = complex(z)
    _require_off_axis(z)
    d = z - np.conj(z)
    if kind == "truncated":
        s = realization_moments(real)
        n = real.size - 1
        b = complex(moment_tail(complex(w(z)), z, 2 * n, list(s[: 2 * n])))
        return np.array([[s[2 * n], b], [np.conj(b), (b - np.conj(b)) / d]], dtype=complex)
    W = h_transform(w, real, z)
    Wdiff = (W - adjoint(W)) / d
    if kind == "I":
        col = (h_column(w, real, z) - h_column(w, real, np.conj(z))) / d
        return assemble(Wdiff, col, h_corner(w, z))
    if kind == "II":
        return np.block([[real.A, W], [adjoint(W), Wdiff]])
    raise ValueError(f"unknown transformed inequality {kind!r}")


_TFMI_FRAMING = {"I": "M1", "II": "M2", "truncated": "m_trunc"}


def h_tfmi(kind: str, w: Evaluator, real: Realization, z: complex) -> TfmiResult:
    """Transformed inequality at ``z``, by definition and by framing the FMI."""
    z = complex(z)
    if kind not in _TFMI_FRAMING:
        raise ValueError(f"unknown transformed inequality {kind!r}")
    direct = h_tfmi_direct(kind, w, real, z)
    M = h_framing(_TFMI_FRAMING[kind], real, z)
    framed = M @ h_fmi(w, real, z).matrix @ adjoint(M)
    return TfmiResult(kind, z, direct, framed, scaled_residual(direct, framed))


# --- identity catalogue ----------------------------------------------------

H_IDENTITIES = (
    "resolvent_partial_fraction",
    "shifted_resolvent",
    "resolvent_sandwich",
    "conjugate_congruence",
    "conjugate_fi",
    "transform_displacement",
    "transform_routes",
    "transform_hankel",
    "transform_symmetry",
    "column_from_transform",
    "tfmi1_framing",
    "tfmi2_framing",
    "truncated_framing",
    "projector_recovery",
    "left_inverse",
)


def h_identity_sides(name: str, real: Realization, w: Evaluator | None, z: complex,
                     lam: float = 0.37) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of a catalogued identity at ``z`` (``lam`` is a real auxiliary point)."""
    z = complex(z)
    _require_off_axis(z)
    A, T, u, v = real.A, real.T, real.u, real.v
    m = real.size
    n = m - 1
    I = np.eye(m)
    Ts = adjoint(T)
    zb = np.conj(z)
    d = z - zb
    R = nilpotent_resolvent(T, z)
    if name == "resolvent_partial_fraction":
        Rl = nilpotent_resolvent(T, lam)
        return Rl / (lam - z), R @ (I / (lam - z) + T @ Rl)
    if name == "shifted_resolvent":
        Rlu = nilpotent_resolvent(T, lam) @ u
        return T @ R @ Rlu, (Rlu - R @ u) / (lam - z)
    if name == "resolvent_sandwich":
        Rs = adjoint(nilpotent_resolvent(T, z))  # (I - conj(z) T*)^{-1}
        lhs = T @ R @ A @ Rs @ Ts
        rhs = (T @ R @ A - A @ Rs @ Ts) / d - R @ (u @ adjoint(v) - v @ adjoint(u)) @ Rs / d
        return lhs, rhs
    if name == "conjugate_fi":
        lhs = (I - zb * T) @ A @ (I - z * Ts) - d * (u @ adjoint(v) - v @ adjoint(u))
        return lhs, (I - z * T) @ A @ (I - zb * Ts)
    if name == "conjugate_congruence":
        wz = complex(w(z))
        c = h_corner(w, z)
        L = np.block([[I, -d * u], [np.zeros((1, m)), np.ones((1, 1))]])
        inner = assemble((I - z * T) @ A @ (I - zb * Ts), u * wz - v, c)
        rhs = assemble((I - zb * T) @ A @ (I - z * Ts), u * np.conj(wz) - v, c)
        return L @ inner @ adjoint(L), rhs
    if name == "transform_displacement":
        # arranged so both sides carry W; T W - W T* alone cancels most digits
        W = h_transform(w, real, z)
        lhs = T @ W + h_stein_vector(w, real, z) @ adjoint(u)
        rhs = W @ Ts + u @ adjoint(h_stein_vector(w, real, zb))
        return lhs, rhs
    if name == "transform_routes":
        return h_transform(w, real, z), h_transform_via_column(w, real, z)
    if name == "transform_hankel":
        s = realization_moments(real)
        return h_transform(w, real, z), h_transform_hankel(complex(w(z)), z, list(s[: 2 * n]), n)
    if name == "transform_symmetry":
        return h_transform(w, real, z), adjoint(h_transform(w, real, zb))
    if name == "column_from_transform":
        return h_transform(w, real, z)[:, :1], h_column(w, real, z)
    if name in ("tfmi1_framing", "tfmi2_framing", "truncated_framing"):
        kind = {"tfmi1_framing": "I", "tfmi2_framing": "II", "truncated_framing": "truncated"}[name]
        res = h_tfmi(kind, w, real, z)
        return res.direct, res.framed
    if name == "projector_recovery":
        P = Ts @ T
        target = np.block([[P, np.zeros((m, 1))], [np.zeros((1, m)), np.ones((1, 1))]])
        return h_framing("projector_lift", real, z) @ h_framing("M1", real, z), target
    if name == "left_inverse":
        return h_framing("N", real, z) @ h_framing("M2", real, z), np.eye(m + 1)
    raise ValueError(f"unknown identity {name!r}")


def h_identity(name: str, real: Realization, w: Evaluator | None, z: complex,
               lam: float = 0.37) -> float:
    return residual_norm(*h_identity_sides(name, real, w, z, lam))


# --- moment extraction -----------------------------------------------------

@dataclass
class ExtractionReport:
    """Outcome of comparing moment data with a candidate representing measure.

    ``gap = A - A_sigma`` must be positive semidefinite, vanish after
    compression by the shift, and hence equal ``rho e_n e_n*`` with ``rho``
    the surplus of the top moment.
    """

    A_sigma: np.ndarray
    gap: np.ndarray
    rho: float
    recovered_moments: list[float]
    asymptotic_s2n: float
    ladder: tuple[float, ...]
    ladder_estimates: tuple[float, ...]
    ladder_converged: bool
    ladder_slow: bool
    transform_limit_error: float
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "A_sigma": self.A_sigma.real.tolist(),
            "gap": self.gap.real.tolist(),
            "rho": self.rho,
            "recovered_moments": list(self.recovered_moments),
            "asymptotic_s2n": self.asymptotic_s2n,
            "ladder": list(self.ladder),
            "ladder_estimates": list(self.ladder_estimates),
            "ladder_converged": self.ladder_converged,
            "ladder_slow": self.ladder_slow,
            "transform_limit_error": self.transform_limit_error,
            "verdicts": dict(sorted(self.verdicts.items())),
        }


def _ladder_precision(n: int, y: float) -> int:
    # b_k(iy) cancels about k * log10(y) leading digits
    return 30 + int(math.ceil((2 * n + 1) * math.log10(max(y, 10.0))))


def top_tail_asymptotics(sigma: LineMeasure, s: Sequence[float], n: int, y: float) -> tuple[float, mpmath.matrix]:
    """``Re(-iy b_2n(iy))`` and ``-iy W(iy)`` for the Cauchy transform of ``sigma``, in high precision."""
    w = HalfPlaneNevanlinna(sigma)
    with mpmath.workdps(_ladder_precision(n, y)):
        z = mpmath.mpc(0, y)
        wz = w(z)
        s_mp = [mpmath.mpf(float(x)) for x in s[: 2 * n]]
        b_top = moment_tail(wz, z, 2 * n, s_mp)
        W = h_transform_hankel(wz, z, s_mp, n)
        scaled = W * (-z)
        top = float(mpmath.re(-z * b_top))
        scaled_f = np.array([[complex(scaled[i, j]) for j in range(n + 1)] for i in range(n + 1)])
    return top, scaled_f


def extract_moments(sigma: LineMeasure, data: MomentData, ladder: Sequence[float] = DEFAULT_LADDER,
                    tol: float = 1e-8) -> ExtractionReport:
    """Check that ``sigma`` represents the data in the sense of the truncated moment problem.

    Verdicts: ``gap_psd``, ``gap_range`` (shift compression of the gap vanishes),
    ``rank_one_surplus``, ``moments_match`` (the first ``2n`` moments agree),
    ``top_moment_bound``, ``transform_limit`` (``-iy W(iy)`` tends to ``A_sigma``,
    relative ``1e-4`` at the top of the ladder) and ``asymptotic_top_moment``
    (``-iy b_2n(iy)`` tends to ``s_2n(sigma)``, relative ``1e-3``).
    """
    n = data.n
    ladder = tuple(float(y) for y in ladder)
    if not ladder or any(y <= 0 for y in ladder):
        raise ValueError("ladder must be nonempty and positive")
    s = data.s
    rec = moments(sigma, 2 * n + 1)
    A = hankel_matrix(s, n + 1)
    A_sigma = hankel_matrix(np.array(rec), n + 1)
    gap = A - A_sigma
    rho = float(gap[n, n])
    scale = max(1.0, float(np.max(np.abs(A))), float(np.max(np.abs(A_sigma))))
    atol = tol * scale

    T = shift_matrix(n + 1).real
    e_n = np.zeros((n + 1, n + 1))
    e_n[n, n] = 1.0

    estimates = []
    limit = None
    for y in ladder:
        top, limit = top_tail_asymptotics(sigma, s, n, y)
        estimates.append(top)
    asym = estimates[-1]
    s2n_sigma = rec[2 * n]
    limit_err = float(np.max(np.abs(limit - A_sigma))) / scale

    steps = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
    converged = len(steps) == 0 or steps[-1] <= 1e-3 * max(1.0, abs(asym))
    slow = abs(estimates[0] - asym) > 5e-5 * max(1.0, abs(asym))

    verdicts = {
        "gap_psd": check_psd(gap, atol).verdict,
        "gap_range": float(np.max(np.abs(T @ gap @ T.T))) <= atol,
        "rank_one_surplus": rho >= -atol and float(np.max(np.abs(gap - rho * e_n))) <= atol,
        "moments_match": all(abs(a - b) <= tol * max(1.0, abs(b)) for a, b in zip(rec[: 2 * n], s[: 2 * n])),
        "top_moment_bound": s2n_sigma <= s[2 * n] + atol,
        "transform_limit": limit_err <= 1e-4,
        "asymptotic_top_moment": abs(asym - s2n_sigma) <= 1e-3 * max(1.0, abs(s2n_sigma)),
    }
    return ExtractionReport(
        A_sigma=A_sigma,
        gap=gap,
        rho=rho,
        recovered_moments=list(rec),
        asymptotic_s2n=asym,
        ladder=ladder,
        ladder_estimates=tuple(estimates),
        ladder_converged=bool(converged),
        ladder_slow=bool(slow),
        transform_limit_error=limit_err,
        verdicts={k: bool(v) for k, v in verdicts.items()},
    )


# --- Gauss quadrature from moments ----------------------------------------

PD_TOL = 1e-10


def representing_measure(data: MomentData, dps: int = 60) -> LineMeasure:
    """``n``-point Gauss rule matching ``s_0 .. s_{2n-1}`` (Golub-Welsch).

    The Jacobi matrix is read off the Cholesky factor of the leading ``n x n``
    Hankel block extended by one column, all in mpmath precision ``dps``.
    Its ``2n``-th moment never exceeds ``s_2n`` when the data are a truncated
    moment sequence.
    """
    n = data.n
    s = data.s
    lead = hankel_matrix(s, n)
    if float(np.linalg.eigvalsh(lead)[0]) <= PD_TOL:
        raise QuadratureError("leading Hankel block is not strictly positive definite")
    with mpmath.workdps(dps):
        sm = [mpmath.mpf(float(x)) for x in s]
        H = mpmath.matrix(n + 1, n + 1)
        for i in range(n + 1):
            for j in range(n + 1):
                if i < n or j < n:
                    H[i, j] = sm[i + j]
        # upper factor R of the leading block, R^T R = H[:n, :n], plus the column R^{-T} h
        Rf = mpmath.matrix(n, n + 1)
        for i in range(n):
            acc = H[i, i] - mpmath.fsum(Rf[k, i] ** 2 for k in range(i))
            if acc <= 0:
                raise QuadratureError("Cholesky breakdown; data are not a moment sequence")
            Rf[i, i] = mpmath.sqrt(acc)
            for j in range(i + 1, n + 1):
                Rf[i, j] = (H[i, j] - mpmath.fsum(Rf[k, i] * Rf[k, j] for k in range(i))) / Rf[i, i]
        J = mpmath.matrix(n, n)
        for j in range(n):
            alpha = Rf[j, j + 1] / Rf[j, j]
            if j > 0:
                alpha -= Rf[j - 1, j] / Rf[j - 1, j - 1]
            J[j, j] = alpha
            if j + 1 < n:
                beta = Rf[j + 1, j + 1] / Rf[j, j]
                J[j, j + 1] = J[j + 1, j] = beta
        nodes, vecs = mpmath.eigsy(J)
        atoms = [float(nodes[k]) for k in range(n)]
        weights = [float(sm[0] * vecs[0, k] ** 2) for k in range(n)]
    order = np.argsort(atoms)
    try:
        return LineMeasure(np.array(atoms)[order], np.array(weights)[order])
    except FmiError as exc:
        raise QuadratureError(f"quadrature rule is degenerate: {exc}") from exc
