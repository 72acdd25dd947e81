"""Report suites run by the command line: grid checks, identity sweeps, extraction."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamburger_fmi import (
    DEFAULT_LADDER,
    H_IDENTITIES,
    MomentData,
    extract_moments,
    h_fmi,
    h_identity_sides,
    h_tfmi,
    hankel_realization,
)
from .instances import (
    box_points,
    disk_points,
    node_approach_points,
    random_disk_function,
    random_line_function,
    random_moment_realization,
    random_stein_realization,
)
from .measures import LineMeasure
from .np_fmi import (
    NP_IDENTITIES,
    NpData,
    np_fmi,
    np_identity_sides,
    np_realization,
    np_schwarz_pick_equivalence,
    np_tfmi,
)
from .numerics import check_psd, matrix_scale, scaled_residual
from .realization import Realization
from .reports import CheckReport

#: Grid points on which the identity catalogue is re-checked inside ``check``.
IDENTITY_POINTS = 10


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-9
    grid_size: int = 100
    seed: int = 0
    report_format: str = "json"
    y_ladder: tuple[float, ...] = DEFAULT_LADDER

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.grid_size < 1:
            raise ValueError("grid size must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.report_format not in ("json", "text"):
            raise ValueError("report format must be json or text")
        if not self.y_ladder or any(y <= 0 for y in self.y_ladder):
            raise ValueError("y ladder must be nonempty and positive")


class _Worst:
    """Running minimum of eigenvalues (relative to tolerance) over grid points."""

    def __init__(self, name: str):
        self.name = name
        self.ratio = np.inf
        self.lam = None
        self.point = None
        self.count = 0

    def add(self, matrix: np.ndarray, z: complex, tol: float) -> None:
        t = tol * matrix_scale(matrix)
        rep = check_psd(matrix, t)
        self.count += 1
        ratio = rep.min_eigenvalue / t
        if rep.hermitian_defect > t:
            ratio = -np.inf
        if ratio < self.ratio:
            self.ratio, self.lam, self.point = ratio, rep.min_eigenvalue, z

    def report(self) -> CheckReport:
        return CheckReport(self.name, bool(self.ratio >= -1.0), min_eigenvalue=self.lam,
                           witness_point=self.point, details={"points": self.count})


class _WorstResidual:
    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.value = 0.0
        self.point = None
        self.count = 0

    def add(self, value: float, z: complex) -> None:
        self.count += 1
        if not value <= self.value:  # also catches nan
            self.value, self.point = value, z

    def report(self) -> CheckReport:
        return CheckReport(self.name, bool(self.value <= self.tol), residual=self.value,
                           witness_point=self.point, details={"evaluations": self.count})


def _fi_report(real: Realization) -> CheckReport:
    res = real.fi_residual()
    tol = real.fi_tolerance()
    return CheckReport("fundamental_identity", res <= tol, residual=res, details={"tolerance": tol})


def _data_matrix_report(real: Realization, tol: float) -> CheckReport:
    rep = check_psd(real.A, tol * matrix_scale(real.A))
    return CheckReport("data_matrix_psd", rep.verdict, min_eigenvalue=rep.min_eigenvalue)


def check_np(data: NpData, w, config: RunConfig) -> list[CheckReport]:
    rng = np.random.default_rng(config.seed)
    real = np_realization(data)
    grid = disk_points(rng, config.grid_size, data.nodes) + node_approach_points(data.nodes, rng)
    tol = config.tol
    reports = [_fi_report(real), _data_matrix_report(real, tol)]

    gaps = np.abs(np.array([w(z) for z in data.nodes]) - data.values)
    k = int(np.argmax(gaps))
    reports.append(CheckReport(
        "interpolation", bool(gaps[k] <= 1e-10 * max(1.0, abs(data.values[k]))),
        residual=float(gaps[k]), witness_point=complex(data.nodes[k]),
    ))

    fmi = _Worst("fmi_psd")
    tf = {kind: _Worst(f"tfmi_{kind}_psd") for kind in ("I", "II")}
    paths = {kind: _WorstResidual(f"tfmi_{kind}_paths", tol) for kind in ("I", "II")}
    idents = {name: _WorstResidual(f"identity:{name}", tol) for name in NP_IDENTITIES}
    for i, z in enumerate(grid):
        fmi.add(np_fmi(w, real, z).matrix, z, tol)
        for kind in ("I", "II"):
            res = np_tfmi(kind, w, real, z)
            tf[kind].add(res.direct, z, tol)
            paths[kind].add(res.residual, z)
        if i < IDENTITY_POINTS:
            for name, acc in idents.items():
                acc.add(scaled_residual(*np_identity_sides(name, real, w, z)), z)
    reports.append(fmi.report())
    reports += [acc.report() for acc in tf.values()]
    reports += [acc.report() for acc in paths.values()]
    reports += [acc.report() for acc in idents.values()]
    reports.append(np_schwarz_pick_equivalence(w, real, grid))
    return reports


def check_hamburger(data: MomentData, w, config: RunConfig) -> list[CheckReport]:
    rng = np.random.default_rng(config.seed)
    real = hankel_realization(data)
    grid = box_points(rng, config.grid_size)
    tol = config.tol
    reports = [_fi_report(real), _data_matrix_report(real, tol)]

    fmi = _Worst("fmi_psd")
    kinds = ("I", "II", "truncated")
    tf = {kind: _Worst(f"tfmi_{kind}_psd") for kind in kinds}
    paths = {kind: _WorstResidual(f"tfmi_{kind}_paths", tol) for kind in kinds}
    idents = {name: _WorstResidual(f"identity:{name}", tol) for name in H_IDENTITIES}
    for i, z in enumerate(grid):
        fmi.add(h_fmi(w, real, z).matrix, z, tol)
        for kind in kinds:
            res = h_tfmi(kind, w, real, z)
            tf[kind].add(res.direct, z, tol)
            paths[kind].add(res.residual, z)
        if i < IDENTITY_POINTS:
            for name, acc in idents.items():
                acc.add(scaled_residual(*h_identity_sides(name, real, w, z)), z)
    reports.append(fmi.report())
    reports += [acc.report() for acc in tf.values()]
    reports += [acc.report() for acc in paths.values()]
    reports += [acc.report() for acc in idents.values()]
    reports += extraction_reports(w.measure, data, config)
    return reports


def extraction_reports(sigma: LineMeasure, data: MomentData, config: RunConfig) -> list[CheckReport]:
    ext = extract_moments(sigma, data, config.y_ladder)
    details = {
        "rho": ext.rho,
        "asymptotic_s2n": ext.asymptotic_s2n,
        "ladder_converged": ext.ladder_converged,
        "ladder_slow": ext.ladder_slow,
    }
    return [CheckReport(f"extract:{name}", ok, details=details) for name, ok in sorted(ext.verdicts.items())]


def identity_sweep(problem: str, trials: int, config: RunConfig, points: int = 10,
                   break_fi: bool = False) -> list[CheckReport]:
    """Worst scaled residual of every catalogued identity over random realizations.

    With ``break_fi`` the data matrix of every realization is shifted by
    ``e_0 e_0*`` so the fundamental identity fails, as a negative control.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(config.seed)
    if problem == "np":
        names, sides = NP_IDENTITIES, np_identity_sides
    elif problem == "hamburger":
        names, sides = H_IDENTITIES, h_identity_sides
    else:
        raise ValueError(f"unknown problem kind {problem!r}")
    worst = {name: _WorstResidual(f"identity:{name}", config.tol) for name in names}
    fi = _WorstResidual("fundamental_identity", config.tol)
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        if problem == "np":
            real = random_stein_realization(rng, n)
            w = random_disk_function(rng)
            pts = disk_points(rng, points, np.linalg.eigvals(real.T))
        else:
            real = random_moment_realization(rng, n)
            w = random_line_function(rng)
            pts = box_points(rng, points)
        if break_fi:
            A = real.A.copy()
            A[0, 0] += 1.0
            real = real.with_A(A)
        lhs, rhs = real.fi_sides()
        fi.add(scaled_residual(lhs, rhs), None)
        for z in pts:
            for name in names:
                worst[name].add(scaled_residual(*sides(name, real, w, z)), z)
    return [fi.report()] + [acc.report() for acc in worst.values()]

