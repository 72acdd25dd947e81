"""Seeded random instances: measure-generated problems, generic realizations, evaluation grids."""
from __future__ import annotations

import numpy as np

from .hamburger_fmi import MomentData, hankel_matrix, shift_matrix
from .measures import CircleMeasure, DiskHerglotz, HalfPlaneNevanlinna, LineMeasure, moments
from .np_fmi import NpData, np_nonsingular, stein_realization
from .realization import Realization

NODE_RADIUS = 0.8
NODE_SEPARATION = 0.05
ATOM_RANGE = 5
WEIGHT_DENOMINATOR = 16


def _separated_points(rng: np.random.Generator, count: int, radius: float, gap: float) -> np.ndarray:
    pts: list[complex] = []
    while len(pts) < count:
        r = radius * np.sqrt(rng.uniform())
        z = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if all(abs(z - p) >= gap for p in pts):
            pts.append(z)
    return np.array(pts)


def random_circle_measure(rng: np.random.Generator, atoms: int) -> CircleMeasure:
    angles = np.sort(rng.choice(3600, size=atoms, replace=False)) * (2 * np.pi / 3600)
    return CircleMeasure(np.exp(1j * angles), rng.uniform(0.1, 1.0, atoms))


def random_np_instance(rng: np.random.Generator, n: int) -> tuple[NpData, DiskHerglotz]:
    """Nodes in ``|z| <= 0.8`` and values ``w(z_k)`` of a random Caratheodory function."""
    if n < 1:
        raise ValueError("n must be at least 1")
    nodes = _separated_points(rng, n, NODE_RADIUS, NODE_SEPARATION)
    k = int(rng.integers(1, n + 3))
    w = DiskHerglotz(random_circle_measure(rng, k), float(rng.uniform(-1.0, 1.0)))
    return NpData(nodes, np.array([w(z) for z in nodes])), w


def random_line_measure(rng: np.random.Generator, atoms: int) -> LineMeasure:
    """Half-integer atoms in ``[-5, 5]`` with weights in multiples of 1/16.

    Every moment of such a measure up to order 12 is exactly representable,
    so Hankel ranks and surpluses are exact.
    """
    grid = np.arange(-2 * ATOM_RANGE, 2 * ATOM_RANGE + 1) / 2.0
    lam = np.sort(rng.choice(grid, size=atoms, replace=False))
    rho = rng.integers(1, WEIGHT_DENOMINATOR + 1, size=atoms) / WEIGHT_DENOMINATOR
    return LineMeasure(lam, rho)


def random_hamburger_instance(rng: np.random.Generator, n: int, surplus: float = 0.0
                              ) -> tuple[MomentData, LineMeasure]:
    """Moments ``s_0 .. s_2n`` of a random measure with ``n`` to ``n + 2`` atoms, top moment raised by ``surplus``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if surplus < 0:
        raise ValueError("surplus must be nonnegative")
    sigma = random_line_measure(rng, int(rng.integers(n, n + 3)))
    s = np.array(moments(sigma, 2 * n + 1))
    s[2 * n] += surplus
    return MomentData(s), sigma


def random_disk_function(rng: np.random.Generator, atoms: int = 3) -> DiskHerglotz:
    return DiskHerglotz(random_circle_measure(rng, atoms), float(rng.uniform(-1.0, 1.0)))


def random_line_function(rng: np.random.Generator, atoms: int = 3) -> HalfPlaneNevanlinna:
    return HalfPlaneNevanlinna(LineMeasure(np.sort(rng.uniform(-3, 3, atoms)), rng.uniform(0.1, 1.0, atoms)))


def random_stein_realization(rng: np.random.Generator, n: int) -> Realization:
    """Generic (non-diagonal) disk realization: random ``T`` of spectral radius 0.8, random ``u``, ``v``."""
    T = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    T *= 0.8 / max(np.max(np.abs(np.linalg.eigvals(T))), 1e-12)
    u = rng.normal(size=(n, 1)) + 1j * rng.normal(size=(n, 1))
    v = rng.normal(size=(n, 1)) + 1j * rng.normal(size=(n, 1))
    return stein_realization(T, u, v)


def random_moment_realization(rng: np.random.Generator, n: int) -> Realization:
    """Hankel realization of arbitrary real numbers (not necessarily moments)."""
    s = rng.normal(size=2 * n + 1)
    v = np.zeros((n + 1, 1))
    v[1:, 0] = -s[:n]
    u = np.zeros((n + 1, 1))
    u[0, 0] = 1.0
    return Realization(hankel_matrix(s, n + 1), shift_matrix(n + 1), u, v, "halfplane")


def disk_points(rng: np.random.Generator, count: int, nodes=(), radius: float = 0.99) -> list[complex]:
    """Uniform points in ``|z| < radius`` avoiding the singular set of ``nodes``."""
    out: list[complex] = []
    while len(out) < count:
        z = complex(radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        if np_nonsingular(z, nodes):
            out.append(z)
    return out


def node_approach_points(nodes, rng: np.random.Generator, distances=(1e-2, 1e-3, 1e-4)) -> list[complex]:
    """Points at the given distances from each node, in random directions."""
    out = []
    for zk in nodes:
        for d in distances:
            while True:
                z = complex(zk + d * np.exp(2j * np.pi * rng.uniform()))
                if abs(z) < 1 and np_nonsingular(z, nodes):
                    out.append(z)
                    break
    return out


def box_points(rng: np.random.Generator, count: int, min_imag: float = 1e-6) -> list[complex]:
    """Uniform points with ``Re in [-5, 5]`` and ``Im in (0, 5]``."""
    out: list[complex] = []
    while len(out) < count:
        z = complex(rng.uniform(-5.0, 5.0), 5.0 * (1.0 - rng.uniform()))
        if z.imag > min_imag:
            out.append(z)
    return out
