"""Finite atomic measures and the function classes they generate.

A circle measure with a real constant ``c`` gives a Caratheodory function

    w(z) = i c + 1/2 sum_j rho_j (t_j + z) / (t_j - z),

holomorphic off the unit circle, with ``w(z) = -conj(w(1/conj z))`` and
nonnegative real part inside the disk. A line measure gives the Cauchy
transform

    w(z) = sum_j rho_j / (lambda_j - z),

a Nevanlinna function of the upper half-plane with ``w(z) = conj(w(conj z))``
and bounded ``y |w(iy)|``.

Only atomic measures are supported, so every integral is a finite sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import mpmath
import numpy as np

from .errors import BoundaryError, FmiError, PoleError

BOUNDARY_TOL = 1e-12
POLE_TOL = 1e-12
ATOM_SEPARATION = 1e-9


def _check_weights(weights: np.ndarray, count: int) -> None:
    if weights.shape != (count,):
        raise FmiError(f"expected {count} weights, got {weights.shape[0]}")
    if not np.all(np.isfinite(weights)):
        raise FmiError("weights must be finite")
    if np.any(weights < 0):
        raise FmiError("weights must be nonnegative")


def _check_separation(atoms: np.ndarray) -> None:
    if atoms.size < 2:
        return
    gaps = np.abs(atoms[:, None] - atoms[None, :])
    np.fill_diagonal(gaps, np.inf)
    if gaps.min() <= ATOM_SEPARATION:
        raise FmiError("atoms must be pairwise distinct")


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    """Nonnegative atomic measure on the unit circle."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.atleast_1d(np.asarray(self.atoms, dtype=complex))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if atoms.ndim != 1:
            raise FmiError("atoms must be a flat sequence")
        _check_weights(weights, atoms.size)
        if np.any(np.abs(np.abs(atoms) - 1.0) > BOUNDARY_TOL):
            raise FmiError("circle atoms must have modulus one")
        _check_separation(atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def mass(self) -> float:
        return math.fsum(self.weights)


@dataclass(frozen=True, eq=False)
class LineMeasure:
    """Nonnegative atomic measure on the real line."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.atleast_1d(np.asarray(self.atoms, dtype=float))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if atoms.ndim != 1:
            raise FmiError("atoms must be a flat sequence")
        if not np.all(np.isfinite(atoms)):
            raise FmiError("atoms must be finite")
        _check_weights(weights, atoms.size)
        _check_separation(atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def mass(self) -> float:
        return math.fsum(self.weights)


@dataclass(frozen=True, eq=False)
class DiskHerglotz:
    """Caratheodory function of a circle measure plus an imaginary constant ``ic``."""

    measure: CircleMeasure
    c: float = 0.0
    domain: str = field(default="disk", init=False)

    def __call__(self, z: complex) -> complex:
        return eval_disk(self, z)


@dataclass(frozen=True, eq=False)
class HalfPlaneNevanlinna:
    """Cauchy transform of a line measure."""

    measure: LineMeasure
    domain: str = field(default="halfplane", init=False)

    def __call__(self, z):
        return eval_line(self, z)


class DiskExtension:
    """Wrap a function given inside the disk and extend it by reflection.

    Outside the disk the value is ``-conj(f(1/conj z))``, so the result obeys
    the disk symmetry whatever ``f`` is. Useful for test functions such as a
    constant that have no convenient atomic representation.
    """

    domain = "disk"

    def __init__(self, inner: Callable[[complex], complex]):
        self.inner = inner

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        r = abs(z)
        if abs(r - 1.0) <= BOUNDARY_TOL:
            raise BoundaryError(f"|z| = 1 at z = {z}")
        if r < 1.0:
            return complex(self.inner(z))
        return -complex(np.conj(self.inner(1.0 / np.conj(z))))


def eval_disk(w: DiskHerglotz, z: complex) -> complex:
    z = complex(z)
    if abs(abs(z) - 1.0) <= BOUNDARY_TOL:
        raise BoundaryError(f"|z| = 1 at z = {z}")
    t, rho = w.measure.atoms, w.measure.weights
    return 1j * w.c + 0.5 * complex(np.sum(rho * (t + z) / (t - z)))


def eval_line(w: HalfPlaneNevanlinna, z):
    """Evaluate ``sum rho_j / (lambda_j - z)``.

    ``mpmath`` arguments are evaluated in the current mpmath precision, which
    the asymptotic estimates need (they cancel many leading digits).
    """
    lam, rho = w.measure.atoms, w.measure.weights
    if isinstance(z, (mpmath.mpc, mpmath.mpf)):
        z = mpmath.mpc(z)
        total = mpmath.mpc(0)
        for a, r in zip(lam, rho):
            d = mpmath.mpf(float(a)) - z
            if abs(d) <= POLE_TOL:
                raise PoleError(f"z = {z} hits atom {a}")
            total += mpmath.mpf(float(r)) / d
        return total
    z = complex(z)
    if lam.size and np.min(np.abs(lam - z)) <= POLE_TOL:
        raise PoleError(f"z = {z} hits an atom")
    return complex(np.sum(rho / (lam - z)))


def moment(sigma: LineMeasure, k: int) -> float:
    """Power moment ``sum rho_j lambda_j**k``."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    return math.fsum(float(r) * float(a) ** k for a, r in zip(sigma.atoms, sigma.weights))


def moments(sigma: LineMeasure, count: int) -> list[float]:
    return [moment(sigma, k) for k in range(count)]


def moment_tail(w_value, z, k: int, s: Sequence):
    """``z**k * w + sum_{j<k} z**(k-1-j) * s[j]``, evaluated by Horner's rule.

    For the Cauchy transform of a measure with moments ``s`` this equals
    ``sum rho_j lambda_j**k / (lambda_j - z)``; it decays like ``1/z`` along
    the imaginary axis exactly when the first ``k`` moments match. Works with
    Python complex numbers and mpmath numbers alike.
    """
    if len(s) != k:
        raise ValueError(f"need exactly {k} moments, got {len(s)}")
    acc = w_value
    for sj in s:
        acc = acc * z + sj
    return acc


def _domain(w, domain: str | None) -> str:
    d = domain or getattr(w, "domain", None)
    if d not in ("disk", "halfplane"):
        raise ValueError("cannot tell the function class; pass domain='disk' or 'halfplane'")
    return d


def symmetry_residual(w, z: complex, domain: str | None = None) -> float:
    """Distance from the class symmetry at ``z``.

    Disk: ``|w(z) + conj(w(1/conj z))|``. Half-plane: ``|w(z) - conj(w(conj z))|``.
    """
    z = complex(z)
    if _domain(w, domain) == "disk":
        return abs(w(z) + np.conj(w(1.0 / np.conj(z))))
    return abs(w(z) - np.conj(w(np.conj(z))))


def positivity_probe(w, z: complex, domain: str | None = None) -> float:
    """The kernel value whose sign the class positivity condition constrains.

    Disk: ``2 Re w(z) / (1 - |z|^2)``. Half-plane: ``Im w(z) / Im z``.
    """
    z = complex(z)
    if _domain(w, domain) == "disk":
        if abs(abs(z) - 1.0) <= BOUNDARY_TOL:
            raise BoundaryError(f"|z| = 1 at z = {z}")
        return 2.0 * complex(w(z)).real / (1.0 - abs(z) ** 2)
    if abs(z.imag) <= BOUNDARY_TOL:
        raise BoundaryError(f"z = {z} is on the real axis")
    return complex(w(z)).imag / z.imag


class StieltjesEstimate(NamedTuple):
    weight: float
    converged: bool
    estimates: tuple[float, ...]


def stieltjes_weight(w, lam0: float, eps_schedule: Sequence[float]) -> StieltjesEstimate:
    """Point mass at ``lam0`` from ``eps * Im w(lam0 + i eps)`` as ``eps`` shrinks.

    The value at the smallest ``eps`` is returned; ``converged`` is false when
    the last two estimates differ by more than ``1e-6 * max(1, |weight|)``.
    """
    eps = [float(e) for e in eps_schedule]
    if len(eps) < 3:
        raise ValueError("need at least three values of eps")
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps schedule must be positive and strictly decreasing")
    est = tuple(e * complex(w(complex(lam0, e))).imag for e in eps)
    weight = est[-1]
    converged = abs(est[-1] - est[-2]) <= 1e-6 * max(1.0, abs(weight))
    return StieltjesEstimate(weight, converged, est)


GROWTH_LADDER = tuple(10.0 ** p for p in range(1, 7))


def growth_bound(w: HalfPlaneNevanlinna, ladder: Sequence[float] = GROWTH_LADDER) -> float:
    """``max y |w(iy)|`` over the ladder; tends to the total mass for atomic measures."""
    return max(y * abs(w(1j * y)) for y in ladder)
