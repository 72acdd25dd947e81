import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmi.errors import BoundaryError, FmiError, PoleError
from fmi.measures import (
    CircleMeasure,
    DiskExtension,
    DiskHerglotz,
    HalfPlaneNevanlinna,
    LineMeasure,
    growth_bound,
    moment,
    moment_tail,
    moments,
    positivity_probe,
    stieltjes_weight,
    symmetry_residual,
)


def test_single_atom_disk_function():
    # 2 delta at t = 1 gives (1 + z) / (1 - z)
    w = DiskHerglotz(CircleMeasure([1.0], [2.0]))
    assert w(0.5) == pytest.approx(3.0)
    assert w(0) == pytest.approx(1.0)


def test_disk_constant_shift():
    w = DiskHerglotz(CircleMeasure([1j], [1.0]), c=0.7)
    assert w(0).imag == pytest.approx(0.7)


def test_disk_boundary_rejected():
    w = DiskHerglotz(CircleMeasure([1.0], [1.0]))
    with pytest.raises(BoundaryError):
        w(1j)


def test_circle_atoms_validated():
    with pytest.raises(FmiError):
        CircleMeasure([0.5], [1.0])
    with pytest.raises(FmiError):
        CircleMeasure([1.0, 1.0], [1.0, 1.0])
    with pytest.raises(FmiError):
        CircleMeasure([1.0], [-1.0])
    with pytest.raises(FmiError):
        CircleMeasure([1.0, -1.0], [1.0])


def test_line_function_values():
    w = HalfPlaneNevanlinna(LineMeasure([0.0], [1.0]))
    assert w(1j) == pytest.approx(1j)
    with pytest.raises(PoleError):
        w(0.0)


def test_line_function_mpmath_branch():
    w = HalfPlaneNevanlinna(LineMeasure([1.0, -2.0], [0.25, 0.75]))
    with mpmath.workdps(50):
        val = w(mpmath.mpc(0.3, 2.0))
        assert isinstance(val, mpmath.mpc)
        assert complex(val) == pytest.approx(w(0.3 + 2.0j))


def test_empty_line_measure_is_zero():
    w = HalfPlaneNevanlinna(LineMeasure([], []))
    assert w(1j) == 0


def test_moments_of_symmetric_measure():
    sigma = LineMeasure([-1.0, 1.0], [0.5, 0.5])
    assert moments(sigma, 5) == [1.0, 0.0, 1.0, 0.0, 1.0]
    with pytest.raises(ValueError):
        moment(sigma, -1)


def test_moment_tail_decay(rng):
    sigma = LineMeasure([-2.0, 0.5, 3.0], [0.25, 0.5, 0.25])
    w = HalfPlaneNevanlinna(sigma)
    s = moments(sigma, 6)
    for k in range(6):
        z = 0.4 + 1.7j
        expected = sum(r * a**k / (a - z) for a, r in zip(sigma.atoms, sigma.weights))
        assert moment_tail(w(z), z, k, s[:k]) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        moment_tail(w(1j), 1j, 3, s[:2])


def test_symmetry_and_positivity_dispatch():
    wd = DiskHerglotz(CircleMeasure([1.0, -1j], [0.3, 0.6]), c=0.2)
    wl = HalfPlaneNevanlinna(LineMeasure([0.5], [2.0]))
    assert symmetry_residual(wd, 0.3 + 0.2j) < 1e-14
    assert symmetry_residual(wl, 0.3 + 0.2j) < 1e-14
    assert positivity_probe(wd, 0.3 + 0.2j) >= 0
    assert positivity_probe(wl, 0.3 + 0.2j) >= 0
    with pytest.raises(ValueError):
        symmetry_residual(lambda z: z, 0.5)
    assert symmetry_residual(lambda z: 1j * z, 0.5j, domain="halfplane") > 0.5


def test_disk_extension_reflects():
    w = DiskExtension(lambda z: 1.0 + 0j)
    assert w(0.5) == 1.0
    assert w(2.0) == -1.0
    assert symmetry_residual(w, 0.3 + 0.1j) == 0


def test_stieltjes_weight_recovers_atom():
    w = HalfPlaneNevanlinna(LineMeasure([-1.0, 2.0], [0.3, 0.7]))
    est = stieltjes_weight(w, 2.0, [1e-2, 1e-4, 1e-6, 1e-8])
    assert est.converged
    assert est.weight == pytest.approx(0.7, abs=1e-6)
    with pytest.raises(ValueError):
        stieltjes_weight(w, 2.0, [1e-2, 1e-1, 1e-3])


def test_growth_bound_tends_to_mass():
    w = HalfPlaneNevanlinna(LineMeasure([-1.0, 2.0], [0.3, 0.7]))
    assert growth_bound(w) == pytest.approx(1.0, rel=1e-6)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_disk_class_properties(k, seed):
    r = np.random.default_rng(seed)
    m = CircleMeasure(np.exp(1j * np.sort(r.choice(360, k, replace=False)) * math.pi / 180), r.uniform(0.1, 1, k))
    w = DiskHerglotz(m, float(r.uniform(-1, 1)))
    z = complex(0.95 * math.sqrt(r.uniform()) * np.exp(2j * math.pi * r.uniform()))
    assert complex(w(z)).real >= -1e-12
    assert symmetry_residual(w, z) <= 1e-10 * (1 + abs(w(z)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_line_class_properties(k, seed):
    r = np.random.default_rng(seed)
    w = HalfPlaneNevanlinna(LineMeasure(np.sort(r.choice(np.arange(-10, 11) / 2, k, replace=False)),
                                        r.uniform(0.1, 1, k)))
    z = complex(r.uniform(-5, 5), r.uniform(0.01, 5))
    assert complex(w(z)).imag >= 0
    assert symmetry_residual(w, z) <= 1e-12
    assert growth_bound(w) <= w.measure.mass * (1 + 1e-6)
