import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmi.errors import FmiError, PoleError, SingularPointError
from fmi.instances import disk_points, random_disk_function, random_np_instance, random_stein_realization
from fmi.measures import CircleMeasure, DiskExtension, DiskHerglotz
from fmi.np_fmi import (
    NP_IDENTITIES,
    NpData,
    np_column,
    np_column_entries,
    np_corner,
    np_fmi,
    np_framing,
    np_identity,
    np_nonsingular,
    np_realization,
    np_schwarz_pick_equivalence,
    np_selector,
    np_stein_vector,
    np_subinequality,
    np_tfmi,
    np_transform,
    np_transform_entrywise,
    np_transform_reflected,
    np_transform_symmetry_residual,
    np_transform_via_column,
    stein_realization,
)
from fmi.numerics import check_psd, min_eigenvalue

ONE = DiskExtension(lambda z: 1.0 + 0j)
CAYLEY = DiskHerglotz(CircleMeasure([1.0], [2.0]))  # (1 + z) / (1 - z)
SINGLE = NpData([0.0], [1.0])
PAIR = NpData([0.0, 0.5], [1.0, 1.0])


# --- realization -------------------------------------------------------------

def test_single_node_realization():
    r = np_realization(SINGLE)
    np.testing.assert_array_equal(r.A, [[2]])
    np.testing.assert_array_equal(r.T, [[0]])
    np.testing.assert_array_equal(r.u, [[1]])
    np.testing.assert_array_equal(r.v, [[1]])
    assert r.fi_residual() == 0


def test_two_node_pick_matrix():
    np.testing.assert_allclose(np_realization(PAIR).A, [[2, 2], [2, 8 / 3]], atol=1e-15)


def test_imaginary_constant_values_give_zero_matrix():
    data = NpData([0.1, -0.3j, 0.5 + 0.2j], [0.4j] * 3)
    assert np.max(np.abs(np_realization(data).A)) == 0


@pytest.mark.parametrize("nodes,values", [
    ([1.0], [1.0]),
    ([1.5j], [1.0]),
    ([0.2, 0.2], [1.0, 2.0]),
    ([0.2, 0.3], [1.0]),
    ([], []),
    ([np.nan], [1.0]),
])
def test_invalid_data(nodes, values):
    with pytest.raises(FmiError):
        NpData(nodes, values)


# --- column, corner, assembled matrix ------------------------------------------

def test_column_vanishes_for_constant_solution():
    np.testing.assert_array_equal(np_column(ONE, np_realization(PAIR), 0.3j), np.zeros((2, 1)))


def test_column_divided_difference_value():
    col = np_column(CAYLEY, np_realization(SINGLE), 0.5)
    assert col[0, 0] == pytest.approx(4.0)


def test_column_at_node_rejected():
    with pytest.raises(PoleError):
        np_column(CAYLEY, np_realization(PAIR), 0.5)
    with pytest.raises(PoleError):
        np_column_entries(CAYLEY, PAIR, 0.5)


def test_column_forms_agree(rng):
    for _ in range(20):
        data, w = random_np_instance(rng, int(rng.integers(1, 8)))
        r = np_realization(data)
        for z in disk_points(rng, 5, data.nodes):
            np.testing.assert_allclose(np_column(w, r, z), np_column_entries(w, data, z), rtol=1e-12, atol=1e-12)


def test_corner_values():
    assert np_corner(ONE, 0) == pytest.approx(2.0)
    assert np_corner(CAYLEY, 0.5) == pytest.approx(8.0)


def test_single_node_fmi():
    F = np_fmi(ONE, np_realization(SINGLE), 0.5)
    np.testing.assert_allclose(F.matrix, [[2, 0], [0, 8 / 3]], atol=1e-15)
    assert check_psd(F.matrix).verdict
    assert F.size == 1 and F.corner == pytest.approx(8 / 3)


def test_solution_fmi_psd_on_random_points(rng):
    nodes = np.array([0.1 + 0.2j, -0.4, 0.3 - 0.5j])
    w = DiskHerglotz(CircleMeasure([1.0], [2.0]))
    r = np_realization(NpData(nodes, [w(z) for z in nodes]))
    for z in disk_points(rng, 100, nodes):
        assert min_eigenvalue(np_fmi(w, r, z).matrix) >= -1e-8


def test_perturbed_value_detected(rng):
    nodes = np.array([0.1 + 0.2j, -0.4, 0.3 - 0.5j])
    w = CAYLEY
    values = np.array([w(z) for z in nodes])
    values[0] += 1
    r = np_realization(NpData(nodes, values))
    worst = min(min_eigenvalue(np_fmi(w, r, z).matrix) for z in disk_points(rng, 400, nodes))
    assert worst < -1e-3


def test_subinequality_matches_selector_framing():
    data = NpData([0.1, -0.2j, 0.4], [1.0, 0.5 + 0.1j, 2.0])
    F = np_fmi(CAYLEY, np_realization(data), 0.3 + 0.3j)
    for k in range(1, 4):
        M = np_selector(3, k)
        np.testing.assert_array_equal(np_subinequality(F, k), M @ F.matrix @ M.T)
    with pytest.raises(IndexError):
        np_subinequality(F, 4)
    single = np_fmi(ONE, np_realization(SINGLE), 0.5)
    np.testing.assert_array_equal(np_subinequality(single, 1), single.matrix)


# --- transform ---------------------------------------------------------------

def test_transform_at_origin_is_half_data_matrix(rng):
    for _ in range(20):
        data, w = random_np_instance(rng, int(rng.integers(1, 8)))
        if np.min(np.abs(data.nodes)) < 1e-6:
            continue
        r = np_realization(data)
        np.testing.assert_allclose(np_transform(w, r, 0), r.A / 2, atol=1e-12)


def test_single_node_transform_is_one():
    r = np_realization(SINGLE)
    for z in (0.5, -0.3j, 0.2 + 0.6j):
        assert np_transform(ONE, r, z)[0, 0] == pytest.approx(1.0)
        assert np_transform_entrywise(ONE, SINGLE, z)[0, 0] == pytest.approx(1.0)


def test_transform_routes_agree(rng):
    for _ in range(30):
        data, w = random_np_instance(rng, int(rng.integers(1, 8)))
        r = np_realization(data)
        for z in disk_points(rng, 3, data.nodes):
            W = np_transform(w, r, z)
            scale = 1 + np.max(np.abs(W))
            assert np.max(np.abs(W - np_transform_reflected(w, r, z))) < 1e-10 * scale
            assert np.max(np.abs(W - np_transform_via_column(w, r, z))) < 1e-10 * scale
            assert np.max(np.abs(W - np_transform_entrywise(w, data, z))) < 1e-10 * scale


def test_transform_routes_agree_for_general_realizations(rng):
    for _ in range(30):
        r = random_stein_realization(rng, int(rng.integers(1, 6)))
        w = random_disk_function(rng)
        for z in disk_points(rng, 3, np.linalg.eigvals(r.T)):
            assert np_identity("transform_routes", r, w, z) < 1e-9 * (1 + np.max(np.abs(np_transform(w, r, z))))


def test_transform_symmetry(rng):
    data, w = random_np_instance(rng, 4)
    r = np_realization(data)
    for z in disk_points(rng, 10, data.nodes) + [0.3, 0.77]:
        assert np_transform_symmetry_residual(w, r, z) < 1e-10
    A = r.A.copy()
    A += 0.1 * rng.normal(size=A.shape)
    A = (A + A.T) / 2
    assert np_transform_symmetry_residual(w, r.with_A(A), 0.3 + 0.2j) > 1e-3


def test_stein_vector_cases():
    assert np_stein_vector(ONE, np_realization(SINGLE), 0.5)[0, 0] == 0
    data = NpData([0.2 + 0.1j, -0.5j], [CAYLEY(0.2 + 0.1j), CAYLEY(-0.5j)])
    near = np_stein_vector(CAYLEY, np_realization(data), 0.2 + 0.1j + 1e-6)
    assert np.all(np.isfinite(near)) and np.max(np.abs(near)) < 1e3


# --- singular points and framings -------------------------------------------

def test_nonsingular_points():
    nodes = [0.3, 0.5j]
    assert not np_nonsingular(0, nodes)
    assert not np_nonsingular(0.3, nodes)
    assert not np_nonsingular(1 / 0.3, nodes)
    assert not np_nonsingular(1j, nodes)
    assert np_nonsingular(0.3 + 0.2j, nodes)


def test_framing_at_origin_is_identity():
    np.testing.assert_array_equal(np_framing("M1", np_realization(PAIR), 0), np.eye(3))


def test_framing_diagonal_block():
    data = NpData([0.2, -0.4j], [1.0, 1.0])
    z = 0.3 + 0.1j
    M = np_framing("M1", np_realization(data), z)
    np.testing.assert_allclose(np.diag(M)[:2], 1 / (1 - np.conj(z) * data.nodes))
    np.testing.assert_allclose(M @ np.linalg.inv(M), np.eye(3), atol=1e-12)


def test_left_inverse_of_tall_framing(rng):
    data, _ = random_np_instance(rng, 4)
    r = np_realization(data)
    z = disk_points(rng, 1, data.nodes)[0]
    np.testing.assert_allclose(np_framing("N", r, z) @ np_framing("M2", r, z), np.eye(5), atol=1e-12)
    with pytest.raises(ValueError):
        np_framing("M3", r, z)


def test_tfmi_rejects_singular_points():
    r = np_realization(PAIR)
    with pytest.raises(SingularPointError):
        np_tfmi("I", ONE, r, 0)
    with pytest.raises(SingularPointError):
        np_tfmi("II", ONE, r, 0.5)


def test_tfmi2_single_node_example():
    res = np_tfmi("II", ONE, np_realization(SINGLE), 0.5)
    np.testing.assert_allclose(res.direct, [[2, 2], [2, 8 / 3]], atol=1e-14)
    assert res.residual < 1e-14
    assert check_psd(res.direct).verdict


def test_tfmi_paths_agree(rng):
    for _ in range(50):
        data, w = random_np_instance(rng, int(rng.integers(1, 8)))
        r = np_realization(data)
        z = disk_points(rng, 1, data.nodes)[0]
        for kind in ("I", "II"):
            assert np_tfmi(kind, w, r, z).residual < 1e-9


def test_congruence_preserves_positivity(rng):
    for _ in range(30):
        data, w = random_np_instance(rng, int(rng.integers(1, 6)))
        r = np_realization(data)
        z = disk_points(rng, 1, data.nodes)[0]
        F = np_fmi(w, r, z).matrix
        M = np_framing("M1", r, z)
        assert check_psd(F, 1e-8 * max(1, np.abs(F).sum(1).max())).verdict
        G = M @ F @ M.conj().T
        assert check_psd(G, 1e-8 * max(1, np.abs(G).sum(1).max())).verdict


# --- identity catalogue ------------------------------------------------------

@pytest.mark.parametrize("name", NP_IDENTITIES)
def test_identity_catalogue(name, rng):
    for _ in range(50):
        r = random_stein_realization(rng, int(rng.integers(1, 7)))
        w = random_disk_function(rng)
        z = disk_points(rng, 1, np.linalg.eigvals(r.T))[0]
        assert np_identity(name, r, w, z) < 1e-9 * (1 + np.max(np.abs(r.A)))


def test_reflected_fi_at_origin_is_fi(rng):
    r = random_stein_realization(rng, 3)
    assert np_identity("reflected_fi", r, None, 0) == pytest.approx(r.fi_residual(), abs=1e-15)


def test_broken_fi_is_detected():
    r = np_realization(NpData([0.2, -0.5j], [1.0, 0.3 + 0.2j]))
    A = r.A.copy()
    A[0, 0] += 1
    bad = r.with_A(A)
    z = 0.4 + 0.3j
    assert np_identity("reflected_fi", bad, None, z) > 1e-3
    assert np_identity("reflection_congruence", bad, CAYLEY, z) > 1e-3


def test_unknown_identity():
    with pytest.raises(ValueError):
        np_identity("nope", np_realization(SINGLE), ONE, 0.5)


# --- transform positivity ----------------------------------------------------

def _grid(m=51):
    xs = np.linspace(-0.98, 0.98, m)
    return [complex(x, y) for x in xs for y in xs if abs(complex(x, y)) < 0.99]


def test_schwarz_pick_for_solution(rng):
    data, w = random_np_instance(rng, 3)
    rep = np_schwarz_pick_equivalence(w, np_realization(data), disk_points(rng, 200, data.nodes))
    assert rep.verdict
    assert rep.details["transform_positive"] and rep.details["tfmi2_positive"]
    assert rep.details["transform_real_part_min"] >= -1e-8


def test_schwarz_pick_for_violated_interpolation():
    data = NpData([0.0, 0.5], [1.0, 2.0])
    rep = np_schwarz_pick_equivalence(ONE, np_realization(data), _grid())
    assert rep.verdict
    assert not rep.details["transform_positive"] and not rep.details["tfmi2_positive"]
    assert rep.details["skipped"] >= 1  # the node at the origin


def test_schwarz_pick_single_node_value():
    r = np_realization(SINGLE)
    W = np_transform(ONE, r, 0.5)
    assert min_eigenvalue(W + W.conj().T) == pytest.approx(2.0)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_fi_holds_for_random_data(n, seed):
    r = np.random.default_rng(seed)
    nodes = 0.8 * np.sqrt(r.uniform(size=n)) * np.exp(2j * np.pi * r.uniform(size=n))
    if n > 1 and np.min(np.abs(nodes[:, None] - nodes[None, :]) + np.eye(n)) < 1e-6:
        return
    data = NpData(nodes, r.normal(size=n) + 1j * r.normal(size=n))
    real = np_realization(data)
    assert real.fi_residual() <= 1e-10 * (1 + np.linalg.norm(real.A, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_stein_solver_satisfies_fi(n, seed):
    real = random_stein_realization(np.random.default_rng(seed), n)
    assert real.fi_residual() <= real.fi_tolerance()
    with pytest.raises(FmiError):
        stein_realization(2 * np.eye(n), real.u, real.v)
