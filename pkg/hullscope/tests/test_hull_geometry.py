"""Test hull projection, membership, diameters and nearest neighbours."""

import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

import hullscope.settings
from hullscope.app import worker_pool
from hullscope.exceptions import ArgumentException, DegenerateDirectionException
from hullscope.hull_geometry import (
    batch_project,
    classify_membership,
    default_solver_config,
    diameter_exact,
    diameter_heuristic,
    direction_to_hull,
    lmo,
    nearest_neighbor_distances,
    project_onto_hull,
    reference_scale,
    support_labels,
)
from hullscope.models import MembershipStatus, PointSet, ProjectionResult, SolverConfig

TIGHT = SolverConfig(gap_tol=1e-13, max_iters=20000, record_trace=True)


def test_lmo():
    """Test the minimiser of the inner product, lowest index on ties."""
    refs = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    cases = [
        ((1.0, 1.0), 0),
        ((-1.0, 0.0), 1),
        ((0.0, -1.0), 2),
        ((-1.0, -1.0), 1),
        ((1.0, 0.0), 0),
        ((0.0, 0.0), 0),
    ]
    for grad, expected in cases:
        assert lmo(refs, grad) == expected
    with pytest.raises(ArgumentException):
        lmo(refs, (1.0, 2.0, 3.0))


def test_project_segment():
    result = project_onto_hull([[0.0, 0.0], [2.0, 0.0]], [1.0, 1.0], TIGHT)
    assert np.allclose(result.projection, [1.0, 0.0])
    assert result.dist_upper == pytest.approx(1.0)
    assert result.converged
    assert np.allclose(result.coeffs(), [0.5, 0.5])


def test_project_triangle(triangle):
    """Test projections onto an edge, a vertex and the interior."""
    cases = [
        ((1.0, 1.0), (0.5, 0.5), math.sqrt(0.5)),
        ((0.0, 2.0), (0.0, 1.0), 1.0),
        ((-1.0, -1.0), (0.0, 0.0), math.sqrt(2.0)),
        ((0.25, 0.25), (0.25, 0.25), 0.0),
    ]
    for query, projection, distance in cases:
        result = project_onto_hull(triangle, query, TIGHT)
        assert np.allclose(result.projection, projection, atol=1e-6)
        assert result.dist_upper == pytest.approx(distance, abs=1e-6)
        assert result.dist_lower <= result.dist_upper


def test_project_vertex_is_exact(triangle):
    result = project_onto_hull(triangle, [1.0, 0.0], TIGHT)
    assert result.dist_upper == 0.0
    assert result.dist_lower == 0.0
    assert result.iters == 0
    assert result.indices.tolist() == [1]
    assert result.support.tolist() == [1]


def test_project_against_brute_force(rng, hull_distance_oracle):
    """Test the certified interval brackets an exhaustive face search."""
    for _ in range(200):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(2, 7))
        refs = rng.normal(size=(n, d))
        query = 2.0 * rng.normal(size=d)
        result = project_onto_hull(refs, query, TIGHT)
        expected = hull_distance_oracle(refs, query)
        assert result.converged
        assert result.dist_lower - 1e-9 <= expected <= result.dist_upper + 1e-9
        if expected > 1e-4:
            assert abs(result.dist_upper - expected) <= 1e-8
        else:
            assert result.dist_upper <= expected + 1e-6

        coefficients = result.coeffs()
        assert np.all(coefficients >= 0.0)
        assert coefficients.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(coefficients @ refs, result.projection, atol=1e-9)

        trace = np.array(result.objective_trace)
        assert np.all(np.diff(trace) <= 1e-10 * max(1.0, trace[0]))


def test_project_equivariance(rng):
    """Test distances follow translations and scalings of the whole problem."""
    refs = rng.normal(size=(12, 4))
    query = 3.0 * rng.normal(size=4)
    base = project_onto_hull(refs, query, TIGHT).dist_upper
    shift = rng.normal(size=4) * 10.0
    shifted = project_onto_hull(refs + shift, query + shift, TIGHT).dist_upper
    assert shifted == pytest.approx(base, abs=1e-6)
    scaled = project_onto_hull(refs * 7.0, query * 7.0, SolverConfig(
        gap_tol=1e-13 * 49.0, max_iters=20000)).dist_upper
    assert scaled == pytest.approx(7.0 * base, abs=1e-5)


def test_projection_matches_coefficients_with_repeated_rows(rng):
    """Every exit recomputes the projection from the coefficients."""
    refs = np.repeat(rng.normal(size=(4, 3)), 3, axis=0)
    config = SolverConfig(gap_tol=1e-13, max_iters=20000)
    for query in 3.0 * rng.normal(size=(20, 3)):
        result = project_onto_hull(refs, query, config)
        assert np.allclose(result.coeffs() @ refs, result.projection, rtol=0.0, atol=1e-10)
        assert result.dist_upper == pytest.approx(
            float(np.linalg.norm(result.projection - query)), abs=1e-12)


def test_convex_combination_is_inside(rng):
    refs = rng.normal(size=(20, 6))
    weights = rng.dirichlet(np.ones(20))
    result = project_onto_hull(refs, weights @ refs, TIGHT)
    assert result.dist_upper <= 1e-6
    membership = classify_membership(result, reference_scale(refs), TIGHT)
    assert membership.status is MembershipStatus.INSIDE


def test_project_iteration_limit(rng):
    """A run cut short still brackets the distance."""
    refs = rng.normal(size=(30, 8))
    query = 4.0 * rng.normal(size=8)
    short = project_onto_hull(refs, query, SolverConfig(gap_tol=1e-13, max_iters=1))
    full = project_onto_hull(refs, query, TIGHT)
    assert short.iters <= 1
    assert short.dist_lower - 1e-9 <= full.dist_upper <= short.dist_upper + 1e-9


def test_batch_project_order_and_threads(rng):
    """Test results come back in input order for any thread count."""
    refs = rng.normal(size=(15, 5))
    queries = 2.0 * rng.normal(size=(9, 5))
    serial = batch_project(refs, queries, TIGHT)
    with worker_pool(4) as executor:
        threaded = batch_project(refs, queries, TIGHT, executor)
    assert [result.dist_upper for result in serial] \
        == [result.dist_upper for result in threaded]
    for query, result in zip(queries, serial):
        assert result.dist_upper == project_onto_hull(refs, query, TIGHT).dist_upper


def test_batch_project_edge_cases(triangle):
    assert batch_project(triangle, np.zeros((0, 2)), TIGHT) == []
    with pytest.raises(ArgumentException):
        batch_project(triangle, np.zeros((3, 4)), TIGHT)


def test_direction_to_hull(triangle):
    scale = reference_scale(triangle)
    query = np.array([0.0, 2.0])
    result = project_onto_hull(triangle, query, TIGHT)
    direction = direction_to_hull(result, query, scale)
    assert np.allclose(direction, [0.0, 1.0])
    assert np.linalg.norm(direction) == pytest.approx(1.0, abs=1e-9)
    vertex = np.array([1.0, 0.0])
    with pytest.raises(DegenerateDirectionException):
        direction_to_hull(project_onto_hull(triangle, vertex, TIGHT), vertex, scale)
    with pytest.raises(ArgumentException):
        direction_to_hull(result, query, 0.0)


def test_direction_to_hull_interior_query(triangle):
    """An interior point that is not a vertex stops short of distance zero."""
    query = np.array([0.25, 0.3])
    config = default_solver_config(triangle)
    result = project_onto_hull(triangle, query, config)
    with pytest.raises(DegenerateDirectionException):
        direction_to_hull(result, query, reference_scale(triangle), config.inside_tol)
    with pytest.raises(DegenerateDirectionException):
        direction_to_hull(result, query, reference_scale(triangle))


def test_classify_membership(triangle):
    """Test the three outcomes of the certified interval."""
    inside = project_onto_hull(triangle, [0.2, 0.2], TIGHT)
    outside = project_onto_hull(triangle, [5.0, 5.0], TIGHT)
    assert classify_membership(inside, 1.0, TIGHT).status is MembershipStatus.INSIDE
    assert classify_membership(outside, 1.0, TIGHT).status is MembershipStatus.OUTSIDE
    uncertain = ProjectionResult(
        indices=np.array([0]), weights=np.array([1.0]), projection=np.zeros(2),
        dist_upper=2e-4, dist_lower=5e-5, gap=1e-3, iters=1, converged=False,
        support=np.array([0]), n_refs=3)
    assert classify_membership(uncertain, 1.0, TIGHT).status \
        is MembershipStatus.UNCERTAIN
    with pytest.raises(ArgumentException):
        classify_membership(inside, 0.0, TIGHT)


def test_support_labels():
    refs = PointSet([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [0, 1, 1])
    result = project_onto_hull(refs, [1.0, 1.0], TIGHT)
    labels = support_labels(result, refs, query_label=1)
    assert labels.labels == [1, 1]
    assert labels.label_mass == {1: pytest.approx(1.0)}
    assert labels.majority_label == 1
    assert labels.agrees is True
    assert support_labels(result, refs, query_label=0).agrees is False
    with pytest.raises(ArgumentException):
        support_labels(result, PointSet(refs.data))


def test_diameter_exact(unit_square, rng):
    assert diameter_exact([[0.0, 0.0], [3.0, 4.0]]) == pytest.approx(5.0)
    assert diameter_exact(unit_square) == pytest.approx(math.sqrt(2.0))
    points = rng.normal(size=(500, 5))
    assert diameter_exact(points) == pytest.approx(float(pdist(points).max()), rel=1e-12)
    with pytest.raises(ArgumentException):
        diameter_exact(points, max_points=100)
    with pytest.raises(ArgumentException):
        diameter_exact([[1.0, 1.0]])


def test_diameter_heuristic(rng):
    """Test the heuristic is a deterministic lower bound from real pairs."""
    points = rng.normal(size=(300, 4))
    exact = diameter_exact(points)
    first = diameter_heuristic(points, sweeps=3, seed=5)
    assert first == diameter_heuristic(points, sweeps=3, seed=5)
    assert first <= exact + 1e-12
    assert first >= exact / 2.0
    assert diameter_heuristic([[0.0, 0.0], [3.0, 4.0]], 1, 0) == pytest.approx(5.0)
    with pytest.raises(ArgumentException):
        diameter_heuristic(points, sweeps=0, seed=0)


def test_diameter_heuristic_on_elongated_data(rng):
    """Test sweeps land within 2% of the exact diameter for several seeds."""
    points = rng.uniform(0.0, 1.0, size=(400, 16))
    points[:, 0] *= 100.0
    exact = diameter_exact(points)
    for seed in range(5):
        assert diameter_heuristic(points, sweeps=16, seed=seed) >= 0.98 * exact


def test_nearest_neighbor_distances(rng):
    refs = rng.normal(size=(40, 3))
    queries = rng.normal(size=(7, 3))
    expected = [min(np.linalg.norm(refs - query, axis=1)) for query in queries]
    assert np.allclose(nearest_neighbor_distances(refs, queries), expected)
    assert nearest_neighbor_distances(refs, np.zeros((0, 3))).shape == (0,)


def test_default_solver_config():
    refs = [[3.0, 4.0], [0.0, 1.0]]
    config = default_solver_config(refs, max_iters=7)
    assert config.gap_tol == pytest.approx(hullscope.settings.GAP_TOL_RELATIVE * 25.0)
    assert config.max_iters == 7
    assert config.inside_tol == hullscope.settings.INSIDE_TOL
    with pytest.raises(ArgumentException):
        SolverConfig(gap_tol=0.0)
