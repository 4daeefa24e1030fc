"""Test planar hulls, the small network trainer and grid comparisons."""

import csv
import json

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from hullscope.app import worker_pool
from hullscope.exceptions import (
    ArgumentException,
    DegenerateHullException,
    TrainingDivergedException,
)
from hullscope.mlp_demo import (
    default_grid_bounds,
    demo_dataset,
    disagreement_split,
    eval_grid,
    forward,
    grid_nodes,
    hull2d,
    init_model,
    loss_and_gradients,
    numerical_gradients,
    point_in_polygon,
    points_in_polygon,
    predict_signs,
    run_seed_pairs,
    save_polygon,
    seed_pairs,
    signed_targets,
    train_mlp,
    write_grid_csv,
    write_loss_csv,
)
from hullscope.models import PointSet, Polygon2D, TrainRegime
from hullscope.utilities.random_utilities import make_generator

SEPARABLE = PointSet([[1.0, 1.0], [1.0, 2.0], [-1.0, -1.0], [-2.0, -1.0]], [1, 1, 0, 0])


def test_hull2d_square_with_extra_points():
    """Interior points and points on edges are not vertices."""
    points = [[0.0, 0.0], [0.0, 1.0], [0.5, 0.0], [0.5, 0.5], [1.0, 0.0],
              [1.0, 1.0], [1.0, 1.0]]
    polygon = hull2d(points)
    assert polygon.vertices.tolist() == [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    assert len(polygon) == 4


def test_hull2d_matches_scipy(rng):
    for _ in range(20):
        points = rng.normal(size=(50, 2))
        polygon = hull2d(points)
        expected = points[ConvexHull(points).vertices]
        assert sorted(map(tuple, polygon.vertices.tolist())) \
            == sorted(map(tuple, expected.tolist()))


def test_hull2d_errors():
    with pytest.raises(DegenerateHullException):
        hull2d([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    with pytest.raises(DegenerateHullException):
        hull2d([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(ArgumentException):
        hull2d([[0.0, 0.0, 0.0]])


def test_polygon_validation():
    with pytest.raises(ArgumentException):
        Polygon2D([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ArgumentException):
        Polygon2D([[0.0, 0.0], [1.0, 0.0]])


def test_points_in_polygon(unit_square):
    polygon = hull2d(unit_square.data)
    cases = [
        ((0.5, 0.5), True),
        ((0.0, 0.5), True),
        ((1.0, 1.0), True),
        ((1.5, 0.5), False),
        ((-1e-6, 0.0), False),
    ]
    for point, expected in cases:
        assert point_in_polygon(polygon, point) is expected
    inside = points_in_polygon(polygon, [point for point, _ in cases])
    assert inside.tolist() == [expected for _, expected in cases]


def test_save_polygon(tmp_path, triangle):
    path = save_polygon(hull2d(triangle.data), str(tmp_path / 'hull.json'))
    with open(path) as json_file:
        assert json.load(json_file) == {
            'vertices': [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}


def test_init_model():
    model = init_model((2, 8, 3, 1), make_generator(4))
    assert model.n_parameters == 2 * 8 + 8 + 8 * 3 + 3 + 3 + 1
    for fan_in, matrix, vector in zip((2, 8, 3), model.weights, model.biases):
        assert np.all(np.abs(matrix) <= 1.0 / np.sqrt(fan_in))
        assert np.all(np.abs(vector) <= 1.0 / np.sqrt(fan_in))
    again = init_model((2, 8, 3, 1), make_generator(4))
    assert all(np.array_equal(a, b) for a, b in zip(model.weights, again.weights))
    with pytest.raises(ArgumentException):
        init_model((2, 3), make_generator(0))


def test_negated_model_flips_signs(rng):
    model = init_model((2, 4, 1), make_generator(1))
    points = rng.normal(size=(10, 2))
    assert np.allclose(forward(model.negated(), points), -forward(model, points))


def test_backpropagation_matches_finite_differences(rng):
    """Test analytic gradients against central differences."""
    model = init_model((2, 5, 3, 1), make_generator(9))
    points = rng.normal(size=(7, 2))
    targets = np.where(rng.normal(size=7) > 0, 1.0, -1.0)
    for weight_decay in (0.0, 0.01):
        _, weight_grads, bias_grads = loss_and_gradients(
            model, points, targets, weight_decay)
        numeric_weights, numeric_biases = numerical_gradients(
            model, points, targets, weight_decay)
        analytic = np.concatenate([grad.ravel() for grad in weight_grads + bias_grads])
        numeric = np.concatenate(
            [grad.ravel() for grad in numeric_weights + numeric_biases])
        error = np.linalg.norm(analytic - numeric) / np.linalg.norm(numeric)
        assert error <= 1e-6


def test_weight_decay_adds_to_loss():
    model = init_model((2, 3, 1), make_generator(2))
    targets = signed_targets(SEPARABLE)
    plain = loss_and_gradients(model, SEPARABLE.data, targets)[0]
    decayed = loss_and_gradients(model, SEPARABLE.data, targets, 0.5)[0]
    penalty = 0.25 * sum(float(np.sum(matrix ** 2)) for matrix in model.weights)
    assert decayed == pytest.approx(plain + penalty)


def test_signed_targets():
    assert signed_targets(SEPARABLE).tolist() == [1.0, 1.0, -1.0, -1.0]
    with pytest.raises(ArgumentException):
        signed_targets(PointSet([[0.0, 0.0]], [2]))
    with pytest.raises(ArgumentException):
        signed_targets(PointSet([[0.0, 0.0]]))


def test_train_mlp_fits_separable_points():
    run = train_mlp(SEPARABLE, (2, 16, 1), TrainRegime(seed=0, steps=5000,
                                                       learning_rate=0.05))
    assert run.accuracy == 1.0
    assert run.losses.shape == (5000,)
    assert run.losses[-1] < run.losses[0]
    assert predict_signs(run.model, SEPARABLE.data).tolist() == [1, 1, -1, -1]


def test_train_mlp_is_reproducible():
    """Test one seed gives bit-identical runs, with and without mini-batches."""
    for batch in (None, 2):
        regime = TrainRegime(seed=3, steps=200, learning_rate=0.05, batch=batch)
        first = train_mlp(SEPARABLE, (2, 6, 1), regime)
        second = train_mlp(SEPARABLE, (2, 6, 1), regime)
        assert np.array_equal(first.losses, second.losses)
        assert all(np.array_equal(a, b)
                   for a, b in zip(first.model.weights, second.model.weights))
    full = train_mlp(SEPARABLE, (2, 6, 1), TrainRegime(seed=3, steps=200,
                                                       learning_rate=0.05))
    batched = train_mlp(SEPARABLE, (2, 6, 1), TrainRegime(seed=3, steps=200,
                                                          learning_rate=0.05, batch=2))
    assert not np.array_equal(full.losses, batched.losses)


def test_train_mlp_divergence():
    """A huge step either diverges loudly or fails to fit."""
    try:
        run = train_mlp(SEPARABLE, (2, 16, 1), TrainRegime(
            seed=0, steps=2000, learning_rate=1e3))
    except TrainingDivergedException as error:
        assert error.exit_code == 1
        assert 0 <= error.step <= 2000
    else:
        assert run.accuracy < 1.0


def test_train_mlp_errors():
    regime = TrainRegime(steps=1)
    with pytest.raises(ArgumentException):
        train_mlp(SEPARABLE.data, (2, 4, 1), regime)
    with pytest.raises(ArgumentException):
        train_mlp(SEPARABLE, (3, 4, 1), regime)
    with pytest.raises(ArgumentException):
        train_mlp(SEPARABLE.data, (2, 4, 1), regime, targets=[1, 0, 1, 0])
    for kwargs in (dict(steps=0), dict(learning_rate=0.0), dict(weight_decay=-1.0),
                   dict(batch=0)):
        with pytest.raises(ArgumentException):
            TrainRegime(**kwargs)


def test_grid_nodes_order():
    nodes = grid_nodes((0.0, 1.0, 0.0, 2.0), 2)
    assert nodes.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [1.0, 2.0]]
    with pytest.raises(ArgumentException):
        grid_nodes((0.0, 1.0, 0.0, 2.0), 1)
    with pytest.raises(ArgumentException):
        grid_nodes((1.0, 1.0, 0.0, 2.0), 3)


def test_eval_grid_rows_follow_y():
    model = init_model((2, 4, 1), make_generator(5))
    bounds = (-2.0, 2.0, -1.0, 1.0)
    grid = eval_grid(model, bounds, 9)
    assert grid.shape == (9, 9)
    assert grid.dtype == np.int8
    assert grid.reshape(-1).tolist() \
        == predict_signs(model, grid_nodes(bounds, 9)).tolist()
    with worker_pool(3) as executor:
        assert np.array_equal(eval_grid(model, bounds, 9, executor), grid)


def test_disagreement_split(unit_square):
    """Test the split against a hand-counted grid."""
    polygon = hull2d(unit_square.data)
    bounds = default_grid_bounds(polygon)
    assert bounds == (-1.0, 2.0, -1.0, 2.0)
    grid_a = np.ones((4, 4), dtype=np.int8)
    grid_b = grid_a.copy()
    # Row 1 is y = 0 and column 1 is x = 0, a corner of the square.
    grid_b[1, 1] = -1
    grid_b[0, 0] = -1
    split = disagreement_split(grid_a, grid_b, polygon, bounds, 4)
    assert split.inside_nodes == 4
    assert split.outside_nodes == 12
    assert split.inside == pytest.approx(0.25)
    assert split.outside == pytest.approx(1.0 / 12.0)
    with pytest.raises(ArgumentException):
        disagreement_split(grid_a, np.ones((3, 3)), polygon, bounds, 4)


def test_demo_dataset():
    data = demo_dataset(0)
    assert data.n == 40
    assert np.bincount(data.labels).tolist() == [20, 20]
    assert np.all(np.abs(data.data) >= 0.7)
    assert np.all(np.abs(data.data) <= 1.3)
    assert np.array_equal(demo_dataset(0).data, data.data)
    assert not np.array_equal(demo_dataset(1).data, data.data)


def test_seed_pairs():
    assert seed_pairs([1, 2, 3, 4]) == [(1, 2), (3, 4)]
    for seeds in ([1], [1, 2, 3], []):
        with pytest.raises(ArgumentException):
            seed_pairs(seeds)


def test_run_seed_pairs():
    """Test the experiment bookkeeping; a seed paired with itself never disagrees."""
    data = demo_dataset(0)
    regime = TrainRegime(steps=300, learning_rate=0.05)
    experiment = run_seed_pairs(data, (2, 8, 1), [3, 3, 4, 5], regime, 20)
    assert sorted(experiment.runs) == [3, 4, 5]
    assert [report.seeds for report in experiment.reports] == [(3, 3), (4, 5)]
    same = experiment.reports[0].split
    assert same.inside == 0.0 and same.outside == 0.0
    for report in experiment.reports:
        assert report.split.inside_nodes + report.split.outside_nodes == 400
        assert 0.0 <= report.split.inside <= 1.0
        assert 0.0 <= report.split.outside <= 1.0
    summary = experiment.summary()
    assert summary['pairs'] == 2
    assert summary['resolution'] == 20
    assert summary['bounds'] == list(experiment.bounds)
    with worker_pool(2) as executor:
        threaded = run_seed_pairs(data, (2, 8, 1), [3, 3, 4, 5], regime, 20, executor)
    assert threaded.summary() == summary


def test_seed_pairs_agree_inside_the_hull_more_than_outside():
    """Test ten pairs of wide networks trained on the demo data with default settings."""
    experiment = run_seed_pairs(demo_dataset(0), (2, 64, 1), range(20),
                                TrainRegime(steps=4000, learning_rate=0.1), 120)
    summary = experiment.summary()
    assert summary['pairs'] == 10
    assert summary['all_fit_training_data']
    assert summary['pairs_inside_not_above_outside'] >= 8
    assert summary['mean_outside_disagreement'] > 0.0


def test_single_hidden_unit_cannot_fit_demo_data():
    """One hidden unit gives a half-plane, which cannot split interleaved classes."""
    run = train_mlp(demo_dataset(0), (2, 1, 1), TrainRegime(steps=500, learning_rate=0.05))
    assert run.accuracy < 1.0


def test_writers(tmp_path):
    run = train_mlp(SEPARABLE, (2, 3, 1), TrainRegime(steps=3, learning_rate=0.05))
    loss_path = write_loss_csv(run, str(tmp_path / 'loss.csv'))
    with open(loss_path) as csv_file:
        rows = list(csv.reader(csv_file))
    assert rows[0] == ['step', 'loss']
    assert [row[0] for row in rows[1:]] == ['0', '1', '2']
    grid = eval_grid(run.model, (0.0, 1.0, 0.0, 1.0), 3)
    grid_path = write_grid_csv(grid, (0.0, 1.0, 0.0, 1.0), 3, str(tmp_path / 'grid.csv'))
    with open(grid_path) as csv_file:
        rows = list(csv.reader(csv_file))
    assert rows[0] == ['x', 'y', 'sign']
    assert len(rows) == 10
    assert rows[2][:2] == ['0.5', '0.0']
