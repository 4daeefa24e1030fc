"""
Small tanh networks on 2-D data, compared inside and outside the hull.

The exact hull is tractable in the plane, so every grid node gets a ground
truth inside/outside label. Two networks that agree on the training points
are compared node by node on both sides of the hull.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

import hullscope.exceptions
from hullscope.constants import (
    FINITE_DIFFERENCE_STEP,
    GRID_BOUNDS_FACTOR,
    POLYGON_TOLERANCE,
)
from hullscope.models import PointSet
from hullscope.models.mlp_model import (
    DisagreementSplit,
    MlpModel,
    Polygon2D,
    SeedPairReport,
    TrainingRun,
    TrainRegime,
)
from hullscope.report_schema import POLYGON_SCHEMA
from hullscope.utilities.random_utilities import make_generator
from hullscope.utilities.report_utilities import write_csv, write_json

logger = logging.getLogger('hullscope.mlp_demo')

DEMO_CLUSTER_CENTRES = ((1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0))
DEMO_CLUSTER_SIZE = 10
DEMO_CLUSTER_SPREAD = 0.3


def _cross(origin, first, second):
    return (first[0] - origin[0]) * (second[1] - origin[1]) \
        - (first[1] - origin[1]) * (second[0] - origin[0])


def hull2d(points):
    """
    Convex hull of planar points by the monotone chain.

    Vertices come back counter-clockwise starting from the lowest-leftmost
    point; points on hull edges are not vertices.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2:
        raise hullscope.exceptions.ArgumentException(
            'hull2d takes an array of 2-D points.')
    if not np.all(np.isfinite(points)):
        raise hullscope.exceptions.ArgumentException(
            'Points must be finite.')
    ordered = np.unique(points, axis=0).tolist()
    lower = []
    for point in ordered:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], point) <= POLYGON_TOLERANCE:
            lower.pop()
        lower.append(point)
    upper = []
    for point in reversed(ordered):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], point) <= POLYGON_TOLERANCE:
            upper.pop()
        upper.append(point)
    vertices = lower[:-1] + upper[:-1]
    if len(vertices) < 3:
        raise hullscope.exceptions.DegenerateHullException()
    return Polygon2D(np.array(vertices))


def points_in_polygon(polygon, points):
    """Vectorised half-plane test; the boundary counts as inside."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    starts = polygon.vertices
    edges = np.roll(starts, -1, axis=0) - starts
    offsets = points[:, None, :] - starts[None, :, :]
    crosses = edges[None, :, 0] * offsets[:, :, 1] - edges[None, :, 1] * offsets[:, :, 0]
    return np.all(crosses >= -POLYGON_TOLERANCE, axis=1)


def point_in_polygon(polygon, point):
    return bool(points_in_polygon(polygon, point)[0])


def save_polygon(polygon, path):
    return write_json(path, polygon.serialize(), POLYGON_SCHEMA)


def init_model(arch, generator):
    """Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)]."""
    arch = tuple(int(size) for size in arch)
    if len(arch) < 2 or arch[-1] != 1:
        raise hullscope.exceptions.ArgumentException(
            'The architecture %s must end in a single output.' % (arch,))
    weights = []
    biases = []
    for fan_in, fan_out in zip(arch[:-1], arch[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(generator.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(generator.uniform(-bound, bound, size=fan_out))
    return MlpModel(arch, weights, biases)


def _forward_layers(model, points):
    activations = [np.asarray(points, dtype=np.float64)]
    last = len(model.weights) - 1
    for k, (matrix, vector) in enumerate(zip(model.weights, model.biases)):
        pre = activations[-1] @ matrix + vector
        activations.append(pre if k == last else np.tanh(pre))
    return activations


def forward(model, points):
    """Scalar network output for each row."""
    return _forward_layers(model, points)[-1][:, 0]


def predict_signs(model, points):
    """Sign readout of the output with zero counted as +1."""
    return np.where(forward(model, points) >= 0.0, 1, -1)


def loss_and_gradients(model, points, targets, weight_decay=0.0):
    """
    Mean squared error against +-1 targets plus an L2 penalty on the weights.

    Returns the loss and the gradients of the weights and biases, layer by
    layer, by backpropagation.
    """
    targets = np.asarray(targets, dtype=np.float64).reshape(-1)
    activations = _forward_layers(model, points)
    residual = activations[-1][:, 0] - targets
    count = targets.shape[0]
    loss = float(np.mean(residual ** 2))
    if weight_decay:
        loss += 0.5 * weight_decay * sum(float(np.sum(matrix ** 2))
                                         for matrix in model.weights)
    weight_grads = [None] * len(model.weights)
    bias_grads = [None] * len(model.weights)
    delta = (2.0 / count) * residual[:, None]
    for k in range(len(model.weights) - 1, -1, -1):
        weight_grads[k] = activations[k].T @ delta + weight_decay * model.weights[k]
        bias_grads[k] = delta.sum(axis=0)
        if k:
            # activations[k] is tanh of the previous pre-activation.
            delta = (delta @ model.weights[k].T) * (1.0 - activations[k] ** 2)
    return loss, weight_grads, bias_grads


def numerical_gradients(model, points, targets, weight_decay=0.0,
                        step=FINITE_DIFFERENCE_STEP):
    """Central finite differences of the training loss, shaped like the parameters."""
    perturbed = model.copy()

    def loss_at():
        return loss_and_gradients(perturbed, points, targets, weight_decay)[0]

    gradients = []
    for arrays in (perturbed.weights, perturbed.biases):
        layer_grads = []
        for array in arrays:
            grad = np.zeros_like(array)
            for position in np.ndindex(array.shape):
                saved = array[position]
                array[position] = saved + step
                upper = loss_at()
                array[position] = saved - step
                lower = loss_at()
                array[position] = saved
                grad[position] = (upper - lower) / (2.0 * step)
            layer_grads.append(grad)
        gradients.append(layer_grads)
    return gradients[0], gradients[1]


def signed_targets(point_set):
    """Map 0/1 class labels onto -1/+1 targets."""
    if point_set.labels is None or not np.all(np.isin(point_set.labels, (0, 1))):
        raise hullscope.exceptions.ArgumentException(
            'Training data needs labels 0 (negative) and 1 (positive).')
    return 2.0 * point_set.labels - 1.0


def _batches(count, regime, generator):
    if regime.batch is None or regime.batch >= count:
        while True:
            yield None
    while True:
        order = generator.permutation(count)
        for start in range(0, count, regime.batch):
            yield order[start:start + regime.batch]


def train_mlp(data, arch, regime, targets=None):
    """
    Plain gradient descent from a seeded initialisation.

    Runs are bit-reproducible: the regime's seed fixes the initial parameters
    and the order of mini-batches. Raises TrainingDivergedException as soon
    as the loss stops being finite.
    """
    points = data.data if isinstance(data, PointSet) else np.asarray(data, dtype=np.float64)
    if targets is None:
        if not isinstance(data, PointSet):
            raise hullscope.exceptions.ArgumentException(
                'Targets are required when training on a bare matrix.')
        targets = signed_targets(data)
    targets = np.asarray(targets, dtype=np.float64).reshape(-1)
    if points.ndim != 2 or points.shape[1] != int(arch[0]):
        raise hullscope.exceptions.ArgumentException(
            'Inputs of width %d do not fit architecture %s.'
            % (points.shape[-1], tuple(arch)))
    if not np.all(np.isin(targets, (-1.0, 1.0))):
        raise hullscope.exceptions.ArgumentException(
            'Targets must be -1 or +1.')
    generator = make_generator(regime.seed)
    model = init_model(arch, generator)
    batches = _batches(points.shape[0], regime, generator)
    losses = np.empty(regime.steps)
    with np.errstate(over='ignore', invalid='ignore'):
        for step in range(regime.steps):
            batch = next(batches)
            if batch is None:
                loss, weight_grads, bias_grads = loss_and_gradients(
                    model, points, targets, regime.weight_decay)
            else:
                loss = loss_and_gradients(model, points, targets, regime.weight_decay)[0]
                _, weight_grads, bias_grads = loss_and_gradients(
                    model, points[batch], targets[batch], regime.weight_decay)
            if not np.isfinite(loss):
                raise hullscope.exceptions.TrainingDivergedException(step)
            losses[step] = loss
            for k in range(len(model.weights)):
                model.weights[k] -= regime.learning_rate * weight_grads[k]
                model.biases[k] -= regime.learning_rate * bias_grads[k]
        if not model.is_finite():
            raise hullscope.exceptions.TrainingDivergedException(regime.steps)
    accuracy = float(np.mean(predict_signs(model, points) == targets))
    logger.debug('Seed %d: final loss %.6g, training accuracy %.3f.',
                 regime.seed, losses[-1], accuracy)
    return TrainingRun(model, regime, losses, accuracy)


def grid_axes(bounds, resolution):
    if resolution < 2:
        raise hullscope.exceptions.ArgumentException(
            'The grid resolution must be at least 2.')
    xmin, xmax, ymin, ymax = bounds
    if not (xmin < xmax and ymin < ymax):
        raise hullscope.exceptions.ArgumentException(
            'Grid bounds %s are empty.' % (tuple(bounds),))
    return np.linspace(xmin, xmax, resolution), np.linspace(ymin, ymax, resolution)


def grid_nodes(bounds, resolution):
    """Grid nodes in row-major order: one row per y, x varying fastest."""
    xs, ys = grid_axes(bounds, resolution)
    grid_x, grid_y = np.meshgrid(xs, ys)
    return np.column_stack([grid_x.ravel(), grid_y.ravel()])


def eval_grid(model, bounds, resolution, executor=None):
    """Signs of the network output on the grid, shape (resolution, resolution)."""
    xs, ys = grid_axes(bounds, resolution)

    def row_signs(y):
        return predict_signs(model, np.column_stack([xs, np.full_like(xs, y)]))

    rows = map(row_signs, ys) if executor is None else executor.map(row_signs, ys)
    return np.array(list(rows), dtype=np.int8)


def disagreement_split(grid_a, grid_b, polygon, bounds, resolution):
    """Fractions of differing nodes inside and outside the polygon."""
    grid_a = np.asarray(grid_a)
    grid_b = np.asarray(grid_b)
    if grid_a.shape != grid_b.shape or grid_a.size != resolution * resolution:
        raise hullscope.exceptions.ArgumentException(
            'Grids of shapes %s and %s do not match resolution %d.'
            % (grid_a.shape, grid_b.shape, resolution))
    inside = points_in_polygon(polygon, grid_nodes(bounds, resolution))
    differs = grid_a.reshape(-1) != grid_b.reshape(-1)
    inside_nodes = int(inside.sum())
    outside_nodes = int((~inside).sum())
    return DisagreementSplit(
        inside=float(differs[inside].mean()) if inside_nodes else 0.0,
        outside=float(differs[~inside].mean()) if outside_nodes else 0.0,
        inside_nodes=inside_nodes,
        outside_nodes=outside_nodes)


def default_grid_bounds(polygon, factor=GRID_BOUNDS_FACTOR):
    """The hull's bounding box scaled about its centre."""
    xmin, xmax, ymin, ymax = polygon.bounding_box()
    centre_x, centre_y = (xmin + xmax) / 2.0, (ymin + ymax) / 2.0
    half_x, half_y = factor * (xmax - xmin) / 2.0, factor * (ymax - ymin) / 2.0
    return centre_x - half_x, centre_x + half_x, centre_y - half_y, centre_y + half_y


def demo_dataset(seed=0):
    """
    Forty points in four clusters at the corners of a square.

    Class 1 (target +1) holds the points with x * y > 0, so the classes
    interleave and no line separates them.
    """
    generator = make_generator(seed)
    centres = np.repeat(np.array(DEMO_CLUSTER_CENTRES), DEMO_CLUSTER_SIZE, axis=0)
    points = centres + generator.uniform(
        -DEMO_CLUSTER_SPREAD, DEMO_CLUSTER_SPREAD, size=centres.shape)
    labels = (points[:, 0] * points[:, 1] > 0).astype(np.int64)
    return PointSet(points, labels)


@dataclass(eq=False)
class SeedPairExperiment:
    polygon: Polygon2D
    bounds: Tuple[float, float, float, float]
    resolution: int
    runs: Dict[int, TrainingRun]
    grids: Dict[int, np.ndarray]
    reports: List[SeedPairReport]

    def summary(self):
        inside = np.array([report.split.inside for report in self.reports])
        outside = np.array([report.split.outside for report in self.reports])
        return {
            'pairs': len(self.reports),
            'pairs_inside_not_above_outside': int(np.sum(inside <= outside)),
            'mean_inside_disagreement': float(inside.mean()),
            'mean_outside_disagreement': float(outside.mean()),
            'all_fit_training_data': bool(all(
                run.accuracy == 1.0 for run in self.runs.values())),
            'bounds': list(self.bounds),
            'resolution': self.resolution,
        }


def seed_pairs(seeds):
    """Pair up seeds as (s0, s1), (s2, s3), ..."""
    seeds = [int(seed) for seed in seeds]
    if len(seeds) < 2 or len(seeds) % 2:
        raise hullscope.exceptions.ArgumentException(
            'Seed pairs need an even number of seeds, got %d.' % len(seeds))
    return list(zip(seeds[0::2], seeds[1::2]))


def run_seed_pairs(data, arch, seeds, regime, resolution, executor=None):
    """
    Train one network per seed and compare each pair of seeds on the grid.

    `regime` supplies everything but the seed. Models train independently, so
    they may train in parallel; results are assembled in seed order.
    """
    pairs = seed_pairs(seeds)
    polygon = hull2d(data.data)
    bounds = default_grid_bounds(polygon)
    unique_seeds = sorted({seed for pair in pairs for seed in pair})

    def train(seed):
        return train_mlp(data, arch, TrainRegime(
            seed=seed, steps=regime.steps, learning_rate=regime.learning_rate,
            weight_decay=regime.weight_decay, batch=regime.batch))

    mapper = map if executor is None else executor.map
    runs = dict(zip(unique_seeds, mapper(train, unique_seeds)))
    grids = {seed: eval_grid(runs[seed].model, bounds, resolution)
             for seed in unique_seeds}
    reports = []
    for first, second in pairs:
        split = disagreement_split(grids[first], grids[second], polygon,
                                   bounds, resolution)
        reports.append(SeedPairReport(
            (first, second), (runs[first].accuracy, runs[second].accuracy), split))
        logger.info('Seeds %d and %d disagree on %.3f inside and %.3f outside.',
                    first, second, split.inside, split.outside)
    return SeedPairExperiment(polygon, bounds, resolution, runs, grids, reports)


def write_grid_csv(grid, bounds, resolution, path):
    xs, ys = grid_axes(bounds, resolution)
    rows = ((x, y, int(sign)) for y, row in zip(ys.tolist(), grid)
            for x, sign in zip(xs.tolist(), row))
    return write_csv(path, ['x', 'y', 'sign'], rows)


def write_loss_csv(run, path):
    return write_csv(path, ['step', 'loss'], enumerate(run.losses.tolist()))
