from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

import hullscope.exceptions
from hullscope.constants import POLYGON_TOLERANCE
from hullscope.models.mixins import ModelSerializer


@dataclass(eq=False)
class MlpModel(ModelSerializer):
    """
    A fully connected network with tanh hidden layers and a scalar output.

    `weights[k]` maps layer k to layer k + 1 and has shape
    (layer_sizes[k], layer_sizes[k + 1]).
    """
    layer_sizes: Tuple[int, ...]
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def __post_init__(self):
        self.layer_sizes = tuple(int(size) for size in self.layer_sizes)
        if len(self.layer_sizes) < 2 or self.layer_sizes[-1] != 1 \
                or min(self.layer_sizes) < 1:
            raise hullscope.exceptions.ArgumentException(
                'Layer sizes %s must be positive and end in 1.'
                % (self.layer_sizes,))
        if len(self.weights) != len(self.layer_sizes) - 1 \
                or len(self.biases) != len(self.weights):
            raise hullscope.exceptions.ArgumentException(
                'Expected %d weight matrices and bias vectors.'
                % (len(self.layer_sizes) - 1))
        self.weights = [np.array(matrix, dtype=np.float64) for matrix in self.weights]
        self.biases = [np.array(vector, dtype=np.float64).reshape(-1)
                       for vector in self.biases]
        for k, (matrix, vector) in enumerate(zip(self.weights, self.biases)):
            if matrix.shape != self.layer_sizes[k:k + 2] \
                    or vector.shape != (self.layer_sizes[k + 1],):
                raise hullscope.exceptions.ArgumentException(
                    'Layer %d parameters have shapes %s and %s.'
                    % (k, matrix.shape, vector.shape))
        if not self.is_finite():
            raise hullscope.exceptions.ArgumentException(
                'Network parameters must be finite.')

    @property
    def n_parameters(self):
        return sum(matrix.size + vector.size
                   for matrix, vector in zip(self.weights, self.biases))

    def is_finite(self):
        return all(np.all(np.isfinite(array)) for array in self.weights + self.biases)

    def copy(self):
        return MlpModel(self.layer_sizes, [matrix.copy() for matrix in self.weights],
                        [vector.copy() for vector in self.biases])

    def negated(self):
        """The same network with the sign of its output flipped."""
        flipped = self.copy()
        flipped.weights[-1] = -flipped.weights[-1]
        flipped.biases[-1] = -flipped.biases[-1]
        return flipped


@dataclass(frozen=True)
class TrainRegime(ModelSerializer):
    """Everything besides the data and architecture that decides a training run."""
    seed: int = 0
    steps: int = 4000
    learning_rate: float = 0.1
    weight_decay: float = 0.0
    # None trains on the full set every step.
    batch: Optional[int] = None

    def __post_init__(self):
        if self.steps < 1:
            raise hullscope.exceptions.ArgumentException(
                'Training needs at least one step.')
        if not self.learning_rate > 0:
            raise hullscope.exceptions.ArgumentException(
                'The learning rate must be positive.')
        if self.weight_decay < 0:
            raise hullscope.exceptions.ArgumentException(
                'Weight decay must be nonnegative.')
        if self.batch is not None and self.batch < 1:
            raise hullscope.exceptions.ArgumentException(
                'Batch size must be at least 1.')


@dataclass(eq=False)
class TrainingRun(ModelSerializer):
    model: MlpModel
    regime: TrainRegime
    losses: np.ndarray
    accuracy: float

    serialize_exclude_fields = ['model', 'losses']


@dataclass(frozen=True, eq=False)
class Polygon2D(ModelSerializer):
    """A strictly convex polygon with vertices in counter-clockwise order."""
    vertices: np.ndarray

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=np.float64)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or vertices.shape[0] < 3:
            raise hullscope.exceptions.ArgumentException(
                'A polygon needs at least three 2-D vertices.')
        edges = np.roll(vertices, -1, axis=0) - vertices
        following = np.roll(edges, -1, axis=0)
        turns = edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]
        if np.any(turns <= POLYGON_TOLERANCE):
            raise hullscope.exceptions.ArgumentException(
                'Polygon vertices are not in strictly convex CCW order.')
        vertices.setflags(write=False)
        object.__setattr__(self, 'vertices', vertices)

    def __len__(self):
        return self.vertices.shape[0]

    def bounding_box(self):
        """(xmin, xmax, ymin, ymax)."""
        low = self.vertices.min(axis=0)
        high = self.vertices.max(axis=0)
        return float(low[0]), float(high[0]), float(low[1]), float(high[1])


@dataclass(frozen=True)
class DisagreementSplit(ModelSerializer):
    """Fractions of grid nodes where two sign grids differ, split by the hull."""
    inside: float
    outside: float
    inside_nodes: int
    outside_nodes: int


@dataclass(frozen=True)
class SeedPairReport(ModelSerializer):
    seeds: Tuple[int, int]
    accuracies: Tuple[float, float]
    split: DisagreementSplit
