"""Setup pytest fixtures."""

import itertools

import numpy as np
import pytest

from hullscope.constants import IDX_IMAGE_MAGIC, IDX_LABEL_MAGIC
from hullscope.models import PointSet
from hullscope.utilities.random_utilities import make_generator


@pytest.fixture
def rng():
    """A generator with a fixed seed."""
    return make_generator(20240601)


@pytest.fixture
def triangle():
    """The standard 2-simplex in the plane."""
    return PointSet([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@pytest.fixture
def unit_square():
    return PointSet([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def _write_idx_images(path, images, magic=IDX_IMAGE_MAGIC, truncate=0):
    images = np.asarray(images, dtype=np.uint8)
    count, rows, columns = images.shape
    header = np.array([magic, count, rows, columns], dtype='>u4').tobytes()
    payload = header + images.tobytes()
    with open(path, 'wb') as output_file:
        output_file.write(payload[:len(payload) - truncate])
    return str(path)


def _write_idx_labels(path, labels, magic=IDX_LABEL_MAGIC):
    labels = np.asarray(labels, dtype=np.uint8)
    header = np.array([magic, labels.shape[0]], dtype='>u4').tobytes()
    with open(path, 'wb') as output_file:
        output_file.write(header + labels.tobytes())
    return str(path)


@pytest.fixture
def idx_writer(tmp_path):
    """Write handcrafted IDX image and label files into tmp_path."""
    def write(name, images=None, labels=None, **kwargs):
        image_path = label_path = None
        if images is not None:
            image_path = _write_idx_images(tmp_path / (name + '-images.idx'),
                                           images, **kwargs)
        if labels is not None:
            label_path = _write_idx_labels(tmp_path / (name + '-labels.idx'), labels)
        return image_path, label_path
    return write


@pytest.fixture
def cifar_writer(tmp_path):
    """Write CIFAR-10 binary records (label byte + 3072 pixel bytes)."""
    def write(name, labels, pixels):
        records = [bytes([label]) + np.asarray(row, dtype=np.uint8).tobytes()
                   for label, row in zip(labels, pixels)]
        path = tmp_path / name
        with open(path, 'wb') as output_file:
            output_file.write(b''.join(records))
        return str(path)
    return write


@pytest.fixture
def image_sets(idx_writer, rng):
    """Small 8x8 IDX training and query sets with labels."""
    train = rng.integers(0, 256, size=(40, 8, 8))
    query = rng.integers(0, 256, size=(6, 8, 8))
    train_paths = idx_writer('train', train, rng.integers(0, 4, size=40))
    query_paths = idx_writer('query', query, rng.integers(0, 4, size=6))
    return train_paths, query_paths


def _affine_projection(vertices, query):
    """Projection onto the affine hull, with barycentric coefficients."""
    origin = vertices[0]
    edges = vertices[1:] - origin
    if edges.shape[0] == 0:
        return np.array([1.0]), origin
    solution, _, rank, _ = np.linalg.lstsq(edges.T, query - origin, rcond=None)
    if rank < edges.shape[0]:
        return None, None
    coefficients = np.concatenate([[1.0 - solution.sum()], solution])
    return coefficients, origin + edges.T @ solution


def brute_force_hull_distance(refs, query):
    """
    Distance to the hull by enumerating affinely independent vertex subsets.

    The projection lies in the relative interior of some face spanned by such
    a subset, where it is also the projection onto the subset's affine hull.
    """
    vertices = np.asarray(refs, dtype=np.float64)
    query = np.asarray(query, dtype=np.float64)
    size_max = min(vertices.shape[0], vertices.shape[1] + 1)
    best = np.inf
    for size in range(1, size_max + 1):
        for subset in itertools.combinations(range(vertices.shape[0]), size):
            coefficients, point = _affine_projection(vertices[list(subset)], query)
            if coefficients is None or np.any(coefficients < -1e-12):
                continue
            best = min(best, float(np.linalg.norm(point - query)))
    return best


@pytest.fixture
def hull_distance_oracle():
    return brute_force_hull_distance
