"""Load datasets into point sets and persist matrices bit-exactly."""

import logging
import os

import numpy as np

import hullscope.exceptions
from hullscope.constants import (
    CIFAR_PIXEL_BYTES,
    CIFAR_RECORD_BYTES,
    FMAT_HEADER_BYTES,
    FMAT_MAGIC,
    IDX_HEADER_BYTES_IMAGES,
    IDX_HEADER_BYTES_LABELS,
    IDX_IMAGE_MAGIC,
    IDX_LABEL_MAGIC,
    NPY_MAGIC,
    PIXEL_SCALE,
)
from hullscope.models import PointSet
from hullscope.utilities.random_utilities import make_generator

logger = logging.getLogger('hullscope.ingest')

FORMATS = ('idx', 'cifar', 'fmat', 'npy')


def _read_bytes(path):
    try:
        with open(path, 'rb') as input_file:
            return input_file.read()
    except OSError as error:
        raise hullscope.exceptions.FormatException(
            'Could not read %s: %s' % (path, error))


def _idx_header(payload, magic, header_bytes, path):
    if len(payload) < header_bytes:
        raise hullscope.exceptions.FormatException(
            '%s is too short to hold an IDX header.' % path)
    header = np.frombuffer(payload, dtype='>u4', count=header_bytes // 4)
    if int(header[0]) != magic:
        raise hullscope.exceptions.FormatException(
            '%s has IDX magic 0x%08x, expected 0x%08x.'
            % (path, int(header[0]), magic))
    return [int(value) for value in header[1:]]


def load_idx(image_path, label_path=None):
    """Load an IDX image file, and optionally its label file."""
    payload = _read_bytes(image_path)
    count, rows, columns = _idx_header(
        payload, IDX_IMAGE_MAGIC, IDX_HEADER_BYTES_IMAGES, image_path)
    d = rows * columns
    expected = IDX_HEADER_BYTES_IMAGES + count * d
    if len(payload) != expected:
        raise hullscope.exceptions.FormatException(
            '%s declares %d images of %dx%d pixels (%d bytes) but holds %d '
            'bytes.' % (image_path, count, rows, columns, expected, len(payload)))
    pixels = np.frombuffer(payload, dtype=np.uint8, offset=IDX_HEADER_BYTES_IMAGES)
    data = pixels.reshape(count, d).astype(np.float64)
    labels = None
    if label_path is not None:
        label_payload = _read_bytes(label_path)
        (label_count,) = _idx_header(
            label_payload, IDX_LABEL_MAGIC, IDX_HEADER_BYTES_LABELS, label_path)
        if len(label_payload) != IDX_HEADER_BYTES_LABELS + label_count:
            raise hullscope.exceptions.FormatException(
                '%s declares %d labels but holds %d bytes of labels.'
                % (label_path, label_count,
                   len(label_payload) - IDX_HEADER_BYTES_LABELS))
        if label_count != count:
            raise hullscope.exceptions.FormatException(
                '%s holds %d images but %s holds %d labels.'
                % (image_path, count, label_path, label_count))
        labels = np.frombuffer(
            label_payload, dtype=np.uint8, offset=IDX_HEADER_BYTES_LABELS)
    logger.info('Loaded %d IDX images of dimension %d from %s.',
                count, d, image_path)
    return PointSet(data, labels, PIXEL_SCALE)


def load_cifar_bin(paths):
    """
    Load CIFAR-10 binary batches.

    Each record is one label byte followed by 3072 pixel bytes, kept as a flat
    vector in file order. Records keep their order across files.
    """
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    blocks = []
    for path in paths:
        payload = _read_bytes(path)
        if len(payload) == 0 or len(payload) % CIFAR_RECORD_BYTES != 0:
            raise hullscope.exceptions.FormatException(
                '%s holds %d bytes, not a whole number of %d-byte records.'
                % (path, len(payload), CIFAR_RECORD_BYTES))
        blocks.append(np.frombuffer(payload, dtype=np.uint8).reshape(
            -1, CIFAR_RECORD_BYTES))
    if not blocks:
        raise hullscope.exceptions.ArgumentException(
            'At least one CIFAR batch file is required.')
    records = np.concatenate(blocks, axis=0)
    logger.info('Loaded %d CIFAR records from %d files.',
                records.shape[0], len(blocks))
    return PointSet(records[:, 1:1 + CIFAR_PIXEL_BYTES].astype(np.float64),
                    records[:, 0], PIXEL_SCALE)


def save_fmat(point_set, path):
    """
    Write a point set in the FMAT1 format.

    Layout: ASCII "FMAT1", little-endian uint32 n and d, one flag byte (1 when
    labels follow), n*d little-endian float32 values row-major, then n
    little-endian uint32 labels when flagged.
    """
    has_labels = point_set.labels is not None
    with open(path, 'wb') as output_file:
        output_file.write(FMAT_MAGIC)
        output_file.write(np.array([point_set.n, point_set.d], dtype='<u4').tobytes())
        output_file.write(bytes([1 if has_labels else 0]))
        output_file.write(point_set.data.astype('<f4').tobytes())
        if has_labels:
            output_file.write(point_set.labels.astype('<u4').tobytes())
    return path


def load_fmat(path, scale_hint=None):
    """Read a point set written by `save_fmat`."""
    payload = _read_bytes(path)
    if payload[:len(FMAT_MAGIC)] != FMAT_MAGIC:
        raise hullscope.exceptions.FormatException(
            '%s does not start with the FMAT1 magic.' % path)
    if len(payload) < FMAT_HEADER_BYTES:
        raise hullscope.exceptions.FormatException(
            '%s is too short to hold an FMAT1 header.' % path)
    n, d = (int(value) for value in np.frombuffer(
        payload, dtype='<u4', count=2, offset=len(FMAT_MAGIC)))
    flag = payload[FMAT_HEADER_BYTES - 1]
    if flag not in (0, 1):
        raise hullscope.exceptions.FormatException(
            '%s has label flag %d, expected 0 or 1.' % (path, flag))
    expected = FMAT_HEADER_BYTES + 4 * n * d + (4 * n if flag else 0)
    if len(payload) != expected:
        raise hullscope.exceptions.FormatException(
            '%s declares %dx%d values%s (%d bytes) but holds %d bytes.'
            % (path, n, d, ' with labels' if flag else '', expected, len(payload)))
    data = np.frombuffer(payload, dtype='<f4', count=n * d,
                         offset=FMAT_HEADER_BYTES).reshape(n, d)
    labels = None
    if flag:
        labels = np.frombuffer(payload, dtype='<u4', count=n,
                               offset=FMAT_HEADER_BYTES + 4 * n * d)
    try:
        return PointSet(data.astype(np.float64), labels, scale_hint)
    except hullscope.exceptions.ArgumentException as error:
        raise hullscope.exceptions.FormatException(
            '%s: %s' % (path, error.message))


def load_npy(path, label_path=None):
    """Import a feature matrix saved with numpy, e.g. network activations."""
    try:
        data = np.load(path, allow_pickle=False)
        labels = None if label_path is None else np.load(label_path, allow_pickle=False)
    except (OSError, ValueError) as error:
        raise hullscope.exceptions.FormatException(
            'Could not read a numpy array: %s' % error)
    if data.ndim != 2:
        raise hullscope.exceptions.FormatException(
            '%s holds an array of shape %s, expected a matrix.' % (path, data.shape))
    try:
        return PointSet(data, labels)
    except hullscope.exceptions.ArgumentException as error:
        raise hullscope.exceptions.FormatException(
            '%s: %s' % (path, error.message))


def sniff_format(path):
    """Guess the format of a file from its leading bytes."""
    try:
        with open(path, 'rb') as input_file:
            head = input_file.read(8)
    except OSError as error:
        raise hullscope.exceptions.FormatException(
            'Could not read %s: %s' % (path, error))
    if head.startswith(FMAT_MAGIC):
        return 'fmat'
    if head.startswith(NPY_MAGIC):
        return 'npy'
    if len(head) >= 4 and int.from_bytes(head[:4], 'big') == IDX_IMAGE_MAGIC:
        return 'idx'
    return 'cifar'


def load_pointset(paths, data_format='auto', label_path=None):
    """Load one or more files in the given format."""
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    if not paths:
        raise hullscope.exceptions.ArgumentException('No input files given.')
    if data_format == 'auto':
        data_format = sniff_format(paths[0])
    if data_format == 'cifar':
        return load_cifar_bin(paths)
    if len(paths) != 1:
        raise hullscope.exceptions.ArgumentException(
            'The %s format takes exactly one file.' % data_format)
    if data_format == 'idx':
        return load_idx(paths[0], label_path)
    if data_format == 'fmat':
        return load_fmat(paths[0])
    if data_format == 'npy':
        return load_npy(paths[0], label_path)
    raise hullscope.exceptions.ArgumentException(
        'Unknown format %s; expected one of %s.' % (data_format, ', '.join(FORMATS)))


def normalized(point_set):
    """Divide by the scale hint so pixel data lies in [0, 1]."""
    if point_set.scale_hint is None:
        return point_set
    return point_set.with_data(point_set.data / point_set.scale_hint, 1.0)


def gen_random_points(n, d, lo, hi, seed):
    """Points with i.i.d. uniform entries on [lo, hi) from a seeded generator."""
    if n < 1 or d < 1:
        raise hullscope.exceptions.ArgumentException(
            'Random points need n >= 1 and d >= 1.')
    if not lo < hi:
        raise hullscope.exceptions.ArgumentException(
            'The lower bound %g must be below the upper bound %g.' % (lo, hi))
    data = make_generator(seed).uniform(lo, hi, size=(n, d))
    return PointSet(data)


def subsample_indices(n, k, seed, labels=None):
    """
    Sorted row indices of a seeded subsample without replacement.

    With labels, per-label quotas are dealt out one at a time over the labels
    in a seeded order, skipping labels that have run out of rows, so quotas
    differ by at most one wherever the labels have rows to give.
    """
    if not 1 <= k <= n:
        raise hullscope.exceptions.ArgumentException(
            'Cannot choose %d of %d rows.' % (k, n))
    generator = make_generator(seed)
    if labels is None:
        return np.sort(generator.choice(n, size=k, replace=False))
    labels = np.asarray(labels)
    classes = np.unique(labels)
    members = {label: generator.permutation(np.flatnonzero(labels == label))
               for label in classes.tolist()}
    order = generator.permutation(classes).tolist()
    quotas = dict.fromkeys(order, 0)
    remaining = k
    while remaining:
        for label in order:
            if remaining and quotas[label] < len(members[label]):
                quotas[label] += 1
                remaining -= 1
    chosen = np.concatenate([members[label][:quotas[label]] for label in order])
    return np.sort(chosen)


def subsample(point_set, k, seed, stratified=False):
    """A seeded subsample of k rows, optionally balanced across labels."""
    if stratified and point_set.labels is None:
        raise hullscope.exceptions.ArgumentException(
            'Stratified subsampling needs labels.')
    indices = subsample_indices(
        point_set.n, k, seed, point_set.labels if stratified else None)
    return point_set.take(indices)
