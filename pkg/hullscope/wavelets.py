"""Orthonormal Haar and Daubechies-4 transforms with periodic boundaries."""

import functools
import logging

import numpy as np

import hullscope.exceptions
from hullscope.constants import D4_LOW_PASS, HAAR_LOW_PASS
from hullscope.models import PointSet
from hullscope.models.wavelet_spec import WaveletFamily, WaveletSpec
from hullscope.report_schema import WAVELET_MASK_SCHEMA
from hullscope.utilities.report_utilities import read_json, write_json

logger = logging.getLogger('hullscope.wavelets')

_ROWS_PER_BLOCK = 1024


@functools.lru_cache(maxsize=None)
def _filters(family):
    """Analysis low-pass and high-pass filters of the family."""
    low = np.array(HAAR_LOW_PASS if family is WaveletFamily.HAAR else D4_LOW_PASS)
    signs = np.where(np.arange(low.shape[0]) % 2 == 0, 1.0, -1.0)
    high = signs * low[::-1]
    return low, high


@functools.lru_cache(maxsize=None)
def _windows(length, taps):
    """Periodic sample positions feeding each output coefficient."""
    starts = 2 * np.arange(length // 2)
    return (starts[:, None] + np.arange(taps)[None, :]) % length


def _analysis_step(values, family, axis):
    """One level along an axis: approximation half, then detail half."""
    low, high = _filters(family)
    values = np.moveaxis(values, axis, -1)
    windows = values[..., _windows(values.shape[-1], low.shape[0])]
    result = np.concatenate([windows @ low, windows @ high], axis=-1)
    return np.moveaxis(result, -1, axis)


def _synthesis_step(values, family, axis):
    """Exact inverse of `_analysis_step`; the transpose of an orthogonal map."""
    low, high = _filters(family)
    values = np.moveaxis(values, axis, -1)
    length = values.shape[-1]
    half = length // 2
    approx = values[..., :half]
    detail = values[..., half:]
    result = np.zeros(values.shape)
    starts = 2 * np.arange(half)
    for tap in range(low.shape[0]):
        # Positions are distinct for a fixed tap, so fancy += is safe.
        result[..., (starts + tap) % length] += low[tap] * approx + high[tap] * detail
    return np.moveaxis(result, -1, axis)


def _as_spec(spec):
    return spec if isinstance(spec, WaveletSpec) else WaveletSpec(**spec)


def dwt1d(signal, spec):
    """
    Multi-level transform of the last axis.

    Layout per level is [approximation | detail] with the approximation
    transformed again at the next level.
    """
    spec = _as_spec(spec)
    result = np.array(signal, dtype=np.float64)
    length = result.shape[-1]
    spec.check_length(length)
    for _ in range(spec.levels):
        result[..., :length] = _analysis_step(result[..., :length], spec.family, -1)
        length //= 2
    return result


def idwt1d(coeffs, spec):
    """Inverse of `dwt1d`."""
    spec = _as_spec(spec)
    result = np.array(coeffs, dtype=np.float64)
    spec.check_length(result.shape[-1])
    length = result.shape[-1] >> (spec.levels - 1)
    while length <= result.shape[-1]:
        result[..., :length] = _synthesis_step(result[..., :length], spec.family, -1)
        length *= 2
    return result


def dwt2d(image, spec):
    """
    Separable multi-level transform of the last two axes.

    Each level transforms rows, then columns, of the current approximation
    block, leaving quadrants LL | LH over HL | HH with LL recursed.
    """
    spec = _as_spec(spec)
    result = np.array(image, dtype=np.float64)
    height, width = result.shape[-2:]
    spec.check_length(height)
    spec.check_length(width)
    for _ in range(spec.levels):
        block = result[..., :height, :width]
        block = _analysis_step(block, spec.family, -1)
        result[..., :height, :width] = _analysis_step(block, spec.family, -2)
        height //= 2
        width //= 2
    return result


def idwt2d(coeffs, spec):
    """Inverse of `dwt2d`."""
    spec = _as_spec(spec)
    result = np.array(coeffs, dtype=np.float64)
    full_height, full_width = result.shape[-2:]
    spec.check_length(full_height)
    spec.check_length(full_width)
    height = full_height >> (spec.levels - 1)
    width = full_width >> (spec.levels - 1)
    while height <= full_height:
        block = _synthesis_step(result[..., :height, :width], spec.family, -2)
        result[..., :height, :width] = _synthesis_step(block, spec.family, -1)
        height *= 2
        width *= 2
    return result


def parse_shape(text):
    """Parse HxWxC (or HxW) into a (height, width, channels) tuple."""
    try:
        parts = [int(part) for part in str(text).lower().split('x')]
    except ValueError:
        parts = []
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or min(parts) < 1:
        raise hullscope.exceptions.ArgumentException(
            'Shape %s is not of the form HxWxC.' % text)
    return tuple(parts)


def _transform_rows(data, shape, spec):
    height, width, channels = shape
    if data.shape[1] != height * width * channels:
        raise hullscope.exceptions.ArgumentException(
            'Rows have %d entries but shape %dx%dx%d needs %d.'
            % (data.shape[1], height, width, channels, height * width * channels))
    blocks = []
    for start in range(0, data.shape[0], _ROWS_PER_BLOCK):
        # Rows hold channel planes one after another, as CIFAR records do.
        images = data[start:start + _ROWS_PER_BLOCK].reshape(
            -1, channels, height, width)
        blocks.append(dwt2d(images, spec).reshape(images.shape[0], -1))
    return np.concatenate(blocks, axis=0)


def fit_coefficient_mask(coefficients, keep_top):
    """
    Positions of the keep_top coefficients with largest mean magnitude.

    Ties go to the lowest position; the returned positions are sorted.
    """
    coefficients = np.asarray(coefficients)
    if not 1 <= keep_top <= coefficients.shape[1]:
        raise hullscope.exceptions.ArgumentException(
            'Cannot keep %d of %d coefficients.' % (keep_top, coefficients.shape[1]))
    means = np.mean(np.abs(coefficients), axis=0)
    order = np.argsort(-means, kind='stable')
    return np.sort(order[:keep_top])


def transform_pointset(point_set, shape, spec, mask=None):
    """
    Transform every row channel by channel and flatten the coefficients.

    When `spec.keep_top` is set, the coefficient mask is fitted on this
    set unless one fitted on the reference set is passed in.
    """
    spec = _as_spec(spec)
    shape = parse_shape(shape) if isinstance(shape, str) else tuple(shape)
    coefficients = _transform_rows(point_set.data, shape, spec)
    if spec.keep_top is not None:
        if mask is None:
            mask = fit_coefficient_mask(coefficients, spec.keep_top)
        coefficients = coefficients[:, mask]
    return PointSet(coefficients, point_set.labels)


class WaveletFeatureMap:
    """A transform whose coefficient mask is fitted once on the reference set."""

    def __init__(self, shape, spec, mask=None):
        self.shape = parse_shape(shape) if isinstance(shape, str) else tuple(shape)
        self.spec = _as_spec(spec)
        self.mask = None if mask is None else np.asarray(mask, dtype=np.int64)

    def fit(self, refs):
        """Fit the mask on the reference set and return the transformed set."""
        coefficients = _transform_rows(refs.data, self.shape, self.spec)
        if self.spec.keep_top is not None:
            self.mask = fit_coefficient_mask(coefficients, self.spec.keep_top)
            coefficients = coefficients[:, self.mask]
            logger.info('Kept %d of %d wavelet coefficients.',
                        self.mask.shape[0], refs.d)
        return PointSet(coefficients, refs.labels)

    def transform(self, point_set):
        """Transform a set with the mask fitted on the reference set."""
        if self.spec.keep_top is not None and self.mask is None:
            raise hullscope.exceptions.ArgumentException(
                'The mask has not been fitted yet.')
        return transform_pointset(point_set, self.shape, self.spec, self.mask)

    def to_json(self):
        height, width, channels = self.shape
        return {
            'family': self.spec.family.value,
            'levels': self.spec.levels,
            'shape': [height, width, channels],
            'keep_top': self.spec.keep_top,
            'indices': [] if self.mask is None else self.mask.tolist(),
        }

    def save_mask(self, path):
        return write_json(path, self.to_json(), WAVELET_MASK_SCHEMA)

    @classmethod
    def load_mask(cls, path):
        data = read_json(path, WAVELET_MASK_SCHEMA)
        spec = WaveletSpec(family=data['family'], levels=data['levels'],
                           keep_top=data['keep_top'])
        mask = data['indices'] if data['keep_top'] is not None else None
        return cls(tuple(data['shape']), spec, mask)
