"""Test the orthonormal wavelet transforms and the coefficient mask."""

import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from hullscope.exceptions import ArgumentException, FormatException
from hullscope.models import PointSet, WaveletFamily, WaveletSpec
from hullscope.wavelets import (
    WaveletFeatureMap,
    dwt1d,
    dwt2d,
    fit_coefficient_mask,
    idwt1d,
    idwt2d,
    parse_shape,
    transform_pointset,
)

HAAR_1 = WaveletSpec(WaveletFamily.HAAR, levels=1)
HAAR_2 = WaveletSpec(WaveletFamily.HAAR, levels=2)
D4_2 = WaveletSpec(WaveletFamily.D4, levels=2)


def test_haar_examples():
    root2 = math.sqrt(2.0)
    cases = [
        ([1.0, 1.0, 1.0, 1.0], HAAR_1, [root2, root2, 0.0, 0.0]),
        ([1.0, 1.0, 1.0, 1.0], HAAR_2, [2.0, 0.0, 0.0, 0.0]),
        ([1.0, 2.0, 3.0, 4.0], HAAR_1, [3.0 / root2, 7.0 / root2, -1.0 / root2, -1.0 / root2]),
    ]
    for signal, spec, expected in cases:
        assert np.allclose(dwt1d(signal, spec), expected)


def test_d4_annihilates_constants():
    coefficients = dwt1d(np.full(16, 3.0), WaveletSpec(WaveletFamily.D4, levels=1))
    assert np.allclose(coefficients[:8], 3.0 * math.sqrt(2.0))
    assert np.allclose(coefficients[8:], 0.0)


def test_d4_annihilates_interior_ramps():
    """Two vanishing moments: only the window wrapping the boundary sees the ramp."""
    coefficients = dwt1d(np.arange(16.0), WaveletSpec(WaveletFamily.D4, levels=1))
    assert np.allclose(coefficients[8:15], 0.0)
    assert abs(coefficients[15]) > 1.0


def test_transforms_are_orthonormal(rng):
    """Test energy is preserved and the inverse recovers the input."""
    for spec in (HAAR_2, D4_2, WaveletSpec(WaveletFamily.D4, levels=3)):
        signal = rng.normal(size=(3, 32))
        coefficients = dwt1d(signal, spec)
        assert np.allclose(np.sum(coefficients ** 2, axis=-1), np.sum(signal ** 2, axis=-1))
        assert np.allclose(idwt1d(coefficients, spec), signal)
        image = rng.normal(size=(2, 16, 8))
        coefficients = dwt2d(image, spec)
        assert np.sum(coefficients ** 2) == pytest.approx(np.sum(image ** 2))
        assert np.allclose(idwt2d(coefficients, spec), image)


def test_dwt2d_constant_image():
    image = np.full((4, 4), 5.0)
    one_level = dwt2d(image, HAAR_1)
    assert np.allclose(one_level[:2, :2], 10.0)
    one_level[:2, :2] = 0.0
    assert np.allclose(one_level, 0.0)
    two_levels = dwt2d(image, HAAR_2)
    assert two_levels[0, 0] == pytest.approx(20.0)
    two_levels[0, 0] = 0.0
    assert np.allclose(two_levels, 0.0)


def test_length_checks():
    with pytest.raises(ArgumentException):
        dwt1d(np.zeros(6), HAAR_2)
    with pytest.raises(ArgumentException):
        dwt2d(np.zeros((8, 6)), HAAR_2)
    with pytest.raises(ArgumentException):
        dwt1d(np.zeros(2), WaveletSpec(WaveletFamily.HAAR, levels=2))


def test_wavelet_spec():
    assert WaveletSpec('d4').family is WaveletFamily.D4
    assert WaveletSpec('HAAR').family is WaveletFamily.HAAR
    cases = [
        dict(family='sym8'),
        dict(levels=0),
        dict(keep_top=0),
    ]
    for kwargs in cases:
        with pytest.raises(ArgumentException):
            WaveletSpec(**kwargs)


def test_parse_shape():
    assert parse_shape('32x32x3') == (32, 32, 3)
    assert parse_shape('28X28') == (28, 28, 1)
    for text in ('28', 'axb', '4x4x0', '2x2x2x2'):
        with pytest.raises(ArgumentException):
            parse_shape(text)


def test_transform_pointset_channel_planes():
    """Rows hold channel planes in turn and each plane is transformed alone."""
    row = np.concatenate([np.ones(16), np.full(16, 2.0)])
    transformed = transform_pointset(PointSet([row], [6]), (4, 4, 2), HAAR_2)
    expected = np.zeros(32)
    expected[0] = 4.0
    expected[16] = 8.0
    assert np.allclose(transformed.data[0], expected)
    assert transformed.labels.tolist() == [6]
    with pytest.raises(ArgumentException):
        transform_pointset(PointSet([row]), (4, 4, 3), HAAR_2)


def test_transform_preserves_distances(rng):
    points = PointSet(rng.normal(size=(10, 64)))
    transformed = transform_pointset(points, '8x8', D4_2)
    assert np.allclose(pdist(transformed.data), pdist(points.data))


def test_fit_coefficient_mask():
    coefficients = np.array([[1.0, -5.0, 0.0, 2.0], [1.0, 5.0, 0.0, -2.0]])
    assert fit_coefficient_mask(coefficients, 2).tolist() == [1, 3]
    assert fit_coefficient_mask(np.ones((2, 4)), 2).tolist() == [0, 1]
    with pytest.raises(ArgumentException):
        fit_coefficient_mask(coefficients, 5)


def test_feature_map_mask(tmp_path, rng):
    """Test the mask fitted on the reference set is reused for queries."""
    refs = PointSet(rng.normal(size=(20, 16)))
    queries = PointSet(rng.normal(size=(4, 16)))
    spec = WaveletSpec(WaveletFamily.HAAR, levels=2, keep_top=5)
    feature_map = WaveletFeatureMap('4x4', spec)
    with pytest.raises(ArgumentException):
        feature_map.transform(queries)
    fitted = feature_map.fit(refs)
    assert fitted.d == 5
    full = transform_pointset(queries, (4, 4, 1), HAAR_2)
    assert np.allclose(feature_map.transform(queries).data, full.data[:, feature_map.mask])

    path = str(tmp_path / 'mask.json')
    feature_map.save_mask(path)
    loaded = WaveletFeatureMap.load_mask(path)
    assert loaded.shape == (4, 4, 1)
    assert loaded.spec == spec
    assert loaded.mask.tolist() == feature_map.mask.tolist()

    broken = tmp_path / 'broken.json'
    broken.write_text('{"family": "haar"}')
    with pytest.raises(FormatException):
        WaveletFeatureMap.load_mask(str(broken))
