"""Polynomial decision boundaries in the Legendre basis."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

import hullscope.exceptions
from hullscope.constants import LSTSQ_RELATIVE_CUTOFF
from hullscope.models.legendre_model import (
    Anchor,
    FitRegime,
    LegendreModel,
    RegimeKind,
)
from hullscope.models.mixins import ModelSerializer
from hullscope.report_schema import LEGENDRE_MODEL_SCHEMA
from hullscope.utilities.report_utilities import read_json, write_csv, write_json

logger = logging.getLogger('hullscope.legendre')


def legendre_eval(i, x):
    """P_i(x) by the Bonnet recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}."""
    if i < 0:
        raise hullscope.exceptions.ArgumentException(
            'Basis index must be nonnegative.')
    x = np.asarray(x, dtype=np.float64)
    previous = np.ones_like(x)
    if i == 0:
        return previous if previous.ndim else float(previous)
    current = x.copy()
    for k in range(1, i):
        previous, current = current, ((2 * k + 1) * x * current - k * previous) / (k + 1)
    return current if current.ndim else float(current)


def basis_matrix(degree, xs):
    """Matrix with entry (j, i) equal to P_i(xs[j])."""
    if degree < 0:
        raise hullscope.exceptions.ArgumentException(
            'Degree must be nonnegative.')
    xs = np.asarray(xs, dtype=np.float64).reshape(-1)
    basis = np.empty((xs.shape[0], degree + 1))
    basis[:, 0] = 1.0
    if degree >= 1:
        basis[:, 1] = xs
    for k in range(1, degree):
        basis[:, k + 1] = ((2 * k + 1) * xs * basis[:, k] - k * basis[:, k - 1]) / (k + 1)
    return basis


def signs(values):
    """Sign readout with zero counted as +1."""
    return np.where(np.asarray(values) >= 0.0, 1, -1)


def evaluate(model, xs):
    """Values of the model at abscissae given in the original coordinates."""
    return basis_matrix(model.degree, model.to_unit(xs)) @ model.coeffs


def _training_domain(xs):
    low, high = float(np.min(xs)), float(np.max(xs))
    if low == high:
        return low - 1.0, high + 1.0
    return low, high


def fit_boundary(xs, labels, degree, regime=None):
    """
    Least squares fit of sign targets, with the regime resolving any freedom.

    Abscissae are mapped affinely so the training data spans [-1, 1]; anchor
    points must lie outside that interval.
    """
    regime = regime or FitRegime.min_norm()
    xs = np.asarray(xs, dtype=np.float64).reshape(-1)
    labels = np.asarray(labels, dtype=np.float64).reshape(-1)
    if xs.shape[0] < 1 or xs.shape[0] != labels.shape[0]:
        raise hullscope.exceptions.ArgumentException(
            'Need as many labels as abscissae, and at least one of each.')
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(labels))):
        raise hullscope.exceptions.ArgumentException(
            'Abscissae and labels must be finite.')
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise hullscope.exceptions.ArgumentException(
            'Labels must be -1 or +1.')
    domain = _training_domain(xs)
    scaffold = LegendreModel(degree, np.zeros(degree + 1), regime, domain)
    design = basis_matrix(degree, scaffold.to_unit(xs))
    targets = labels.copy()
    if regime.kind is RegimeKind.ANCHORED:
        anchor_xs = np.array([anchor.x for anchor in regime.anchors])
        if np.any((anchor_xs >= xs.min()) & (anchor_xs <= xs.max())):
            raise hullscope.exceptions.ArgumentException(
                'Anchors must lie outside the training interval [%g, %g].'
                % (xs.min(), xs.max()))
        root_weights = np.sqrt([anchor.weight for anchor in regime.anchors])
        design = np.vstack([
            design,
            root_weights[:, None] * basis_matrix(degree, scaffold.to_unit(anchor_xs))])
        targets = np.concatenate([
            targets, root_weights * np.array([anchor.sign for anchor in regime.anchors])])
    if regime.kind is RegimeKind.RIDGE:
        normal = design.T @ design + regime.ridge_lambda * np.eye(degree + 1)
        coeffs = scipy.linalg.solve(normal, design.T @ targets, assume_a='pos')
    else:
        # Minimum-norm least squares through an SVD with a relative cutoff.
        coeffs = scipy.linalg.lstsq(design, targets, cond=LSTSQ_RELATIVE_CUTOFF)[0]
    model = LegendreModel(degree, coeffs, regime, domain)
    accuracy = float(np.mean(signs(evaluate(model, xs)) == labels))
    logger.debug('Degree %d %s fit: training sign accuracy %.3f.',
                 degree, regime.describe(), accuracy)
    return LegendreModel(degree, coeffs, regime, domain, training_accuracy=accuracy)


def training_accuracy(model, xs, labels):
    """Fraction of training points whose sign the model gets right."""
    return float(np.mean(signs(evaluate(model, xs)) == np.asarray(labels)))


@dataclass(frozen=True, eq=False)
class ExtrapolationProfile(ModelSerializer):
    xs: np.ndarray
    values: np.ndarray
    signs: np.ndarray
    sign_changes: np.ndarray


def extrapolation_profile(model, interval, resolution):
    """
    Values and signs of the model on a uniform grid.

    Sign changes are reported at the midpoint between the two grid nodes
    that straddle them.
    """
    low, high = interval
    if not low < high:
        raise hullscope.exceptions.ArgumentException(
            'The interval must have a < b.')
    if resolution < 2:
        raise hullscope.exceptions.ArgumentException(
            'The resolution must be at least 2.')
    grid = np.linspace(low, high, resolution)
    values = evaluate(model, grid)
    grid_signs = signs(values)
    flips = np.flatnonzero(grid_signs[1:] != grid_signs[:-1])
    changes = (grid[flips] + grid[flips + 1]) / 2.0
    return ExtrapolationProfile(grid, values, grid_signs, changes)


def regime_divergence(model_a, model_b, xs):
    """Absolute difference of two models at the given abscissae."""
    return np.abs(evaluate(model_a, xs) - evaluate(model_b, xs))


def alternating_dataset(changes):
    """changes + 1 equally spaced points on [-1, 1] with alternating labels."""
    if changes < 0:
        raise hullscope.exceptions.ArgumentException(
            'The number of sign changes must be nonnegative.')
    count = changes + 1
    xs = np.linspace(-1.0, 1.0, count) if count > 1 else np.zeros(1)
    labels = np.where(np.arange(count) % 2 == 0, 1, -1)
    return xs, labels


def parse_regime(text):
    """
    Parse a regime descriptor.

    Accepted forms: `minnorm`, `ridge:<lambda>` and
    `anchored:<x>=<sign>[@<weight>],...`, e.g. `anchored:2=+1,-2=-1@0.5`.
    """
    text = text.strip()
    kind, _, argument = text.partition(':')
    kind = kind.lower()
    try:
        if kind == RegimeKind.MIN_NORM.value and not argument:
            return FitRegime.min_norm()
        if kind == RegimeKind.RIDGE.value:
            return FitRegime.ridge(float(argument))
        if kind == RegimeKind.ANCHORED.value:
            anchors = []
            for item in argument.split(','):
                position, _, target = item.partition('=')
                sign, _, weight = target.partition('@')
                anchors.append(Anchor(float(position), int(float(sign)),
                                      float(weight) if weight else 1.0))
            return FitRegime.anchored(anchors)
    except ValueError:
        pass
    raise hullscope.exceptions.ArgumentException(
        'Cannot parse fit regime %r.' % text)


def save_model(model, path):
    return write_json(path, model.serialize(), LEGENDRE_MODEL_SCHEMA)


def load_model(path):
    data = read_json(path, LEGENDRE_MODEL_SCHEMA)
    regime_data = data['regime']
    regime = FitRegime(
        kind=RegimeKind(regime_data['kind']),
        ridge_lambda=regime_data['ridge_lambda'],
        anchors=tuple(Anchor(**anchor) for anchor in regime_data['anchors']))
    try:
        return LegendreModel(data['degree'], data['coeffs'], regime,
                             tuple(data['domain']))
    except hullscope.exceptions.ArgumentException as error:
        raise hullscope.exceptions.FormatException(
            '%s: %s' % (path, error.message))


def write_profile_csv(profile, path):
    rows = zip(profile.xs.tolist(), profile.values.tolist(), profile.signs.tolist())
    return write_csv(path, ['x', 'value', 'sign'], rows)
