import enum
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

import hullscope.exceptions
from hullscope.models.mixins import ModelSerializer


class RegimeKind(enum.Enum):
    MIN_NORM = 'minnorm'
    RIDGE = 'ridge'
    ANCHORED = 'anchored'


@dataclass(frozen=True)
class Anchor(ModelSerializer):
    """A target sign requested at an abscissa outside the training data."""
    x: float
    sign: int
    weight: float = 1.0

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise hullscope.exceptions.ArgumentException(
                'Anchor signs must be -1 or +1.')
        if not self.weight > 0:
            raise hullscope.exceptions.ArgumentException(
                'Anchor weights must be positive.')


@dataclass(frozen=True)
class FitRegime(ModelSerializer):
    """How the freedom left by an under-determined fit is resolved."""
    kind: RegimeKind = RegimeKind.MIN_NORM
    ridge_lambda: Optional[float] = None
    anchors: Tuple[Anchor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind is RegimeKind.RIDGE and not (self.ridge_lambda or 0) > 0:
            raise hullscope.exceptions.ArgumentException(
                'Ridge fits need a positive lambda.')
        if self.kind is RegimeKind.ANCHORED and not self.anchors:
            raise hullscope.exceptions.ArgumentException(
                'Anchored fits need at least one anchor.')
        object.__setattr__(self, 'anchors', tuple(self.anchors))

    @classmethod
    def min_norm(cls):
        return cls(RegimeKind.MIN_NORM)

    @classmethod
    def ridge(cls, ridge_lambda):
        return cls(RegimeKind.RIDGE, ridge_lambda=float(ridge_lambda))

    @classmethod
    def anchored(cls, anchors):
        return cls(RegimeKind.ANCHORED, anchors=tuple(
            anchor if isinstance(anchor, Anchor) else Anchor(*anchor)
            for anchor in anchors))

    def describe(self):
        if self.kind is RegimeKind.RIDGE:
            return 'ridge:%g' % self.ridge_lambda
        if self.kind is RegimeKind.ANCHORED:
            return 'anchored:' + ','.join(
                '%g=%+d@%g' % (anchor.x, anchor.sign, anchor.weight)
                for anchor in self.anchors)
        return 'minnorm'


@dataclass(frozen=True, eq=False)
class LegendreModel(ModelSerializer):
    """
    A polynomial f(x) = sum_i c_i P_i(t) in the Legendre basis.

    `domain` is the training interval mapped affinely onto t in [-1, 1].
    """
    degree: int
    coeffs: np.ndarray
    regime: FitRegime
    domain: Tuple[float, float] = (-1.0, 1.0)
    training_accuracy: Optional[float] = None

    serialize_exclude_fields = ['training_accuracy']

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.float64).reshape(-1)
        if coeffs.shape[0] != self.degree + 1:
            raise hullscope.exceptions.ArgumentException(
                'Degree %d needs %d coefficients, got %d.'
                % (self.degree, self.degree + 1, coeffs.shape[0]))
        if not np.all(np.isfinite(coeffs)):
            raise hullscope.exceptions.ArgumentException(
                'Coefficients must be finite.')
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'domain', tuple(float(end) for end in self.domain))

    def to_unit(self, xs):
        """Map abscissae from the training interval onto [-1, 1]."""
        low, high = self.domain
        return (2.0 * np.asarray(xs, dtype=np.float64) - (low + high)) / (high - low)
