from dataclasses import dataclass
from typing import Optional

import numpy as np

import hullscope.exceptions


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    An n by d matrix of points, one point per row, with optional labels.

    The matrix is stored as read-only 64-bit reals so a PointSet can be shared
    between workers without copying.
    """
    data: np.ndarray
    labels: Optional[np.ndarray] = None
    scale_hint: Optional[float] = None

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise hullscope.exceptions.ArgumentException(
                'A point set needs at least one row and one column, got '
                'shape %s.' % (data.shape,))
        if not np.all(np.isfinite(data)):
            raise hullscope.exceptions.ArgumentException(
                'Point set entries must be finite.')
        data.setflags(write=False)
        object.__setattr__(self, 'data', data)
        if self.labels is not None:
            labels = np.array(self.labels, dtype=np.int64).reshape(-1)
            if labels.shape[0] != data.shape[0]:
                raise hullscope.exceptions.ArgumentException(
                    'Expected %d labels, got %d.' % (data.shape[0], labels.shape[0]))
            if np.any(labels < 0):
                raise hullscope.exceptions.ArgumentException(
                    'Labels must be nonnegative.')
            labels.setflags(write=False)
            object.__setattr__(self, 'labels', labels)
        if self.scale_hint is not None:
            if not self.scale_hint > 0:
                raise hullscope.exceptions.ArgumentException(
                    'The scale hint must be positive.')
            object.__setattr__(self, 'scale_hint', float(self.scale_hint))

    @property
    def n(self):
        return self.data.shape[0]

    @property
    def d(self):
        return self.data.shape[1]

    def __len__(self):
        return self.n

    def take(self, indices):
        """A new point set holding the given rows, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        labels = None if self.labels is None else self.labels[indices]
        return PointSet(self.data[indices], labels, self.scale_hint)

    def with_data(self, data, scale_hint=None):
        """Same labels, new coordinates."""
        return PointSet(data, self.labels, scale_hint)
