from dataclasses import dataclass
from typing import Optional

import numpy as np

from hullscope.models.mixins import ModelSerializer


@dataclass(frozen=True, eq=False)
class Histogram(ModelSerializer):
    """Uniform-width bins; `edges` has one more entry than `counts`."""
    edges: np.ndarray
    counts: np.ndarray

    def rows(self):
        """(left, right, count) per bin."""
        return zip(self.edges[:-1].tolist(), self.edges[1:].tolist(),
                   self.counts.tolist())


@dataclass(frozen=True, eq=False)
class DistanceSummary(ModelSerializer):
    """
    Descriptive statistics of a distance distribution.

    Skewness and excess kurtosis use the biased moment estimators. The
    Jarque-Bera fields are None when the sample is too small or constant;
    a constant sample also sets `degenerate`, and its histogram spans
    [v - 0.5, v + 0.5] around the single value v.
    """
    n: int
    mean: float
    sample_std: float
    min: float
    max: float
    skewness: Optional[float]
    excess_kurtosis: Optional[float]
    jarque_bera: Optional[float]
    jarque_bera_p: Optional[float]
    degenerate: bool
    histogram: Histogram


@dataclass(frozen=True)
class SetComparison(ModelSerializer):
    """Two distance sets compared by their means and a rank-sum test."""
    n_a: int
    n_b: int
    mean_a: float
    mean_b: float
    # mean_b / mean_a, None when mean_a is zero.
    ratio: Optional[float]
    u_statistic: float
    p_value: Optional[float]


@dataclass(frozen=True)
class DiameterRatios(ModelSerializer):
    diameter: float
    max_ratio: Optional[float]
    mean_ratio: Optional[float]
