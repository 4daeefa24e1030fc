"""Descriptive statistics of hull distances and comparisons between sets."""

import logging

import numpy as np
import scipy.stats

import hullscope.exceptions
from hullscope.constants import JARQUE_BERA_MIN_SAMPLES
from hullscope.models.summary import (
    DiameterRatios,
    DistanceSummary,
    Histogram,
    SetComparison,
)
from hullscope.utilities.report_utilities import write_csv

logger = logging.getLogger('hullscope.distance_statistics')


def _as_values(values):
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.shape[0] < 1:
        raise hullscope.exceptions.ArgumentException(
            'At least one value is required.')
    if not np.all(np.isfinite(values)):
        raise hullscope.exceptions.ArgumentException(
            'Values must be finite.')
    return values


def histogram(values, bins):
    """
    Uniform bins over [min, max].

    Bins are half-open on the right except the last, which also holds the
    maximum, so every value lands in exactly one bin. A constant sample v has
    no spread to divide, so its bins cover [v - 0.5, v + 0.5].
    """
    if bins < 1:
        raise hullscope.exceptions.ArgumentException(
            'At least one histogram bin is required.')
    counts, edges = np.histogram(_as_values(values), bins=bins)
    return Histogram(edges, counts)


def summarize(values, bins=20):
    values = _as_values(values)
    n = values.shape[0]
    sample_std = float(np.std(values, ddof=1)) if n > 1 else 0.0
    degenerate = sample_std == 0.0
    skewness = kurtosis = statistic = p_value = None
    if not degenerate:
        skewness = float(scipy.stats.skew(values, bias=True))
        kurtosis = float(scipy.stats.kurtosis(values, fisher=True, bias=True))
        if n >= JARQUE_BERA_MIN_SAMPLES:
            statistic, p_value = (float(value) for value in scipy.stats.jarque_bera(values))
    else:
        logger.debug('Constant sample of %d values; moments omitted.', n)
    return DistanceSummary(
        n=n,
        mean=float(np.mean(values)),
        sample_std=sample_std,
        min=float(values.min()),
        max=float(values.max()),
        skewness=skewness,
        excess_kurtosis=kurtosis,
        jarque_bera=statistic,
        jarque_bera_p=p_value,
        degenerate=degenerate,
        histogram=histogram(values, bins))


def compare_sets(a, b):
    """Means, their ratio mean(b) / mean(a) and a two-sided Mann-Whitney U test."""
    a = _as_values(a)
    b = _as_values(b)
    mean_a = float(np.mean(a))
    mean_b = float(np.mean(b))
    with np.errstate(divide='ignore', invalid='ignore'):
        statistic, p_value = scipy.stats.mannwhitneyu(
            a, b, alternative='two-sided', method='asymptotic')
    p_value = float(p_value)
    return SetComparison(
        n_a=a.shape[0],
        n_b=b.shape[0],
        mean_a=mean_a,
        mean_b=mean_b,
        ratio=mean_b / mean_a if mean_a != 0.0 else None,
        u_statistic=float(statistic),
        p_value=p_value if np.isfinite(p_value) else None)


def distance_to_diameter_ratios(distances, diameter):
    """Largest and mean distance as fractions of the reference diameter."""
    distances = _as_values(distances)
    if diameter < 0:
        raise hullscope.exceptions.ArgumentException(
            'The diameter must be nonnegative.')
    if diameter == 0:
        return DiameterRatios(float(diameter), None, None)
    return DiameterRatios(float(diameter), float(distances.max() / diameter),
                          float(distances.mean() / diameter))


def write_histogram_csv(summary, path):
    return write_csv(path, ['left', 'right', 'count'], summary.histogram.rows())
