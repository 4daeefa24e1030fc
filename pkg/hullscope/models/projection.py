import enum
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

import hullscope.exceptions
from hullscope.constants import (
    INSIDE_TOL,
    MAX_ITERS,
    SUPPORT_TOL,
)
from hullscope.models.mixins import ModelSerializer


@dataclass(frozen=True)
class SolverConfig(ModelSerializer):
    """Stopping rules and reporting thresholds for hull projection."""
    gap_tol: float
    max_iters: int = MAX_ITERS
    inside_tol: float = INSIDE_TOL
    support_tol: float = SUPPORT_TOL
    record_trace: bool = False

    def __post_init__(self):
        if not self.gap_tol > 0:
            raise hullscope.exceptions.ArgumentException(
                'gap_tol must be positive.')
        if self.max_iters < 1:
            raise hullscope.exceptions.ArgumentException(
                'max_iters must be at least 1.')
        if not 0 < self.inside_tol < 1:
            raise hullscope.exceptions.ArgumentException(
                'inside_tol must lie in (0, 1).')
        if not 0 < self.support_tol < 1:
            raise hullscope.exceptions.ArgumentException(
                'support_tol must lie in (0, 1).')


@dataclass(eq=False)
class ProjectionResult(ModelSerializer):
    """
    Outcome of projecting one query onto the hull of the reference rows.

    The convex coefficients are kept sparse: `indices` lists every reference
    row with positive weight and `weights` holds those weights.
    """
    indices: np.ndarray
    weights: np.ndarray
    projection: np.ndarray
    dist_upper: float
    dist_lower: float
    gap: float
    iters: int
    converged: bool
    support: np.ndarray
    n_refs: int
    objective_trace: Optional[List[float]] = field(default=None)

    serialize_exclude_fields = ['projection', 'objective_trace']

    def coeffs(self):
        """Dense convex coefficient vector over all reference rows."""
        dense = np.zeros(self.n_refs)
        dense[self.indices] = self.weights
        return dense

    def support_weights(self):
        """Weights of the support rows, aligned with `support`."""
        lookup = dict(zip(self.indices.tolist(), self.weights.tolist()))
        return np.array([lookup[index] for index in self.support.tolist()])


class MembershipStatus(enum.Enum):
    INSIDE = 'inside'
    OUTSIDE = 'outside'
    UNCERTAIN = 'uncertain'


@dataclass(frozen=True)
class Membership(ModelSerializer):
    status: MembershipStatus
    result: ProjectionResult


@dataclass(frozen=True)
class SupportLabels(ModelSerializer):
    """Labels of the reference rows spanning the face nearest to a query."""
    labels: List[int]
    label_mass: dict
    majority_label: Optional[int]
    agrees: Optional[bool]
