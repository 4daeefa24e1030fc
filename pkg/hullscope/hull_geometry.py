"""Projection of query points onto the convex hull of a reference set."""

import logging
from collections import defaultdict

import numpy as np
from scipy.spatial.distance import cdist

import hullscope.exceptions
import hullscope.settings
from hullscope.app import SerialExecutor
from hullscope.constants import (
    DIAMETER_BLOCK_ROWS,
    DIRECTION_DEGENERATE_RELATIVE,
)
from hullscope.models import (
    Membership,
    MembershipStatus,
    PointSet,
    ProjectionResult,
    SolverConfig,
    SupportLabels,
)
from hullscope.utilities.random_utilities import make_generator

logger = logging.getLogger('hullscope.hull_geometry')

# Iterations between recomputing the iterate from its coefficients.
_REFRESH_EVERY = 256
# Candidates within this relative slack of a block maximum are re-measured
# exactly, since the Gram expansion loses digits for nearby points.
_GRAM_SLACK = 1e-9


def _as_matrix(points):
    if isinstance(points, PointSet):
        return points.data
    return np.asarray(points, dtype=np.float64)


def _as_vector(query, d):
    query = np.asarray(query, dtype=np.float64).reshape(-1)
    if query.shape[0] != d:
        raise hullscope.exceptions.ArgumentException(
            'Query has dimension %d but the reference set has dimension %d.'
            % (query.shape[0], d))
    return query


def reference_scale(refs):
    """The largest row norm of the reference set."""
    return float(np.max(np.linalg.norm(_as_matrix(refs), axis=1)))


def default_solver_config(refs, **overrides):
    """Solver configuration from settings, with the gap scaled to the data."""
    scale = reference_scale(refs) or 1.0
    options = {
        'gap_tol': hullscope.settings.GAP_TOL_RELATIVE * scale ** 2,
        'max_iters': hullscope.settings.MAX_ITERS,
        'inside_tol': hullscope.settings.INSIDE_TOL,
        'support_tol': hullscope.settings.SUPPORT_TOL,
    }
    options.update({key: value for key, value in overrides.items()
                    if value is not None})
    return SolverConfig(**options)


def lmo(refs, grad):
    """Index of the reference row minimising the inner product with grad."""
    matrix = _as_matrix(refs)
    grad = _as_vector(grad, matrix.shape[1])
    # argmin returns the first minimiser, so ties go to the lowest index.
    return int(np.argmin(matrix @ grad))


class HullProjector:
    """
    Away-step Frank-Wolfe solver for min ||V^T a - q||^2 over the simplex.

    One projector is built per reference set and shared by every query; all
    per-query state lives in `project`, so concurrent calls are safe.
    """

    def __init__(self, refs, config):
        self.matrix = _as_matrix(refs)
        self.config = config
        self.squared_norms = np.einsum('ij,ij->i', self.matrix, self.matrix)

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def d(self):
        return self.matrix.shape[1]

    def _combine(self, alpha):
        """Iterate recomputed from its coefficients, with drift removed."""
        active = np.flatnonzero(alpha)
        alpha[active] /= alpha[active].sum()
        return alpha[active] @ self.matrix[active]

    def project(self, query):
        """Project a single query and certify its distance to the hull."""
        query = _as_vector(query, self.d)
        matrix = self.matrix
        config = self.config
        # Start from the nearest reference row.
        start = int(np.argmin(self.squared_norms - 2.0 * (matrix @ query)))
        alpha = np.zeros(self.n)
        alpha[start] = 1.0
        point = matrix[start].copy()
        residual = point - query
        objective = float(residual @ residual)
        trace = [objective] if config.record_trace else None
        iters = 0
        fresh = True
        while True:
            # The gradient of the objective with respect to the point is
            # 2 * residual; scores hold half its inner products with the rows.
            scores = matrix @ residual
            toward = int(np.argmin(scores))
            point_score = float(residual @ point)
            gap = 2.0 * (point_score - float(scores[toward]))
            if gap <= config.gap_tol or iters >= config.max_iters:
                if not fresh:
                    point = self._combine(alpha)
                    residual = point - query
                    fresh = True
                    continue
                break
            active = np.flatnonzero(alpha)
            away = int(active[np.argmax(scores[active])])
            away_gap = 2.0 * (float(scores[away]) - point_score)
            if gap >= away_gap:
                direction = matrix[toward] - point
                step_max = 1.0
            else:
                direction = point - matrix[away]
                weight = alpha[away]
                step_max = weight / (1.0 - weight) if weight < 1.0 else np.inf
            squared_length = float(direction @ direction)
            if squared_length == 0.0:
                if not fresh:
                    point = self._combine(alpha)
                    residual = point - query
                    fresh = True
                    continue
                break
            step = -float(residual @ direction) / squared_length
            step = min(max(step, 0.0), step_max)
            if gap >= away_gap:
                if step == 1.0:
                    alpha[:] = 0.0
                    alpha[toward] = 1.0
                else:
                    alpha *= 1.0 - step
                    alpha[toward] += step
            else:
                alpha *= 1.0 + step
                alpha[away] -= step
                if step == step_max or alpha[away] <= 0.0:
                    # Drop step: the away vertex leaves the active set.
                    alpha[away] = 0.0
            point = point + step * direction
            residual = point - query
            iters += 1
            fresh = False
            if iters % _REFRESH_EVERY == 0:
                point = self._combine(alpha)
                residual = point - query
                fresh = True
            if trace is not None:
                trace.append(float(residual @ residual))

        indices = np.flatnonzero(alpha)
        weights = alpha[indices]
        squared_distance = float(residual @ residual)
        gap = max(gap, 0.0)
        dist_upper = float(np.sqrt(squared_distance))
        dist_lower = float(np.sqrt(max(0.0, squared_distance - gap)))
        converged = gap <= config.gap_tol
        if not converged:
            logger.warning(
                'Projection stopped after %d iterations with gap %g above '
                'tolerance %g; distance lies in [%g, %g].',
                iters, gap, config.gap_tol, dist_lower, dist_upper)
        else:
            logger.debug('Projection converged in %d iterations, distance %g.',
                         iters, dist_upper)
        return ProjectionResult(
            indices=indices,
            weights=weights,
            projection=point,
            dist_upper=dist_upper,
            dist_lower=dist_lower,
            gap=gap,
            iters=iters,
            converged=converged,
            support=indices[weights > config.support_tol],
            n_refs=self.n,
            objective_trace=trace,
        )


def project_onto_hull(refs, query, config):
    """Euclidean projection of one query onto the hull of the reference rows."""
    return HullProjector(refs, config).project(query)


def batch_project(refs, queries, config, executor=None):
    """
    Project every query row, in input order.

    The executor only changes where the work runs; each query goes through the
    same code path as `project_onto_hull`, so results do not depend on it.
    """
    rows = _as_matrix(queries)
    if rows.size == 0:
        return []
    projector = HullProjector(refs, config)
    if rows.ndim != 2 or rows.shape[1] != projector.d:
        raise hullscope.exceptions.ArgumentException(
            'Queries have shape %s but the reference set has dimension %d.'
            % (rows.shape, projector.d))
    executor = executor or SerialExecutor()
    results = list(executor.map(projector.project, list(rows)))
    logger.info('Projected %d queries onto a hull of %d points.',
                len(results), projector.n)
    return results


def direction_to_hull(result, query, scale, inside_tol=None):
    """
    Unit vector pointing from the hull to the query.

    Only a query the certificate proves outside has a direction: the lower
    distance bound must be positive and the upper bound must clear the inside
    tolerance, both relative to the reference scale.
    """
    if not scale > 0:
        raise hullscope.exceptions.ArgumentException(
            'The reference scale must be positive.')
    if inside_tol is None:
        inside_tol = hullscope.settings.INSIDE_TOL
    query = np.asarray(query, dtype=np.float64).reshape(-1)
    threshold = max(inside_tol, DIRECTION_DEGENERATE_RELATIVE) * scale
    if result.dist_lower <= 0.0 or result.dist_upper <= threshold:
        raise hullscope.exceptions.DegenerateDirectionException()
    return (query - result.projection) / result.dist_upper


def classify_membership(result, refs_scale, config):
    """Decide inside, outside or uncertain from the certified interval."""
    if not refs_scale > 0:
        raise hullscope.exceptions.ArgumentException(
            'The reference scale must be positive.')
    threshold = config.inside_tol * refs_scale
    if result.dist_upper <= threshold:
        status = MembershipStatus.INSIDE
    elif result.dist_lower > threshold:
        status = MembershipStatus.OUTSIDE
    else:
        status = MembershipStatus.UNCERTAIN
    return Membership(status=status, result=result)


def support_labels(result, refs, query_label=None):
    """Labels of the support rows and the weight each label carries."""
    if refs.labels is None:
        raise hullscope.exceptions.ArgumentException(
            'The reference set has no labels.')
    labels = refs.labels[result.support]
    label_mass = defaultdict(float)
    for label, weight in zip(labels.tolist(), result.support_weights().tolist()):
        label_mass[label] += weight
    majority_label = None
    if label_mass:
        # Heaviest label; ties go to the smallest label.
        majority_label = min(label_mass, key=lambda label: (-label_mass[label], label))
    agrees = None
    if query_label is not None and majority_label is not None:
        agrees = int(query_label) == majority_label
    return SupportLabels(
        labels=labels.tolist(),
        label_mass=dict(sorted(label_mass.items())),
        majority_label=majority_label,
        agrees=agrees)


def _pair_distance(matrix, first, second):
    return float(np.linalg.norm(matrix[first] - matrix[second]))


def diameter_exact(refs, max_points=None):
    """
    Largest pairwise distance of the reference rows.

    The hull of a finite set has the same diameter as the set itself. Cost is
    quadratic in n, so sets above `max_points` are refused.
    """
    matrix = _as_matrix(refs)
    n = matrix.shape[0]
    if n < 2:
        raise hullscope.exceptions.ArgumentException(
            'The diameter needs at least two points.')
    if max_points is None:
        max_points = hullscope.settings.DIAMETER_EXACT_MAX_POINTS
    if n > max_points:
        raise hullscope.exceptions.ArgumentException(
            'Exact diameter of %d points exceeds the limit of %d; use the '
            'heuristic or raise the limit.' % (n, max_points))
    squared_norms = np.einsum('ij,ij->i', matrix, matrix)
    best = 0.0
    for start in range(0, n, DIAMETER_BLOCK_ROWS):
        stop = min(start + DIAMETER_BLOCK_ROWS, n)
        squared = (squared_norms[start:stop, None] + squared_norms[None, start:]
                   - 2.0 * (matrix[start:stop] @ matrix[start:].T))
        block_max = float(squared.max())
        if block_max <= 0.0 or block_max < best ** 2 * (1.0 - _GRAM_SLACK):
            continue
        cutoff = max(block_max, best ** 2) * (1.0 - _GRAM_SLACK)
        rows, columns = np.nonzero(squared >= cutoff)
        for row, column in zip(rows.tolist(), columns.tolist()):
            best = max(best, _pair_distance(matrix, start + row, start + column))
    return best


def _farthest_from(matrix, squared_norms, index):
    squared = squared_norms + squared_norms[index] - 2.0 * (matrix @ matrix[index])
    return int(np.argmax(squared))


def diameter_heuristic(refs, sweeps, seed):
    """
    Lower bound on the diameter from iterated farthest-point sweeps.

    Each sweep starts at a seeded random row and repeatedly jumps to the row
    farthest from the current one until the distance stops growing. The value
    returned is the distance of an actual pair of rows.
    """
    matrix = _as_matrix(refs)
    n = matrix.shape[0]
    if n < 2:
        raise hullscope.exceptions.ArgumentException(
            'The diameter needs at least two points.')
    if sweeps < 1:
        raise hullscope.exceptions.ArgumentException(
            'At least one sweep is required.')
    squared_norms = np.einsum('ij,ij->i', matrix, matrix)
    starts = make_generator(seed).integers(0, n, size=sweeps)
    best = 0.0
    best_pair = None
    for start in starts.tolist():
        current = start
        reached = -1.0
        while True:
            farthest = _farthest_from(matrix, squared_norms, current)
            distance = _pair_distance(matrix, current, farthest)
            if distance <= reached:
                break
            reached = distance
            if distance > best:
                best = distance
                best_pair = (current, farthest)
            current = farthest
    logger.debug('Diameter lower bound %g from pair %s.', best, best_pair)
    return best


def nearest_neighbor_distances(refs, queries):
    """Distance from each query row to its nearest reference row."""
    matrix = _as_matrix(refs)
    rows = _as_matrix(queries)
    if rows.size == 0:
        return np.zeros(0)
    distances = np.empty(rows.shape[0])
    for start in range(0, rows.shape[0], DIAMETER_BLOCK_ROWS):
        block = rows[start:start + DIAMETER_BLOCK_ROWS]
        distances[start:start + block.shape[0]] = cdist(block, matrix).min(axis=1)
    return distances
