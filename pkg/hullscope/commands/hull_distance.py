"""Distances from query points to the hull of a training set."""

import logging
from collections import Counter

import numpy as np

import hullscope.exceptions
import hullscope.settings
from hullscope.commands.base import (
    BaseCommand,
    add_format_argument,
    add_solver_arguments,
    solver_overrides,
)
from hullscope.distance_statistics import (
    compare_sets,
    distance_to_diameter_ratios,
    summarize,
    write_histogram_csv,
)
from hullscope.hull_geometry import (
    batch_project,
    classify_membership,
    default_solver_config,
    diameter_exact,
    diameter_heuristic,
    nearest_neighbor_distances,
    reference_scale,
    support_labels,
)
from hullscope.ingest import gen_random_points, subsample
from hullscope.models import MembershipStatus, WaveletSpec
from hullscope.report_schema import HULL_DISTANCE_SUMMARY_SCHEMA
from hullscope.utilities.report_utilities import write_csv, write_json
from hullscope.wavelets import WaveletFeatureMap

logger = logging.getLogger('hullscope.commands.hull_distance')

# Seed offsets keep the query subsample and the random baseline independent
# of the training subsample drawn from the same --seed.
QUERY_SEED_OFFSET = 1
BASELINE_SEED_OFFSET = 2


class HullDistanceCommand(BaseCommand):
    name = 'hull-distance'
    help = 'Project query points onto the hull of the training points.'

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--train', nargs='+', required=True)
        parser.add_argument('--query', nargs='+', required=True)
        parser.add_argument('--train-labels', default=None)
        parser.add_argument('--query-labels', default=None)
        add_format_argument(parser)
        add_solver_arguments(parser)
        parser.add_argument('--subsample', type=int, default=None,
                            help='Rows of the training set to keep.')
        parser.add_argument('--query-subsample', type=int, default=None)
        parser.add_argument('--stratified', action='store_true',
                            help='Balance subsamples across labels.')
        parser.add_argument('--normalize', action='store_true',
                            help='Scale pixel data into [0, 1].')
        parser.add_argument('--shape', default=None,
                            help='HxWxC; enables the wavelet stage.')
        parser.add_argument('--wavelet-family', default=None)
        parser.add_argument('--wavelet-levels', type=int, default=None)
        parser.add_argument('--keep-top', type=int, default=None)
        parser.add_argument('--random-baseline', type=int, default=None,
                            help='Also project this many uniform random points.')
        parser.add_argument('--diameter-sweeps', type=int, default=None,
                            help='Estimate the diameter with this many sweeps.')
        parser.add_argument('--bins', type=int, default=20)
        parser.add_argument('--max-unconverged-fraction', type=float,
                            default=hullscope.settings.UNCONVERGED_FRACTION_MAX)
        parser.add_argument('--out', required=True)

    def seeds(self):
        seed = self.args.seed
        return {
            'seed': seed,
            'train_subsample': seed,
            'query_subsample': seed + QUERY_SEED_OFFSET,
            'random_baseline': seed + BASELINE_SEED_OFFSET,
            'diameter': seed,
        }

    def _load_sets(self):
        args = self.args
        train = self.load(args.train, args.train_labels, args.normalize)
        query = self.load(args.query, args.query_labels, args.normalize)
        if train.d != query.d:
            raise hullscope.exceptions.ArgumentException(
                'Training points have dimension %d but queries have %d.'
                % (train.d, query.d))
        if args.subsample is not None:
            train = subsample(train, args.subsample, args.seed, args.stratified)
        if args.query_subsample is not None:
            query = subsample(query, args.query_subsample,
                              args.seed + QUERY_SEED_OFFSET, args.stratified)
        logger.info('Using %d training and %d query points of dimension %d.',
                    train.n, query.n, train.d)
        return train, query

    def _wavelet_stage(self, train, others):
        args = self.args
        spec = WaveletSpec(
            family=args.wavelet_family or hullscope.settings.WAVELET_FAMILY,
            levels=args.wavelet_levels or hullscope.settings.WAVELET_LEVELS,
            keep_top=args.keep_top)
        feature_map = WaveletFeatureMap(args.shape, spec)
        refs = feature_map.fit(train)
        if spec.keep_top is not None:
            feature_map.save_mask(self.output_path('wavelet_mask.json'))
        return refs, [feature_map.transform(point_set) for point_set in others]

    def _diameter(self, refs):
        sweeps = self.args.diameter_sweeps
        if sweeps is None and refs.n <= hullscope.settings.DIAMETER_EXACT_MAX_POINTS:
            return diameter_exact(refs), 'exact'
        sweeps = sweeps or hullscope.settings.DIAMETER_SWEEPS
        return diameter_heuristic(refs, sweeps, self.args.seed), 'heuristic'

    def execute(self, executor):
        args = self.args
        train, query = self._load_sets()
        baseline = None
        if args.random_baseline:
            # Uniform in the value range of the training points.
            low, high = float(train.data.min()), float(train.data.max())
            baseline = gen_random_points(args.random_baseline, train.d, low, high,
                                         args.seed + BASELINE_SEED_OFFSET)
        refs = train
        if args.shape is not None:
            others = [query] if baseline is None else [query, baseline]
            refs, transformed = self._wavelet_stage(train, others)
            query = transformed[0]
            baseline = transformed[1] if baseline is not None else None
        if refs.n < 2:
            raise hullscope.exceptions.ArgumentException(
                'The training set needs at least two points.')

        scale = reference_scale(refs)
        config = default_solver_config(refs, **solver_overrides(args, scale))
        results = batch_project(refs, query.data, config, executor)
        memberships = [classify_membership(result, scale, config) for result in results]
        nearest = nearest_neighbor_distances(refs, query.data)
        self._write_distances(query, results, memberships, nearest)
        self._write_supports(refs, query, results)

        upper = np.array([result.dist_upper for result in results])
        lower = np.array([result.dist_lower for result in results])
        upper_summary = summarize(upper, args.bins)
        write_histogram_csv(upper_summary, self.output_path('histogram.csv'))
        diameter, method = self._diameter(refs)
        counts = Counter(membership.status for membership in memberships)
        unconverged = sum(not result.converged for result in results)
        summary = {
            'n_train': refs.n,
            'n_query': query.n,
            'dimension': refs.d,
            'reference_scale': scale,
            'gap_tol': config.gap_tol,
            'membership': {status.value: counts.get(status, 0)
                           for status in MembershipStatus},
            'outside_fraction': counts.get(MembershipStatus.OUTSIDE, 0) / query.n,
            'unconverged': unconverged,
            'upper': upper_summary.serialize(),
            'lower': summarize(lower, args.bins).serialize(),
            'nearest_neighbor': summarize(nearest, args.bins).serialize(),
            'diameter': {'value': diameter, 'method': method},
            'diameter_ratios': distance_to_diameter_ratios(upper, diameter).serialize(),
        }
        if refs.labels is not None and query.labels is not None:
            agreements = [support_labels(result, refs, label).agrees
                          for result, label in zip(results, query.labels.tolist())]
            summary['support_label_agreement'] = float(np.mean(
                [bool(agrees) for agrees in agreements]))
        if baseline is not None:
            summary['random_baseline'] = self._baseline(refs, baseline, config,
                                                        executor, upper)
        write_json(self.output_path('summary.json'), summary,
                   HULL_DISTANCE_SUMMARY_SCHEMA)
        logger.info('%d of %d queries are outside the hull.',
                    counts.get(MembershipStatus.OUTSIDE, 0), query.n)

        if unconverged / query.n > args.max_unconverged_fraction:
            raise hullscope.exceptions.UnconvergedRunException(
                unconverged, query.n, args.max_unconverged_fraction)

    def _baseline(self, refs, baseline, config, executor, query_distances):
        results = batch_project(refs, baseline.data, config, executor)
        distances = np.array([result.dist_upper for result in results])
        write_csv(self.output_path('random_distances.csv'),
                  ['index', 'dist_upper', 'dist_lower', 'converged'],
                  ((index, result.dist_upper, result.dist_lower, int(result.converged))
                   for index, result in enumerate(results)))
        return {
            'n': baseline.n,
            'distances': summarize(distances, self.args.bins).serialize(),
            'comparison': compare_sets(query_distances, distances).serialize(),
        }

    def _write_distances(self, query, results, memberships, nearest):
        header = ['index', 'dist_upper', 'dist_lower', 'gap', 'iters',
                  'converged', 'membership', 'nearest_neighbor', 'label']
        labels = query.labels.tolist() if query.labels is not None \
            else [''] * query.n
        rows = (
            (index, result.dist_upper, result.dist_lower, result.gap, result.iters,
             int(result.converged), membership.status.value, float(distance), label)
            for index, (result, membership, distance, label)
            in enumerate(zip(results, memberships, nearest, labels)))
        write_csv(self.output_path('distances.csv'), header, rows)

    def _write_supports(self, refs, query, results):
        header = ['query_index', 'ref_index', 'weight', 'ref_label']
        rows = []
        for index, result in enumerate(results):
            for ref_index, weight in zip(result.support.tolist(),
                                         result.support_weights().tolist()):
                label = int(refs.labels[ref_index]) if refs.labels is not None else ''
                rows.append((index, ref_index, weight, label))
        write_csv(self.output_path('supports.csv'), header, rows)
