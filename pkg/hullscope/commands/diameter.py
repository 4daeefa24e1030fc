"""Diameter of the training set, exact or by farthest-point sweeps."""

import logging

import hullscope.settings
from hullscope.commands.base import BaseCommand, add_format_argument
from hullscope.hull_geometry import diameter_exact, diameter_heuristic
from hullscope.ingest import subsample
from hullscope.utilities.report_utilities import write_json

logger = logging.getLogger('hullscope.commands.diameter')


class DiameterCommand(BaseCommand):
    name = 'diameter'
    help = 'Compute the diameter of the hull of the training points.'

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--train', nargs='+', required=True)
        add_format_argument(parser)
        method = parser.add_mutually_exclusive_group()
        method.add_argument('--exact', action='store_true',
                            help='Compare every pair of points.')
        method.add_argument('--sweeps', type=int, default=None,
                            help='Lower bound from this many farthest-point sweeps.')
        parser.add_argument('--subsample', type=int, default=None)
        parser.add_argument('--normalize', action='store_true')
        parser.add_argument('--out', required=True)

    def execute(self, executor):
        args = self.args
        refs = self.load(args.train, normalize=args.normalize)
        if args.subsample is not None and args.subsample < refs.n:
            refs = subsample(refs, args.subsample, args.seed)
        use_exact = args.exact or (
            args.sweeps is None
            and refs.n <= hullscope.settings.DIAMETER_EXACT_MAX_POINTS)
        report = {'n': refs.n, 'dimension': refs.d}
        if use_exact:
            # --exact lifts the size limit; the caller asked for the quadratic cost.
            report['value'] = diameter_exact(refs, max_points=refs.n)
            report['method'] = 'exact'
        else:
            sweeps = args.sweeps or hullscope.settings.DIAMETER_SWEEPS
            report['value'] = diameter_heuristic(refs, sweeps, args.seed)
            report['method'] = 'heuristic'
            report['sweeps'] = sweeps
        logger.info('Diameter of %d points: %g (%s).',
                    refs.n, report['value'], report['method'])
        write_json(self.output_path('diameter.json'), report)
