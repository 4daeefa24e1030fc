"""Export the direction from the hull to one query, e.g. as an image."""

import logging

import hullscope.exceptions
from hullscope.commands.base import (
    BaseCommand,
    add_format_argument,
    add_solver_arguments,
    solver_overrides,
)
from hullscope.hull_geometry import (
    classify_membership,
    default_solver_config,
    direction_to_hull,
    project_onto_hull,
    reference_scale,
)
from hullscope.ingest import save_fmat
from hullscope.models import PointSet
from hullscope.utilities.report_utilities import write_json

logger = logging.getLogger('hullscope.commands.direction')


class DirectionCommand(BaseCommand):
    name = 'direction'
    help = 'Write the unit direction from the hull to a query as an FMAT1 row.'
    output_is_directory = False

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--train', nargs='+', required=True)
        parser.add_argument('--query', nargs='+', required=True)
        add_format_argument(parser)
        add_solver_arguments(parser)
        parser.add_argument('--index', type=int, required=True,
                            help='Row of the query set.')
        parser.add_argument('--normalize', action='store_true')
        parser.add_argument('--out', required=True)

    def execute(self, executor):
        args = self.args
        refs = self.load(args.train, normalize=args.normalize)
        queries = self.load(args.query, normalize=args.normalize)
        if not 0 <= args.index < queries.n:
            raise hullscope.exceptions.ArgumentException(
                'Index %d is outside the %d query rows.' % (args.index, queries.n))
        query = queries.data[args.index]
        scale = reference_scale(refs)
        config = default_solver_config(refs, **solver_overrides(args, scale))
        result = project_onto_hull(refs, query, config)
        membership = classify_membership(result, scale, config)
        direction = direction_to_hull(result, query, scale, config.inside_tol)
        # Row 0 is the unit direction, row 1 the query's nearest hull point.
        save_fmat(PointSet([direction, result.projection]),
                  self.manifest.add_output(args.out))
        report = {
            'index': args.index,
            'membership': membership.status.value,
            'result': result.serialize(),
        }
        write_json(self.manifest.add_output(args.out + '.json'), report)
        logger.info('Query %d lies %g from the hull.', args.index, result.dist_upper)
