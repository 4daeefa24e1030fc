"""Uniform random points shaped like a real dataset."""

import logging

from hullscope.commands.base import BaseCommand, add_format_argument
from hullscope.ingest import gen_random_points, save_fmat

logger = logging.getLogger('hullscope.commands.random_baseline')


class RandomBaselineCommand(BaseCommand):
    name = 'random-baseline'
    help = 'Write uniform random points matching the dimension and value range of a dataset.'
    output_is_directory = False

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--like', nargs='+', required=True)
        add_format_argument(parser)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--normalize', action='store_true')
        parser.add_argument('--out', required=True)

    def execute(self, executor):
        args = self.args
        like = self.load(args.like, normalize=args.normalize)
        low, high = float(like.data.min()), float(like.data.max())
        points = gen_random_points(args.n, like.d, low, high, args.seed)
        save_fmat(points, self.manifest.add_output(args.out))
        logger.info('Wrote %d random points in [%g, %g]^%d to %s.',
                    args.n, low, high, like.d, args.out)
