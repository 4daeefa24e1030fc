"""Transform a point set into wavelet coefficients."""

import logging

import hullscope.exceptions
import hullscope.settings
from hullscope.commands.base import BaseCommand, add_format_argument
from hullscope.ingest import save_fmat
from hullscope.models import WaveletSpec
from hullscope.wavelets import WaveletFeatureMap, parse_shape

logger = logging.getLogger('hullscope.commands.wavelet')


class WaveletCommand(BaseCommand):
    name = 'wavelet'
    help = 'Write the wavelet coefficients of every row as an FMAT1 file.'
    output_is_directory = False

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--input', nargs='+', required=True)
        parser.add_argument('--labels', default=None)
        add_format_argument(parser)
        parser.add_argument('--shape', required=True, help='HxWxC')
        parser.add_argument('--family', default=hullscope.settings.WAVELET_FAMILY,
                            help='haar or db4')
        parser.add_argument('--levels', type=int,
                            default=hullscope.settings.WAVELET_LEVELS)
        parser.add_argument('--keep-top', type=int, default=None)
        parser.add_argument('--mask', default=None,
                            help='Apply a mask saved by an earlier run.')
        parser.add_argument('--normalize', action='store_true')
        parser.add_argument('--out', required=True)

    def execute(self, executor):
        args = self.args
        point_set = self.load(args.input, args.labels, args.normalize)
        if args.mask is not None:
            feature_map = WaveletFeatureMap.load_mask(args.mask)
            self.manifest.add_input(args.mask)
            if feature_map.shape != parse_shape(args.shape):
                raise hullscope.exceptions.ArgumentException(
                    'The mask was fitted for shape %s, not %s.'
                    % ('x'.join(map(str, feature_map.shape)), args.shape))
            coefficients = feature_map.transform(point_set)
        else:
            spec = WaveletSpec(family=args.family, levels=args.levels,
                               keep_top=args.keep_top)
            feature_map = WaveletFeatureMap(args.shape, spec)
            coefficients = feature_map.fit(point_set)
            if spec.keep_top is not None:
                feature_map.save_mask(self.manifest.add_output(args.out + '.mask.json'))
        save_fmat(coefficients, self.manifest.add_output(args.out))
        logger.info('Wrote %d rows of %d coefficients to %s.',
                    coefficients.n, coefficients.d, args.out)
