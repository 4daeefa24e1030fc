"""Shared plumbing of the subcommands."""

import argparse
import logging
import os

from jsonschema import validate as schema_validate, ValidationError

import hullscope.exceptions
from hullscope.ingest import FORMATS, load_pointset, normalized
from hullscope.report_schema import RUN_CONFIG_SCHEMA
from hullscope.utilities.manifest_utilities import RunManifest
from hullscope.utilities.report_utilities import ensure_directory

logger = logging.getLogger('hullscope.commands')

MANIFEST_NAME = 'manifest.json'


def int_list(text):
    """argparse type for comma separated integers."""
    try:
        values = [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('%r is not a list of integers.' % text)
    if not values:
        raise argparse.ArgumentTypeError('The list is empty.')
    return values


def float_pair(text):
    """argparse type for `a,b`."""
    try:
        first, second = (float(item) for item in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('%r is not of the form a,b.' % text)
    return first, second


def add_format_argument(parser):
    parser.add_argument(
        '--format', dest='data_format', default='auto',
        choices=('auto',) + FORMATS,
        help='Input format; auto sniffs the leading bytes.')


def add_solver_arguments(parser):
    parser.add_argument(
        '--gap-tol', type=float, default=None,
        help='Duality gap tolerance relative to the squared reference scale.')
    parser.add_argument('--inside-tol', type=float, default=None)
    parser.add_argument('--max-iters', type=int, default=None)


def solver_overrides(args, scale):
    return {
        'gap_tol': None if args.gap_tol is None else args.gap_tol * (scale or 1.0) ** 2,
        'inside_tol': args.inside_tol,
        'max_iters': args.max_iters,
    }


class RunConfigValidator:
    """Validate the flags of a run before any work starts."""

    def __init__(self, data):
        self.data = data
        self.validated = False

    def validate(self):
        try:
            schema_validate(self.data, RUN_CONFIG_SCHEMA)
        except ValidationError as error:
            field = '.'.join(str(part) for part in error.path) or 'flags'
            raise hullscope.exceptions.ArgumentException(
                'Invalid %s: %s' % (field, error.message))
        self.validated = True
        return True


class BaseCommand:
    """
    A subcommand: its flags, its work and the manifest of the run.

    Commands whose `--out` is a directory write `manifest.json` inside it;
    commands writing a single file put `<file>.manifest.json` beside it.
    """
    name = None
    help = None
    output_is_directory = True

    def __init__(self, args):
        self.args = args
        self.manifest = None

    @staticmethod
    def add_arguments(parser):
        raise NotImplementedError

    def execute(self, executor):
        raise NotImplementedError

    def seeds(self):
        return {'seed': self.args.seed}

    def flags(self):
        return {key: value for key, value in sorted(vars(self.args).items())
                if key != 'command_class'}

    def run_config(self):
        config = {
            'command': self.name,
            'threads': self.args.threads,
            'seed': self.args.seed,
        }
        for key in RUN_CONFIG_SCHEMA['properties']:
            if key not in config and hasattr(self.args, key):
                config[key] = getattr(self.args, key)
        return config

    def output_path(self, name):
        """Path of an output file, recorded in the manifest."""
        return self.manifest.add_output(os.path.join(self.args.out, name))

    def manifest_path(self):
        if self.output_is_directory:
            return os.path.join(self.args.out, MANIFEST_NAME)
        return self.args.out + '.manifest.json'

    def load(self, paths, label_path=None, normalize=False):
        point_set = load_pointset(paths, self.args.data_format, label_path)
        self.manifest.add_inputs(paths)
        self.manifest.add_input(label_path)
        return normalized(point_set) if normalize else point_set

    def validate(self):
        return RunConfigValidator(self.run_config()).validate()

    def run(self, executor):
        self.manifest = RunManifest(self.name, self.flags(), self.seeds())
        if self.output_is_directory:
            ensure_directory(self.args.out)
        else:
            ensure_directory(os.path.dirname(os.path.abspath(self.args.out)))
        try:
            self.execute(executor)
        except hullscope.exceptions.UnconvergedRunException:
            # Outputs are complete; the manifest still belongs with them.
            self.manifest.finish().write(self.manifest_path())
            raise
        self.manifest.finish().write(self.manifest_path())
        logger.info('Wrote %s outputs to %s.', self.name, self.args.out)
        return 0
