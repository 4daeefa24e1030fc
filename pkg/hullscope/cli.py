"""Command line entry point."""

import argparse
import logging
import sys

import hullscope.exceptions
import hullscope.settings
from hullscope.app import init_logging, worker_pool
from hullscope.constants import TOOL_VERSION

logger = logging.getLogger('hullscope')

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def _common_arguments():
    """Flags every subcommand accepts."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', type=str.upper, choices=LOG_LEVELS,
                        default=hullscope.settings.LOG_LEVEL)
    common.add_argument('--threads', type=int, default=hullscope.settings.THREADS,
                        help='Worker threads; results do not depend on it.')
    common.add_argument('--seed', type=int, default=hullscope.settings.SEED)
    return common


def add_command(subparsers, command_class, common):
    parser = subparsers.add_parser(
        command_class.name, help=command_class.help, parents=[common])
    command_class.add_arguments(parser)
    parser.set_defaults(command_class=command_class)


def build_parser():
    from hullscope.commands import (
        DiameterCommand,
        DirectionCommand,
        HullDistanceCommand,
        LegendreDemoCommand,
        MlpDemoCommand,
        RandomBaselineCommand,
        WaveletCommand,
    )
    parser = argparse.ArgumentParser(
        prog='hullscope',
        description='Measure where query points lie relative to the convex '
                    'hull of a reference set.')
    parser.add_argument('--version', action='version', version=TOOL_VERSION)
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    common = _common_arguments()
    add_command(subparsers, HullDistanceCommand, common)
    add_command(subparsers, DiameterCommand, common)
    add_command(subparsers, WaveletCommand, common)
    add_command(subparsers, RandomBaselineCommand, common)
    add_command(subparsers, DirectionCommand, common)
    add_command(subparsers, LegendreDemoCommand, common)
    add_command(subparsers, MlpDemoCommand, common)
    return parser


def run(argv=None):
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        # argparse has already printed usage or help to the right stream.
        return error.code if isinstance(error.code, int) else 2
    init_logging(args.log_level)
    command = args.command_class(args)
    try:
        command.validate()
        with worker_pool(args.threads) as executor:
            return command.run(executor)
    except hullscope.exceptions.BaseHullscopeException as error:
        logger.error('%s: %s', args.command, error.message)
        return error.exit_code


def main():
    return run(sys.argv[1:])
