"""Command line subcommands."""

from hullscope.commands.diameter import DiameterCommand
from hullscope.commands.direction import DirectionCommand
from hullscope.commands.hull_distance import HullDistanceCommand
from hullscope.commands.legendre_demo import LegendreDemoCommand
from hullscope.commands.mlp_demo import MlpDemoCommand
from hullscope.commands.random_baseline import RandomBaselineCommand
from hullscope.commands.wavelet import WaveletCommand


__all__ = [
    'DiameterCommand',
    'DirectionCommand',
    'HullDistanceCommand',
    'LegendreDemoCommand',
    'MlpDemoCommand',
    'RandomBaselineCommand',
    'WaveletCommand',
]
