"""Package for loading system settings."""

import os
import sys

from hullscope.settings.load import load_config

_TEST_PROGRAMS = (
    'pytest',
    'setup.py'
)

TESTING = False
if any(name in sys.argv[0] for name in _TEST_PROGRAMS):
    TESTING = True
elif 'TESTING' in os.environ:
    TESTING = True

GAP_TOL_RELATIVE = None
MAX_ITERS = None
INSIDE_TOL = None
SUPPORT_TOL = None
DIAMETER_EXACT_MAX_POINTS = None
DIAMETER_SWEEPS = None
UNCONVERGED_FRACTION_MAX = None

THREADS = None
LOG_LEVEL = None
SEED = None

WAVELET_LEVELS = None
WAVELET_FAMILY = None

MLP_STEPS = None
MLP_LEARNING_RATE = None
MLP_ARCH = None
MLP_GRID_RESOLUTION = None
MLP_SEED_PAIRS = None

LEGENDRE_DEGREES = None
LEGENDRE_CHANGES = None
LEGENDRE_RESOLUTION = None

load_config(sys.modules[__name__], testing=TESTING)
