"""Load settings from a configuration file."""

import configparser
import logging
import os


logger = logging.getLogger('hullscope.settings')

CONFIG_PATH = os.path.join(os.path.expanduser('~'), '.hullscope.conf')
DEVELOPER_PATH = os.path.join(os.path.dirname(__file__), 'developer.conf')
TESTING_PATH = os.path.join(os.path.dirname(__file__), 'testing.conf')
THREADS_ENVIRONMENT_VARIABLE = 'HULLSCOPE_THREADS'


def _int_list(value):
    return [int(item) for item in value.split(',') if item.strip()]


def load_config(settings, testing=False):
    """Load configuration."""
    config = configparser.ConfigParser()
    path = CONFIG_PATH
    config_parsed = config.read([path])
    if not config_parsed:
        path = DEVELOPER_PATH
        config = configparser.ConfigParser()
    if testing:
        path = TESTING_PATH
        config = configparser.ConfigParser()
    logger.debug('Reading config from %s', path)
    with open(path) as config_file:
        config.read_file(config_file)

    settings.GAP_TOL_RELATIVE = config.getfloat('solver', 'GAP_TOL_RELATIVE')
    settings.MAX_ITERS = config.getint('solver', 'MAX_ITERS')
    settings.INSIDE_TOL = config.getfloat('solver', 'INSIDE_TOL')
    settings.SUPPORT_TOL = config.getfloat('solver', 'SUPPORT_TOL')
    settings.DIAMETER_EXACT_MAX_POINTS = config.getint(
        'solver', 'DIAMETER_EXACT_MAX_POINTS')
    settings.DIAMETER_SWEEPS = config.getint('solver', 'DIAMETER_SWEEPS')
    settings.UNCONVERGED_FRACTION_MAX = config.getfloat(
        'solver', 'UNCONVERGED_FRACTION_MAX')

    settings.THREADS = config.getint('runtime', 'THREADS')
    if os.environ.get(THREADS_ENVIRONMENT_VARIABLE):
        settings.THREADS = int(os.environ[THREADS_ENVIRONMENT_VARIABLE])
    settings.LOG_LEVEL = config.get('runtime', 'LOG_LEVEL')
    settings.SEED = config.getint('runtime', 'SEED')

    settings.WAVELET_LEVELS = config.getint('wavelet', 'LEVELS')
    settings.WAVELET_FAMILY = config.get('wavelet', 'FAMILY')

    settings.MLP_STEPS = config.getint('mlp', 'STEPS')
    settings.MLP_LEARNING_RATE = config.getfloat('mlp', 'LEARNING_RATE')
    settings.MLP_ARCH = _int_list(config.get('mlp', 'ARCH'))
    settings.MLP_GRID_RESOLUTION = config.getint('mlp', 'GRID_RESOLUTION')
    settings.MLP_SEED_PAIRS = config.getint('mlp', 'SEED_PAIRS')

    settings.LEGENDRE_DEGREES = _int_list(config.get('legendre', 'DEGREES'))
    settings.LEGENDRE_CHANGES = config.getint('legendre', 'CHANGES')
    settings.LEGENDRE_RESOLUTION = config.getint('legendre', 'RESOLUTION')
