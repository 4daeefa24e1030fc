"""Initialise logging and the worker pool shared by a run."""
import contextlib
import logging
import sys
from concurrent.futures import ThreadPoolExecutor

import hullscope.settings

logger = logging.getLogger('hullscope')


LOG_FORMAT = '[%(asctime)s][%(levelname)s][PID-%(process)d][%(threadName)s] %(message)s'


def init_logging(level=None):
    """Attach a single stdout handler to the root logger."""
    root_logger = logging.getLogger()
    if not any(getattr(handler, '_hullscope', False)
               for handler in root_logger.handlers):
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._hullscope = True
        root_logger.addHandler(handler)
    root_logger.setLevel(level or hullscope.settings.LOG_LEVEL)


class SerialExecutor:
    """Executor with the `map` contract of concurrent.futures, run inline."""

    @staticmethod
    def map(function, *iterables):
        return map(function, *iterables)


@contextlib.contextmanager
def worker_pool(threads=None):
    """
    Yield an executor honouring the parallelism budget of a run.

    Results of `map` come back in submission order for every thread count, so
    callers stay deterministic regardless of the budget.
    """
    threads = threads or hullscope.settings.THREADS
    if threads <= 1:
        yield SerialExecutor()
        return
    logger.debug('Starting a pool of %d worker threads.', threads)
    with ThreadPoolExecutor(max_workers=threads,
                            thread_name_prefix='hullscope') as executor:
        yield executor
