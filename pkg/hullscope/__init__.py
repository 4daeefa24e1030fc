from hullscope.app import init_logging, worker_pool

__all__ = [
    'init_logging',
    'worker_pool',
]
