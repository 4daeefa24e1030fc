"""The manifest written next to the outputs of every run."""

import datetime
import os
import time

from hullscope.constants import TOOL_VERSION
from hullscope.utilities.report_utilities import file_digest, write_json


class RunManifest:
    """
    Inputs, flags and seeds of a run, with its start time and wall time.

    Everything a rerun needs is here; the timestamps are the only fields
    that differ between identical runs.
    """

    def __init__(self, command, flags, seeds=None):
        self.command = command
        self.flags = flags
        self.seeds = dict(seeds or {})
        self.inputs = []
        self.outputs = []
        self.started = datetime.datetime.now(datetime.timezone.utc)
        self._clock = time.perf_counter()
        self.wall_seconds = None

    def add_input(self, path):
        if path is None or any(item['path'] == path for item in self.inputs):
            return
        self.inputs.append({'path': path, 'sha256': file_digest(path)})

    def add_inputs(self, paths):
        for path in paths or []:
            self.add_input(path)

    def add_output(self, path):
        self.outputs.append(os.path.basename(path))
        return path

    def finish(self):
        self.wall_seconds = time.perf_counter() - self._clock
        return self

    def to_json(self):
        return {
            'command': self.command,
            'flags': self.flags,
            'inputs': self.inputs,
            'outputs': self.outputs,
            'seeds': self.seeds,
            'tool_version': TOOL_VERSION,
            'started': self.started.isoformat(),
            'wall_seconds': self.wall_seconds,
        }

    def write(self, path):
        if self.wall_seconds is None:
            self.finish()
        return write_json(path, self.to_json())
