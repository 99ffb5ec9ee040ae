"""Disordered SSH chain toolkit (Python bindings to the C++ core)."""

from ._sshlab import *  # noqa: F401,F403
from ._sshlab import __version__, run_experiment


def run_table(experiment, **settings):
    """Run an experiment and return a list of row dicts."""
    columns, rows = run_experiment(experiment, {k: str(v) for k, v in settings.items()})
    return [dict(zip(columns, row)) for row in rows]
