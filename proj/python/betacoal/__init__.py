"""Beta(2-alpha, alpha)-coalescent simulation and verification."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_experiment as _run_experiment


def verify(experiment, **kwargs):
    """Run a registered experiment and return its report as a dict."""
    return _json.loads(_run_experiment(experiment, **kwargs))
