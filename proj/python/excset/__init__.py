"""Mean Euler characteristics and curvature densities of Gaussian excursion sets."""

import json
import os

from ._core import *  # noqa: F401,F403
from ._core import __version__, _density_report, _predict, _run_validation


def _config_text(config):
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, (str, os.PathLike)) and os.path.exists(config):
        with open(config) as fh:
            return fh.read()
    return str(config)


def predict(config):
    """Closed-form mean Euler characteristic for a config (dict, JSON text or path)."""
    return _predict(_config_text(config))


def run_validation(config, threads=1):
    """Monte-Carlo validation report as a dict."""
    return json.loads(_run_validation(_config_text(config), threads))


def density_report(config, flags=100000):
    """Curvature densities by every available route, as a dict."""
    return json.loads(_density_report(_config_text(config), flags))
