"""Python front end for the slotsim simulator.

Scenarios are plain dicts (or JSON text) in the same schema the CLI accepts;
reports come back as dicts.
"""

import json as _json

import _slotsim as _core

__version__ = _core.__version__

ConfigError = _core.ConfigError
SimError = _core.SimError

percentile = _core.percentile
ptp_update = _core.ptp_update
parse_duration = _core.parse_duration


def list_presets():
    """Names of the bundled scenarios."""
    return _core.list_presets()


def preset(name):
    """A bundled scenario as a dict."""
    return _json.loads(_core.preset_text(name))


def run_preset(name, seed=0):
    """Run a bundled scenario and return the metrics report as a dict.

    seed 0 keeps the preset's own seed.
    """
    return _json.loads(_core.run_preset(name, seed))


def run(scenario, strict=False):
    """Run a scenario given as a dict or JSON text."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_core.run_scenario_json(text, strict))


def validate(scenario, strict=False):
    """Check a scenario; returns warnings, raises ConfigError on errors."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _core.validate_scenario_json(text, strict)


def normalize(scenario):
    """The fully materialized form of a scenario, as a dict."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_core.normalize_scenario_json(text))
