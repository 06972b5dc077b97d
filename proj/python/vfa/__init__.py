"""Python access to the vfa checks.

``run_command`` takes the same command names as the ``vfa`` executable
("vertex check", "fact coeq", ...) and a dict of parameters keyed like the
long flags with dashes replaced by underscores.  It returns the report as a
dict with ``command``, ``params``, ``checks``, ``timing_ms`` and ``result``.
"""

import json

from ._vfa import VfaError, mode, presets, reconstructed_mode, run_command_json, weight_dimensions

__all__ = [
    "VfaError",
    "mode",
    "passed",
    "presets",
    "reconstructed_mode",
    "run_command",
    "weight_dimensions",
]


def run_command(command, **params):
    return json.loads(run_command_json(command, json.dumps(params)))


def passed(report):
    return all(c["status"] == "pass" for c in report["checks"])
