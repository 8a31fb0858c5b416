"""Static security checks for ERC-20 token contracts, plus an attack simulator.

Thin wrapper over the native core: every call returns plain dicts and lists
decoded from the same JSON the command-line tool prints.
"""

import json
import os

from . import _impl

__version__ = _impl.version
__all__ = ["analyze", "analyze_source", "checks", "scenarios", "simulate", "mwa_worst_case"]


def _ids(ids):
    if ids is None:
        return None
    if isinstance(ids, str):
        return ids
    return ",".join(str(i) for i in ids)


def analyze(paths, enable=None, disable=None, min_severity="low"):
    """Analyze files together. Returns (report, exit_code)."""
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    text, code = _impl.analyze_paths([os.fspath(p) for p in paths], _ids(enable), _ids(disable) or "", min_severity)
    return json.loads(text), code


def analyze_source(source, name="<memory>.sol", enable=None, disable=None, min_severity="low"):
    if isinstance(source, str):
        source = source.encode("utf-8")
    text, code = _impl.analyze_source(name, source, _ids(enable), _ids(disable) or "", min_severity)
    return json.loads(text), code


def checks():
    return json.loads(_impl.registry_json())


def scenarios():
    return list(_impl.scenario_names())


def simulate(scenario, variant="secure", trace=False):
    return json.loads(_impl.sim_run(scenario, variant, trace))


def mwa_worst_case(n, m, variant="secure"):
    return json.loads(_impl.sim_mwa(str(n), str(m), variant))
