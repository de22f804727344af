"""Proof checker and model validator for base-angle theorems.

Functions taking ``paths`` read proof files or directories; with no paths
they use the corpus bundled with the library. Reports come back as plain
dicts in the same shape as ``ponscheck --json``.
"""

import json

from . import _core
from ._core import PonsError, ScriptSyntaxError, angle_at, bundled_corpus, bundled_file, dist

__version__ = _core.__version__

__all__ = [
    "PonsError",
    "ScriptSyntaxError",
    "angle_at",
    "bundled_corpus",
    "bundled_file",
    "check",
    "deps",
    "dist",
    "dot",
    "model_check",
    "parse",
    "run_cli",
]


def _paths(paths):
    if paths is None:
        return None
    if isinstance(paths, (str, bytes)) or hasattr(paths, "__fspath__"):
        paths = [paths]
    return [str(p) for p in paths]


def parse(text):
    return json.loads(_core.parse_json(text))


def check(paths=None, strict=False):
    return json.loads(_core.check_json(_paths(paths), strict))


def deps(paths=None):
    return json.loads(_core.deps_json(_paths(paths)))


def dot(paths=None):
    return _core.dot(_paths(paths))


def model_check(paths=None, model="all", trials=1000, seed=42, tol=None):
    return json.loads(_core.model_check_json(_paths(paths), model, trials, seed, tol))


def run_cli(args):
    """Runs the command-line tool in process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
