"""Python access to the tdzeta library.

The extension speaks JSON strings; these wrappers load and dump them.
"""

import json

from . import _core
from ._core import EnumCapError, ValidationError

__all__ = [
    "EnumCapError",
    "ValidationError",
    "arrangement_check",
    "curve",
    "ramanujan",
    "run",
    "series",
    "strata",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def run(*args):
    """Run the command line; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])


def strata(complex_, cap=10_000_000, threads=1):
    return json.loads(_core.strata_report(_dump(complex_), cap, threads))


def curve(fk=None, newton_pairs=None):
    if (fk is None) == (newton_pairs is None):
        raise ValueError("give exactly one of fk, newton_pairs")
    if fk is not None:
        return json.loads(_core.resolve_fk(int(fk)))
    return json.loads(_core.resolve_newton_pairs(newton_pairs))


def arrangement_check(arrangement):
    return json.loads(_core.arrangement_check(_dump(arrangement)))


def series(expr, mode="per_root"):
    return json.loads(_core.series(_dump(expr), mode))


def ramanujan(k, d):
    return int(_core.ramanujan(k, d))
