"""Python access to the natcalc engine.

Configuration may be given as a dict, a JSON string, or omitted for the
defaults (two pool channels, unit data, three fresh channels).
"""

import json

from . import _core
from ._core import (
    BudgetExceededError,
    IncompleteStatesError,
    NatcalcError,
    ParseError,
    UnboundIdentifierError,
)

__all__ = [
    "BudgetExceededError",
    "IncompleteStatesError",
    "NatcalcError",
    "ParseError",
    "UnboundIdentifierError",
    "axioms",
    "bisimilarity",
    "canonical",
    "explore",
    "export_dot",
    "step",
]


def _config(config):
    if config is None:
        return "{}"
    if isinstance(config, str):
        return config
    return json.dumps(config)


def canonical(source, config=None):
    """Canonical form of `source`, printed in concrete syntax."""
    return _core.canonical(source, _config(config))


def step(source, system="proper", config=None):
    """One-step transitions of `source`."""
    return _core.step(source, system, _config(config))


def explore(source, system="proper", weak=False, config=None):
    """The explored transition graph as a dict in the export format."""
    return json.loads(_core.export_graph(source, system, "json", weak, _config(config)))


def export_dot(source, system="proper", weak=False, config=None):
    return _core.export_graph(source, system, "dot", weak, _config(config))


def bisimilarity(left, right, mode="strong", method="exact", system="proper", config=None):
    """Decides whether two processes are bisimilar.

    `method` is "exact" or "bounded:k". The result holds the verdict, a
    witness relation for Bisimilar and a play for NotBisimilar.
    """
    return _core.bisimilarity(left, right, mode, method, system, _config(config))


def axioms(structure="basic", cases=200, seed=1, states=20):
    """Runs an axiom suite and returns its report as a dict."""
    return json.loads(_core.axioms(structure, cases, seed, states))
