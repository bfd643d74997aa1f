"""Python front end of the splitcurve core.

Graphs use the JSON layout {"genus_labels": [...], "edges": [[u, v], ...]};
they may be passed as dicts or JSON strings.
"""

import json

from . import _splitcurve
from ._splitcurve import GenericityError, InputError

__all__ = [
    "GenericityError",
    "InputError",
    "admissible_sets",
    "canonical_key",
    "classify",
    "configuration_distance",
    "degree_sums",
    "dominates",
    "enumerate_stable_graphs",
    "exponent_set",
    "is_git_stable",
    "mu_closed_form",
    "multiplicity_set",
    "run_cli",
    "split_exponent_set",
    "theta_hat",
    "vanishing_certificate",
]


def _dump(x):
    return x if isinstance(x, str) else json.dumps(x)


def run_cli(*args):
    """Runs a subcommand in-process; returns (exit_code, stdout, stderr)."""
    return _splitcurve.run_cli([str(a) for a in args])


def enumerate_stable_graphs(g):
    return [json.loads(s) for s in _splitcurve.enumerate_stable_graphs(g)]


def canonical_key(graph):
    return _splitcurve.canonical_key(_dump(graph))


def exponent_set(graph):
    return _splitcurve.exponent_set(_dump(graph))


def multiplicity_set(graph):
    return _splitcurve.multiplicity_set(_dump(graph))


def admissible_sets(graph):
    return _splitcurve.admissible_sets(_dump(graph))


def degree_sums(graph):
    return _splitcurve.degree_sums(_dump(graph))


def classify(graph):
    return _splitcurve.classify(_dump(graph))


def split_exponent_set(g):
    return _splitcurve.split_exponent_set(g)


def dominates(l, m):
    return _splitcurve.dominates(set(l), set(m))


def mu_closed_form(kind, g, h, base="b"):
    return _splitcurve.mu_closed_form(kind, g, h, base)


def is_git_stable(kind, g, base="b"):
    return _splitcurve.is_git_stable(kind, g, base)


def theta_hat(g, seed):
    return json.loads(_splitcurve.theta_hat(g, seed))


def configuration_distance(a, b):
    return _splitcurve.configuration_distance(_dump(a), _dump(b))


def vanishing_certificate(g):
    return json.loads(_splitcurve.vanishing_certificate(g))
