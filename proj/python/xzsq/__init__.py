"""Python interface to the xzsq core library."""

import json

from ._xzsq import (
    Error,
    Group,
    best_coset_translate,
    catalog,
    count_triples,
    default_config,
    is_solution_free,
    largest_abelian_subgroup,
    load_group,
    max_solution_free,
    parse_subset,
)
from . import _xzsq


def bogolioubov_neighbourhood(group, subset, k, config=""):
    r = _xzsq.bogolioubov_neighbourhood(group, list(subset), k, config)
    r["log"] = json.loads(r["log"])
    return r


def build_system(group, subset, r, epsilon, config=""):
    return _xzsq.build_system(group, list(subset), r, epsilon, config)


def run_pipeline(group, subset, config=""):
    """Certificate document for the density increment iteration on A."""
    return json.loads(_xzsq.run_pipeline(group, list(subset), config))


def certificate_text(group, subset, config=""):
    return _xzsq.run_pipeline(group, list(subset), config)


def check_certificate(cert, replay=True):
    text = cert if isinstance(cert, str) else json.dumps(cert, indent=2)
    return json.loads(_xzsq.check_certificate(text, replay))


__all__ = [
    "Error",
    "Group",
    "best_coset_translate",
    "bogolioubov_neighbourhood",
    "build_system",
    "catalog",
    "certificate_text",
    "check_certificate",
    "count_triples",
    "default_config",
    "is_solution_free",
    "largest_abelian_subgroup",
    "load_group",
    "max_solution_free",
    "parse_subset",
    "run_pipeline",
]
