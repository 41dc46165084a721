"""Exact certificates for twisted cohomology of hypersurface complements."""

import json
from dataclasses import dataclass

from . import _core
from ._core import (
    ParseError,
    UsageError,
    aomoto_cohomology,
    beta,
    canonicalize,
    chamber_counts,
    characteristic_polynomial,
    check_hypotheses,
    d,
    digest,
    dlog,
    lower_bounds,
    wedge,
)

__version__ = _core.version()


@dataclass
class Report:
    passed: bool
    json: dict
    summary: str


def run(text, verb="verify", *, emit_forms=False, seed=0, jobs=1):
    """Runs a problem file given as JSON text; verb is verify, arrangement or aomoto."""
    passed, payload, summary = _core.run(text, verb, emit_forms, seed, jobs)
    return Report(passed, json.loads(payload), summary)


def corpus():
    """Bundled examples as (id, filename, text)."""
    return _core.corpus()


def run_corpus(only=None, *, emit_forms=False, seed=0, jobs=1):
    passed, payload, summary = _core.run_corpus(only, emit_forms, seed, jobs)
    return Report(passed, json.loads(payload), summary)


__all__ = [
    "ParseError",
    "Report",
    "UsageError",
    "aomoto_cohomology",
    "beta",
    "canonicalize",
    "chamber_counts",
    "characteristic_polynomial",
    "check_hypotheses",
    "corpus",
    "d",
    "digest",
    "dlog",
    "lower_bounds",
    "run",
    "run_corpus",
    "wedge",
]
