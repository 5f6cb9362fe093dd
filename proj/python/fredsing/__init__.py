"""Python access to the fredsing classifier.

Reports are returned as dictionaries following the ``fredsing.report/1``
schema; configs follow ``fredsing.config/1``.
"""

import json

from . import _fredsing
from ._fredsing import (
    CONFIG_SCHEMA,
    EXIT_CHECK_FAILED,
    EXIT_DECISIVE,
    EXIT_ERROR,
    EXIT_INDETERMINATE,
    REPORT_SCHEMA,
    FredsingError,
    gallery_catalogue,
    gallery_fixtures,
    gallery_names,
)

__all__ = [
    "CONFIG_SCHEMA",
    "EXIT_CHECK_FAILED",
    "EXIT_DECISIVE",
    "EXIT_ERROR",
    "EXIT_INDETERMINATE",
    "REPORT_SCHEMA",
    "FredsingError",
    "bvp",
    "classify",
    "classify_point",
    "gallery_catalogue",
    "gallery_fixtures",
    "gallery_names",
    "strata",
    "verify",
]


def classify_point(name, point, params=None, k_cap=6, route="both"):
    """Classify one point of a gallery map; returns the classification record."""
    raw = _fredsing.classify_gallery_point(name, dict(params or {}), list(point), k_cap, route)
    return json.loads(raw)


def _run(fn, config):
    doc = dict(config)
    doc.setdefault("schema_version", CONFIG_SCHEMA)
    code, out, err = fn(json.dumps(doc))
    report = json.loads(out) if out.strip() else None
    return code, report, err


def classify(config):
    """Run the classify command on a config dict; returns (exit_code, report, stderr)."""
    return _run(_fredsing.run_classify, config)


def verify(config):
    return _run(_fredsing.run_verify, config)


def strata(config):
    return _run(_fredsing.run_strata, config)


def bvp(config):
    return _run(_fredsing.run_bvp, config)
