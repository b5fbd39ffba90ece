"""Verification reports and their byte-stable serialisations."""
from dataclasses import dataclass, field
import csv
import io
import json
import math

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .corpus import MANIFEST_HASH
from .trends import HEURISTICS


def clean(value):
    """Recursively convert to JSON-safe plain data; non-finite floats become strings."""
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return [clean(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(value, complex):
        return [clean(value.real), clean(value.imag)]
    return value


def provenance(cfg_echo):
    return {
        "config": clean(cfg_echo),
        "corpus_manifest_sha256": MANIFEST_HASH,
        "version": __version__,
        "kernel_backend": BACKEND,
        "heuristics": HEURISTICS,
    }


@dataclass
class VerificationReport:
    """One experiment run: a table of per-scale rows plus verdicts.

    ``status`` is ``ran``, ``refused`` or ``numeric_failure``.  Every
    verdict is stored next to the traces that produced it.
    """

    experiment: str
    columns: list
    rows: list
    verdicts: dict
    traces: dict
    provenance: dict
    status: str = "ran"
    refusal: dict = None
    failures: list = field(default_factory=list)

    def summary(self):
        d = {
            "experiment": self.experiment,
            "status": self.status,
            "verdicts": self.verdicts,
            "traces": self.traces,
            "columns": self.columns,
            "rows": self.rows,
            "failures": self.failures,
            "provenance": self.provenance,
        }
        if self.refusal is not None:
            d["refusal"] = self.refusal
        return clean(d)

    def to_json(self):
        return json.dumps(self.summary(), sort_keys=True, indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()


def _cell(v):
    v = clean(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return json.dumps(v)
    return v


def refusal_report(experiment, exc, cfg_echo):
    return VerificationReport(
        experiment=experiment, columns=["reason", "message"],
        rows=[[exc.reason, str(exc)]], verdicts={}, traces={},
        provenance=provenance(cfg_echo), status="refused",
        refusal={"reason": exc.reason, "message": str(exc), "details": clean(exc.details)},
    )
