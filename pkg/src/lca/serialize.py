"""JSON documents and plain-text tables for reports.

Floats are written by :mod:`json` (shortest round-trip repr); counts, indices
and table entries stay integers.
"""
from __future__ import annotations

import json

from .errors import InvalidSpectrum
from .spectra import DEFAULT_CLUSTER_TOL, Spectrum, build_spectrum
from .tables import ContingencyTable
from .topology import LandscapeReport, SubmanifoldRecord


def spectrum_from_json(obj, synthetic_ok: bool = False) -> tuple[Spectrum, list[str]]:
    """Parse a spectrum object.

    Accepted forms are ``{"distinct": [...], "multiplicities": [...]}``,
    ``{"diagonal": [...], "cluster_tol": t}`` and, when ``synthetic_ok``,
    ``{"multiplicities": [...]}`` alone, which gets stand-in eigenvalues
    ``r-1, ..., 0``.  Returns the spectrum and any warnings.
    """
    if isinstance(obj, list):
        obj = {"diagonal": obj}
    if not isinstance(obj, dict):
        raise InvalidSpectrum(f"spectrum must be a JSON object, got {type(obj).__name__}")
    if "diagonal" in obj:
        tol = obj.get("cluster_tol", DEFAULT_CLUSTER_TOL)
        return build_spectrum(obj["diagonal"], float(tol)), []
    if "multiplicities" not in obj:
        raise InvalidSpectrum('spectrum needs "diagonal" or "multiplicities"')
    mult = obj["multiplicities"]
    if not isinstance(mult, list) or not mult:
        raise InvalidSpectrum("multiplicities must be a non-empty list")
    if "distinct" in obj:
        return Spectrum(tuple(obj["distinct"]), tuple(mult)), []
    if not synthetic_ok:
        raise InvalidSpectrum('spectrum needs "distinct" eigenvalues for this command')
    r = len(mult)
    note = f"no eigenvalues given for multiplicities {mult}; using stand-ins {list(range(r - 1, -1, -1))}"
    return Spectrum(tuple(float(v) for v in range(r - 1, -1, -1)), tuple(mult)), [note]


def spectrum_to_json(s: Spectrum) -> dict:
    return {"distinct": list(s.distinct), "multiplicities": list(s.multiplicities)}


def record_to_json(rec: SubmanifoldRecord) -> dict:
    return {
        "table": rec.table.tolist(),
        "J": rec.J,
        "d0": rec.d0,
        "dplus": rec.dplus,
        "dminus": rec.dminus,
        "kind": rec.kind,
        "fingerprint": list(rec.table.fingerprint()),
    }


def report_to_json(report: LandscapeReport, seed=None) -> dict:
    return {
        "n": report.summary["n"],
        "profiles": {
            "rho": spectrum_to_json(report.rho),
            "theta": spectrum_to_json(report.theta),
        },
        "records": [record_to_json(r) for r in report.records],
        "summary": report.summary,
        "seed": seed,
        "warnings": list(report.warnings),
    }


def report_from_json(doc: dict) -> LandscapeReport:
    rho = Spectrum(tuple(doc["profiles"]["rho"]["distinct"]), tuple(doc["profiles"]["rho"]["multiplicities"]))
    theta = Spectrum(
        tuple(doc["profiles"]["theta"]["distinct"]), tuple(doc["profiles"]["theta"]["multiplicities"])
    )
    records = [
        SubmanifoldRecord(
            table=ContingencyTable(tuple(map(tuple, r["table"])), rho.multiplicities, theta.multiplicities),
            J=r["J"],
            d0=r["d0"],
            dplus=r["dplus"],
            dminus=r["dminus"],
            kind=r["kind"],
        )
        for r in doc["records"]
    ]
    return LandscapeReport(records, dict(doc["summary"]), rho, theta, list(doc["warnings"]))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _table_cell(table: ContingencyTable) -> str:
    return "/".join(" ".join(str(k) for k in row) for row in table.entries)


def render_report_table(report: LandscapeReport) -> str:
    """Submanifolds as columns: dimension, positive and negative axis counts, type."""
    recs = report.records
    rows = [
        ("No.", [str(i + 1) for i in range(len(recs))]),
        ("Manifold dimension", [str(r.d0) for r in recs]),
        ("Positive axis direction", [str(r.dplus) for r in recs]),
        ("Negative axis direction", [str(r.dminus) for r in recs]),
        ("Type", [r.kind for r in recs]),
        ("Landscape value J", [f"{r.J:.6g}" for r in recs]),
        ("Table (rows split by /)", [_table_cell(r.table) for r in recs]),
    ]
    label_w = max(len(label) for label, _ in rows)
    col_w = [max(len(cells[i]) for _, cells in rows) for i in range(len(recs))]
    lines = [
        f"N={report.summary['n']}  rho multiplicities {list(report.rho.multiplicities)}  "
        f"theta multiplicities {list(report.theta.multiplicities)}"
    ]
    for label, cells in rows:
        line = label.ljust(label_w) + " | " + "  ".join(c.rjust(w) for c, w in zip(cells, col_w))
        lines.append(line.rstrip())
        if label == "No.":
            lines.append("-" * len(lines[-1]))
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
