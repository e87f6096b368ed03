"""Versioned JSON report schema with self-contained certificates.

Schema ``hcat-report/1``: a report is a JSON object with keys

- ``schema``: the literal string ``"hcat-report/1"``
- ``command``: the command name
- ``subject``: echo of the subject arguments
- ``field``: ``"q"`` or ``"f<p>"``
- ``window``: the truncation depth used
- ``determinism``: a statement that the run is exact and seed-free
- ``results``: command-specific results (dimensions, verdicts, ...)
- ``certificates``: a list of re-checkable certificates

All scalars are serialized as strings (``"-3/7"``) so no numeric coercion
can occur.  Certificates can be re-validated without recomputing the job:

- ``{"type": "complex", ...}`` — differential squares to zero
- ``{"type": "module_iso", ...}`` — witness matrix is invertible and
  intertwines the stored actions
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from .fields import field_from_name, field_name
from .linalg import Matrix

SCHEMA = "hcat-report/1"
DETERMINISM = ("exact arithmetic throughout; no randomness, no seeds; "
               "reruns are bit-identical")


class ReportError(ValueError):
    pass


def matrix_to_json(m: Matrix) -> Dict:
    f = m.field
    return {"nrows": m.nrows, "ncols": m.ncols,
            "rows": [[f.format(x) for x in row] for row in m.rows]}


def matrix_from_json(obj: Dict, field) -> Matrix:
    rows = [[field.parse(x) for x in row] for row in obj["rows"]]
    m = Matrix(field, rows, obj["ncols"])
    if m.nrows != obj["nrows"]:
        raise ReportError("matrix row count mismatch")
    return m


def complex_certificate(cx) -> Dict:
    degs = cx.degrees()
    return {
        "type": "complex",
        "dims": {str(d): cx.dim(d) for d in degs},
        "diffs": {str(d): matrix_to_json(cx.diff(d))
                  for d in degs if d + 1 in degs},
    }


def module_iso_certificate(source, target, matrix: Matrix) -> Dict:
    return {
        "type": "module_iso",
        "source_action": [matrix_to_json(m) for m in source.action],
        "target_action": [matrix_to_json(m) for m in target.action],
        "matrix": matrix_to_json(matrix),
    }


def _check_complex(cert: Dict, field) -> bool:
    dims = {int(d): n for d, n in cert["dims"].items()}
    diffs = {int(d): matrix_from_json(m, field)
             for d, m in cert["diffs"].items()}
    for d, mat in diffs.items():
        if mat.ncols != dims.get(d, 0) or mat.nrows != dims.get(d + 1, 0):
            return False
        nxt = diffs.get(d + 1)
        if nxt is not None and not (nxt * mat).is_zero():
            return False
    return True


def _check_module_iso(cert: Dict, field) -> bool:
    src = [matrix_from_json(m, field) for m in cert["source_action"]]
    tgt = [matrix_from_json(m, field) for m in cert["target_action"]]
    phi = matrix_from_json(cert["matrix"], field)
    if len(src) != len(tgt):
        return False
    if phi.inverse() is None:
        return False
    for s, t in zip(src, tgt):
        if not (phi * s - t * phi).is_zero():
            return False
    return True


_CHECKERS = {"complex": _check_complex, "module_iso": _check_module_iso}


def build_report(command: str, subject, field, window: Optional[int],
                 results, certificates: Optional[List[Dict]] = None) -> Dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "subject": subject,
        "field": field_name(field),
        "window": window,
        "determinism": DETERMINISM,
        "results": results,
        "certificates": certificates or [],
    }


def validate_report(report: Dict) -> List[Dict]:
    """Re-checks every certificate in a loaded report; returns a list of
    ``{"index": i, "type": t, "ok": bool}`` entries."""
    if report.get("schema") != SCHEMA:
        raise ReportError(f"unknown schema {report.get('schema')!r}")
    field = field_from_name(report["field"])
    out = []
    for i, cert in enumerate(report.get("certificates", [])):
        ctype = cert.get("type")
        checker = _CHECKERS.get(ctype)
        if checker is None:
            raise ReportError(f"unknown certificate type {ctype!r}")
        out.append({"index": i, "type": ctype, "ok": checker(cert, field)})
    return out


def write_report(report: Dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=False)
        fh.write("\n")


def load_report(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
