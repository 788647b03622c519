"""JSON system files, certificate reports, and CSV trace emission.

Matrix entries in system files are decimal strings, which parse losslessly
into the exact backend; bare JSON numbers are accepted with a warning since
binary floats are not exact decimals.  Reports and traces render exact
values as decimals whenever the denominator allows a finite expansion, and
as ``p/q`` literals otherwise, so that exact-mode runs are reproducible
bit for bit.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .linalg import Backend, Matrix
from .obsv import Certificate, HankelCertificate, SystemVerdict


class InputFileError(ValueError):
    pass


@dataclass
class SystemFile:
    name: str
    A: Matrix | None
    b: tuple | None
    c: tuple | None
    matrix: Matrix | None
    notes: str = ""


def _parse_entry(value, backend: Backend, warned: list[bool]):
    if isinstance(value, str):
        try:
            x = Fraction(value)
        except ValueError as exc:
            raise InputFileError(f"cannot parse entry {value!r} as a decimal") from exc
        return x if backend is Backend.EXACT else float(x)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputFileError(f"entry {value!r} is not a number or decimal string")
    if isinstance(value, float) and not warned[0]:
        print("warning: float entries in input file; decimal strings are exact",
              file=sys.stderr)
        warned[0] = True
    return Fraction(value) if backend is Backend.EXACT else float(value)


def _parse_matrix(rows, backend: Backend, warned, what: str) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputFileError(f"{what} must be a non-empty list of rows")
    if any(not r for r in rows):
        raise InputFileError(f"{what} has an empty row")
    try:
        return Matrix([[_parse_entry(x, backend, warned) for x in row] for row in rows], backend)
    except InputFileError:
        raise
    except ValueError as exc:
        raise InputFileError(f"bad {what}: {exc}") from exc


def _parse_vector(entries, backend: Backend, warned, what: str) -> tuple:
    if not isinstance(entries, list) or not entries:
        raise InputFileError(f"{what} must be a non-empty list")
    return tuple(_parse_entry(x, backend, warned) for x in entries)


def load_system_file(path, backend: Backend = Backend.EXACT) -> SystemFile:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputFileError("top level must be an object")
    warned = [False]
    name = raw.get("name", Path(path).stem)
    A = b = c = matrix = None
    if "A" in raw:
        A = _parse_matrix(raw["A"], backend, warned, "A")
        if not A.is_square():
            raise InputFileError("A must be square")
    if "matrix" in raw:
        matrix = _parse_matrix(raw["matrix"], backend, warned, "matrix")
    if "b" in raw:
        b = _parse_vector(raw["b"], backend, warned, "b")
        if A is not None and len(b) != A.rows:
            raise InputFileError("b length does not match A")
    if "c" in raw:
        c = _parse_vector(raw["c"], backend, warned, "c")
        if A is not None and len(c) != A.rows:
            raise InputFileError("c length does not match A")
    if A is None and matrix is None:
        raise InputFileError("file carries neither a system (A, c) nor a bare matrix")
    return SystemFile(str(name), A, b, c, matrix, str(raw.get("notes", "")))


def render_value(x) -> str:
    """Full-precision text for one scalar; exact decimals when they terminate."""
    if isinstance(x, Fraction):
        den = x.denominator
        twos = fives = 0
        while den % 2 == 0:
            den //= 2
            twos += 1
        while den % 5 == 0:
            den //= 5
            fives += 1
        if den == 1:
            digits = max(twos, fives)
            if digits == 0:
                return str(x.numerator)
            scaled = x.numerator * 10 ** digits // x.denominator
            sign = "-" if scaled < 0 else ""
            body = str(abs(scaled)).rjust(digits + 1, "0")
            return f"{sign}{body[:-digits]}.{body[-digits:]}"
        return f"{x.numerator}/{x.denominator}"
    return repr(x)


def trace_filename(r: int, beta) -> str:
    tag = "".join(str(i) for i in beta) if beta is not None else "full"
    return f"trace_r{r}_beta{tag}.csv"


def write_traces(out_dir, per_system: list[SystemVerdict]) -> list[str]:
    out = []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for sv in per_system:
        fname = trace_filename(sv.r, sv.beta.elems if sv.beta is not None else None)
        with open(out_dir / fname, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "g"])
            for t, value in enumerate(sv.verdict.samples, 1):
                writer.writerow([t, render_value(value)])
        out.append(fname)
    return out


def _verdict_dict(sv: SystemVerdict) -> dict:
    v = sv.verdict
    return {
        "r": sv.r,
        "k": sv.k,
        "beta": list(sv.beta.elems) if sv.beta is not None else None,
        "relaxed": sv.relaxed,
        "status": v.status.value,
        "tail_start": v.tail_start,
        "first_violation": (
            [v.first_violation[0], render_value(v.first_violation[1])]
            if v.first_violation else None),
        "notes": list(v.notes),
    }


def certificate_dict(cert) -> dict:
    if isinstance(cert, HankelCertificate):
        return {
            "property": cert.property_name,
            "target": "hankel",
            "conclusion": cert.conclusion.value,
            "notes": list(cert.notes),
            "observability": certificate_dict(cert.observability),
            "controllability": certificate_dict(cert.controllability),
        }
    return {
        "property": cert.property_name,
        "target": cert.target,
        "conclusion": cert.conclusion.value,
        "common_sign": cert.common_sign,
        "horizon": cert.horizon,
        "notes": list(cert.notes),
        "systems": [_verdict_dict(sv) for sv in cert.per_system],
    }


def write_report(out_dir, payload: dict, traces: list[str], environment: dict) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = {"certificate": payload, "environment": environment, "traces": traces}
    path = out_dir / "report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return path
