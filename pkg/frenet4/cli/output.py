"""Byte-stable CSV and JSON emitters."""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Type

import click
from pydantic import BaseModel

from frenet4.config import config
from frenet4.models.curve import CurveSpecFile
from frenet4.models.reports import (
    AnalyzeReport,
    ClassificationReport,
    DerivedCurveReport,
    SampleRow,
    TheoremReport,
)

CSV_HEADER = (
    ["t", "s"]
    + [f"{v}{i}" for v in ("T", "N", "B", "E") for i in range(1, 5)]
    + ["kappa", "tau", "sigma", "H1", "H2"]
)

SCHEMA_MODELS: Dict[str, Type[BaseModel]] = {
    "curve_spec": CurveSpecFile,
    "analyze": AnalyzeReport,
    "classify": ClassificationReport,
    "derived_curve": DerivedCurveReport,
    "verify": TheoremReport,
}


def format_float(value: Optional[float]) -> str:
    """Fixed 17-significant-digit rendering; missing values become an empty field."""
    if value is None:
        return ""
    return format(value, config.float_format)


def rows_to_csv(rows: Iterable[SampleRow]) -> str:
    """Render sample rows as CSV with a header, ',' separators and LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        values: List[Optional[float]] = [row.t, row.s]
        values += row.T + row.N + row.B + row.E
        values += [row.kappa, row.tau, row.sigma, row.H1, row.H2]
        writer.writerow([format_float(v) for v in values])
    return buffer.getvalue()


def to_json(report: BaseModel) -> str:
    """Render a report as indented JSON with field order taken from the model.

    Raises:
        ValueError: The report holds a NaN or an infinity.
    """
    data = report.model_dump(mode="json", by_alias=True)
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def schemas_json() -> str:
    """JSON schemas of the curve-spec file and every report."""
    document: Dict[str, Any] = {"schema_version": config.schema_version}
    for name, model in SCHEMA_MODELS.items():
        mode = "validation" if model is CurveSpecFile else "serialization"
        document[name] = model.model_json_schema(by_alias=True, mode=mode)
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write to ``out`` if given, otherwise to stdout, without newline translation."""
    if out is None:
        click.echo(text, nl=False)
        return
    with Path(out).open("w", encoding="utf-8", newline="") as f:
        f.write(text)
