"""Deterministic CSV emission and validated ingestion.

Output contract: fixed column order, 9-significant-digit float formatting,
'.' decimal separator, LF line endings, no timestamps.  Identical inputs
must produce byte-identical files.

Input contract: exact header match; every malformed row is reported with
its line number and the whole file is rejected as a batch.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

from .errors import CsvFormatError
from .schemas import ForcePressureRow, JointModelPayload, JointTrialRow

FORCE_PRESSURE_HEADER = ["n_subvines", "sheath_diameter_mm", "trial",
                         "pressure_kpa", "force_n"]
JOINT_TRIALS_HEADER = ["joint_angle_deg", "trial", "peak_pressure_kpa",
                       "torque_nm"]
JOINT_MODEL_HEADER = ["joint_angle_deg", "mean_pressure_pa", "pressure_std_pa",
                      "mean_torque_nm", "torque_std_nm"]

RowT = TypeVar("RowT", bound=BaseModel)


def format_value(value) -> str:
    """Render one cell: floats at 9 significant digits, booleans lowercase,
    None as the empty cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="")


def read_rows(path: str | Path, row_model: Type[RowT],
              expected_header: list[str]) -> list[RowT]:
    """Parse a CSV into validated row models, rejecting bad files wholesale."""
    p = Path(path)
    if not p.exists():
        raise CsvFormatError(f"input file not found: {p}")
    with p.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{p}: empty file, expected header "
                                 f"{','.join(expected_header)}", lines=[1])
        if header != expected_header:
            raise CsvFormatError(
                f"{p}: bad header {','.join(header)!r}, expected "
                f"{','.join(expected_header)!r}", lines=[1])

        rows: list[RowT] = []
        problems: list[tuple[int, str]] = []
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(expected_header):
                problems.append(
                    (line_no, f"expected {len(expected_header)} fields, "
                              f"got {len(record)}"))
                continue
            payload = dict(zip(expected_header, record))
            try:
                rows.append(row_model.model_validate(payload))
            except ValidationError as exc:
                first = exc.errors()[0]
                field = ".".join(str(x) for x in first["loc"])
                problems.append((line_no, f"{field}: {first['msg']}"))
        if problems:
            detail = "; ".join(f"line {n}: {msg}" for n, msg in problems)
            raise CsvFormatError(f"{p}: {detail}",
                                 lines=[n for n, _ in problems])
    return rows


def read_force_pressure_csv(path: str | Path) -> list[ForcePressureRow]:
    return read_rows(path, ForcePressureRow, FORCE_PRESSURE_HEADER)


def read_joint_trials_csv(path: str | Path) -> list[JointTrialRow]:
    return read_rows(path, JointTrialRow, JOINT_TRIALS_HEADER)


class _JointModelRow(BaseModel):
    joint_angle_deg: float
    mean_pressure_pa: float
    pressure_std_pa: float
    mean_torque_nm: float
    torque_std_nm: float


def read_joint_model_csv(path: str | Path) -> JointModelPayload:
    """Re-ingest a joint model previously emitted by the joint-fit command."""
    rows = read_rows(path, _JointModelRow, JOINT_MODEL_HEADER)
    return JointModelPayload(
        knot_angles_deg=[r.joint_angle_deg for r in rows],
        mean_pressure_pa=[r.mean_pressure_pa for r in rows],
        pressure_std_pa=[r.pressure_std_pa for r in rows],
        mean_torque_nm=[r.mean_torque_nm for r in rows],
        torque_std_nm=[r.torque_std_nm for r in rows])


def write_joint_model_csv(path: str | Path, model: JointModelPayload) -> None:
    rows = [[a, p, ps, t, ts] for a, p, ps, t, ts in zip(
        model.knot_angles_deg, model.mean_pressure_pa, model.pressure_std_pa,
        model.mean_torque_nm, model.torque_std_nm)]
    write_csv(path, JOINT_MODEL_HEADER, rows)
