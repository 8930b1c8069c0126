import csv
import json
from typing import Iterable, List, TextIO

from ..models.identity_data import IdentityReport, OutputRecord

FORMATS = ("csv", "json")


def write_records(records: Iterable[OutputRecord], stream: TextIO, fmt: str = "csv",
                  with_oracle: bool = False) -> int:
    """Stream sequence rows one at a time, flushing after each; returns the number of rows written.

    CSV columns are `key,n,value` plus `value_oracle` when both paths ran.
    Integers are written as exact decimal strings in both formats.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format '{fmt}', expected one of {FORMATS}")
    count = 0
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        header = ["key", "n", "value"] + (["value_oracle"] if with_oracle else [])
        writer.writerow(header)
        for record in records:
            row = [record.key, record.n, record.value]
            if with_oracle:
                row.append(record.value_oracle)
            writer.writerow(row)
            stream.flush()
            count += 1
        return count

    stream.write("[")
    for record in records:
        stream.write(",\n" if count else "\n")
        stream.write(record.model_dump_json(exclude_none=True))
        stream.flush()
        count += 1
    stream.write("\n]\n")
    return count


def format_report(report: IdentityReport) -> List[str]:
    """Text lines for one report: a summary line then one line per failure"""
    status = "PASS" if report.passed else "FAIL"
    lines = [
        f"{status} {report.label} [{report.n_lo}..{report.n_hi}] failures={len(report.failures)} "
        f"skipped={len(report.skipped)} elapsed={report.elapsed:.3f}"
    ]
    for failure in report.failures:
        if failure.error:
            lines.append(f"  n={failure.n} error={failure.error}")
        else:
            lines.append(f"  n={failure.n} lhs={failure.lhs} rhs={failure.rhs}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return lines


def write_reports(reports: Iterable[IdentityReport], stream: TextIO, fmt: str = "text") -> None:
    if fmt == "json":
        json.dump([report.to_dict() for report in reports], stream, indent=2)
        stream.write("\n")
        return
    for report in reports:
        for line in format_report(report):
            stream.write(line + "\n")
