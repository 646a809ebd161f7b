"""Report schema for the CLI (pure data, no I/O).

Every run produces exactly one of two objects: a `Report` carrying a result, or
an `ErrorReport` carrying a failure. Rationals are always exact "p/q" strings,
never floats, and every map is built in a fixed order so that identical
requests serialize to identical bytes.
"""

import json
from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field

from plane_singularities.certificate import LocalQuotientCertificate
from plane_singularities.series import INFINITY

Command = Literal["invariants", "branch", "rootval", "equising", "intersect", "gkm-check", "disc-demo"]


class Request(BaseModel):
    command: Command
    format: Literal["json", "text"] = "json"
    precision: int | None = Field(None, ge=4, description="working precision override")
    workers: int = Field(1, ge=1, description="threads for intersection matrices")


class CertificateRecord(BaseModel):
    value: int
    stabilized_at: int
    rechecked_at: int
    method: str

    @classmethod
    def from_certificate(cls, certificate: LocalQuotientCertificate) -> "CertificateRecord":
        return cls(
            value=certificate.value,
            stabilized_at=certificate.stabilized_at,
            rechecked_at=certificate.rechecked_at,
            method=certificate.method.value,
        )


class Report(BaseModel):
    command: Command
    inputs_echo: dict[str, str | list[str]]
    result: dict[str, Any]
    certificates: dict[str, CertificateRecord] = {}
    warnings: list[str] = []


class ErrorReport(BaseModel):
    error: str = Field(description="exception class name")
    detail: str
    location: str | None = None


def rational_text(value) -> str:
    """Exact text: "p/q", "p" for integers, "inf" for an infinite valuation."""
    if value == INFINITY:
        return "inf"
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def matrix_text(matrix) -> list[list[str]]:
    """A matrix with None (unused diagonal) rendered as the empty string."""
    return [["" if entry is None else rational_text(entry) for entry in row] for row in matrix]


def render_json(report: Report | ErrorReport) -> str:
    return report.model_dump_json(indent=2, exclude_none=isinstance(report, ErrorReport))


def _line(key: str, value) -> str:
    return f"{key}: {value if isinstance(value, str) else json.dumps(value, separators=(',', ':'))}"


def render_text(report: Report | ErrorReport) -> str:
    """One `key: value` line per entry; non-string values as compact JSON."""
    if isinstance(report, ErrorReport):
        return "\n".join(_line(key, value) for key, value in report.model_dump(exclude_none=True).items())
    lines = [_line("command", report.command)]
    lines += [_line(key, value) for key, value in report.result.items()]
    lines += [_line(f"certificate.{name}", record.model_dump()) for name, record in report.certificates.items()]
    lines += [_line("warning", warning) for warning in report.warnings]
    return "\n".join(lines)
