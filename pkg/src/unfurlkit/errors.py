"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` and, where it applies,
the offending field path or input line numbers, so the CLI and the HTTP
service can map failures to exit codes / status codes without parsing
message text.
"""

from __future__ import annotations


class UnfurlError(Exception):
    """Base class for all toolkit errors."""

    code = "error"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class InvalidGeometryError(UnfurlError):
    code = "invalid-geometry"


class InvalidInputError(UnfurlError):
    code = "invalid-input"


class FeasibilityError(UnfurlError):
    """A computed operating point violates a material or model limit.

    Carries the computed pressure so callers can report how far past the
    limit the request landed.
    """

    code = "infeasible"

    def __init__(self, message: str, *, pressure_pa: float | None = None,
                 field: str | None = None):
        super().__init__(message, field=field)
        self.pressure_pa = pressure_pa


class InsufficientDataError(UnfurlError):
    code = "insufficient-data"


class DegenerateDataError(UnfurlError):
    code = "degenerate-data"


class CalibrationRangeError(UnfurlError):
    code = "c-out-of-range"


class SheathTooShortError(UnfurlError):
    code = "sheath-too-short"


class CsvFormatError(UnfurlError):
    """Malformed tabular input. ``lines`` lists every offending line number."""

    code = "csv-format"

    def __init__(self, message: str, *, lines: list[int] | None = None):
        super().__init__(message)
        self.lines = lines or []


class ConfigError(UnfurlError):
    code = "config-invalid"
