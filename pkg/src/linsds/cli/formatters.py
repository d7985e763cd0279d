"""Output rendering for CLI reports."""

from typing import Any

from ..exceptions import LinearSDSError, ValidationError
from ..models import BaseModel, ErrorReport


def _is_matrix(value: Any) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(row, list) for row in value)
        and all(not isinstance(x, list | dict) for row in value for x in row)
    )


def format_matrix(rows: list[list[Any]], indent: str = "") -> list[str]:
    """Rows of a matrix literal with right-aligned columns."""
    if not rows or not rows[0]:
        return [f"{indent}[]"]
    width = max(len(str(x)) for row in rows for x in row)
    return [f"{indent}[ {' '.join(str(x).rjust(width) for x in row)} ]" for row in rows]


def _pretty_lines(data: dict[str, Any], indent: str = "") -> list[str]:
    lines: list[str] = []
    for key, value in data.items():
        label = key.replace("_", " ")
        if _is_matrix(value):
            lines.append(f"{indent}{label}:")
            lines.extend(format_matrix(value, indent + "  "))
        elif isinstance(value, dict):
            lines.append(f"{indent}{label}:")
            lines.extend(_pretty_lines(value, indent + "  "))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{indent}{label}:")
            for k, item in enumerate(value):
                lines.append(f"{indent}  - [{k}]")
                lines.extend(_pretty_lines(item, indent + "    "))
        elif isinstance(value, list):
            lines.append(f"{indent}{label}: {' '.join(str(v) for v in value)}")
        elif isinstance(value, bool):
            lines.append(f"{indent}{label}: {'yes' if value else 'no'}")
        else:
            lines.append(f"{indent}{label}: {value}")
    return lines


def render(report: BaseModel, output_format: str) -> str:
    """Render a report as JSON or as an indented human-readable listing.

    Raises:
        ValidationError: For ``dot``, which only the phase command produces
    """
    if output_format == "json":
        return report.to_json()
    if output_format == "pretty":
        return "\n".join(_pretty_lines(report.to_dict()))
    raise ValidationError(f"Output format {output_format!r} is only available for phase")


def error_report(exc: LinearSDSError) -> ErrorReport:
    """The structured stderr form of a library error, with details when present."""
    details = getattr(exc, "details", None)
    return ErrorReport(
        code=exc.code,
        message=exc.message,
        pointer=exc.pointer,
        details=details or None,
    )
