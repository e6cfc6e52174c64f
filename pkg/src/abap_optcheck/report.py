"""Rendering of analysis reports and exit status."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable

from .engine import AnalysisReport

__all__ = [
    "FailPolicy",
    "OutputFormat",
    "RenderOptions",
    "exit_code",
    "render",
    "render_json",
    "render_json_many",
    "render_text",
    "report_to_dict",
]

WARNING_PREFIX = "| OPTIMIZATION WARNING AT LINE NO:"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"


class FailPolicy(enum.Enum):
    NEVER = "never"
    ON_FINDING = "finding"


@dataclass(frozen=True)
class RenderOptions:
    format: OutputFormat = OutputFormat.TEXT
    fail_policy: FailPolicy = FailPolicy.ON_FINDING


def warning_line(line: int) -> str:
    # one separating blank, then the number right-aligned in 7 columns:
    # line 67 prints as "NO:      67"
    return f"{WARNING_PREFIX} {line:>7}"


def render_text(report: AnalysisReport) -> str:
    """Render ``report`` in the SAP optimization-warning list layout.

    Diagnostics are not part of this layout; they go to stderr in the CLI.
    """
    out = [f"{report.unit_name} for optimize", ""]
    for f in report.findings:
        out.append(warning_line(f.line))
        out.append("")
        out.extend(f.explanation)
        out.append("")
        out.append("EXAMPLE CODE :")
        out.append("WRONG CODE")
        out.extend(f.wrong_example)
        out.append("")
        out.append("RIGHT CODE")
        out.extend(f.right_example)
        out.append("")
    return "\n".join(out) + "\n"


def report_to_dict(report: AnalysisReport) -> dict:
    return {
        "unit": report.unit_name,
        "findings": [
            {
                "rule": f.rule_id,
                "line": f.line,
                "explanation": list(f.explanation),
                "wrong": list(f.wrong_example),
                "right": list(f.right_example),
            }
            for f in report.findings
        ],
        "diagnostics": list(report.diagnostics),
    }


def _dumps(obj: object) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def render_json(report: AnalysisReport) -> str:
    """Compact JSON with keys in schema order."""
    return _dumps(report_to_dict(report))


def render_json_many(reports: Iterable[AnalysisReport]) -> str:
    return _dumps([report_to_dict(r) for r in reports])


def render(report: AnalysisReport, options: RenderOptions) -> str:
    if options.format is OutputFormat.JSON:
        return render_json(report)
    return render_text(report)


def exit_code(report: AnalysisReport, policy: FailPolicy) -> int:
    """0 when clean or when findings never fail the run, else 1."""
    if report.findings and policy is FailPolicy.ON_FINDING:
        return 1
    return 0
