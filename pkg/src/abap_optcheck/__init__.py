"""Performance lint for ABAP: flags internal-table and Open SQL patterns that
SAP's runtime analysis marks as slow, and benchmarks the paired solutions."""

__version__ = "0.1.0"

from .engine import (  # noqa: E402
    AnalysisReport,
    ConfigError,
    Finding,
    RuleConfig,
    RuleDescriptor,
    RuleRegistry,
    load_config,
    resolve_rules,
    run_analysis,
)
from .frontend import InputError, SourceUnit, analyze_source, load_source  # noqa: E402
from .report import render_json, render_text  # noqa: E402
from .rules import default_registry  # noqa: E402


def check_source(text: str, name: str = "PROGRAM", config: str | None = None) -> AnalysisReport:
    """Analyze ABAP ``text`` with the built-in rules and an optional JSON config."""
    registry = default_registry()
    rules = resolve_rules(load_config(config, registry), registry)
    return run_analysis(SourceUnit.from_text(name, text), rules)


__all__ = [
    "AnalysisReport",
    "ConfigError",
    "Finding",
    "InputError",
    "RuleConfig",
    "RuleDescriptor",
    "RuleRegistry",
    "SourceUnit",
    "analyze_source",
    "check_source",
    "default_registry",
    "load_config",
    "load_source",
    "render_json",
    "render_text",
    "resolve_rules",
    "run_analysis",
]
