"""Rule registry, configuration and dispatch.

Each optimization check is a plain function ``(AnalysisContext) -> list[Finding]``
registered together with a :class:`RuleDescriptor`.  The engine never looks
inside a rule: it decides which rules run, in which order and with which
parameters, runs the frontend once per source unit, and collects findings.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .frontend import (
    BlockTree,
    ParsedSource,
    SourceUnit,
    Statement,
    TableCatalog,
    analyze_source,
    load_source,
)

__all__ = [
    "AnalysisContext",
    "AnalysisReport",
    "ConfigError",
    "DuplicateRuleId",
    "Finding",
    "ResolvedRule",
    "Rule",
    "RuleConfig",
    "RuleDescriptor",
    "RuleOverride",
    "RuleRegistry",
    "analyze_file",
    "effective_rules",
    "load_config",
    "load_config_file",
    "resolve_rules",
    "run_analysis",
]

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    """The rule configuration is malformed or names an unknown rule."""


class DuplicateRuleId(ValueError):
    def __init__(self, rule_id: str) -> None:
        super().__init__(f"rule {rule_id} is already registered")
        self.rule_id = rule_id


# --------------------------------------------------------------------------
# rule types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleDescriptor:
    """Published interface of one rule.

    ``id`` is permanent: configurations and reports refer to rules by it, so
    it must never be reused for a different check.
    """

    id: str
    title: str
    default_order: int
    default_active: bool
    explanation: tuple[str, ...]
    wrong_example: tuple[str, ...]
    right_example: tuple[str, ...]
    params: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("rule id must be non-empty")
        for name in ("explanation", "wrong_example", "right_example"):
            value = tuple(getattr(self, name))
            if not value:
                raise ValueError(f"rule {self.id}: {name} must be non-empty")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "params", dict(self.params))


@dataclass(frozen=True)
class Finding:
    rule_id: str
    line: int
    explanation: tuple[str, ...]
    wrong_example: tuple[str, ...]
    right_example: tuple[str, ...]
    unit_name: str


@dataclass(frozen=True)
class AnalysisContext:
    unit: SourceUnit
    statements: tuple[Statement, ...]
    catalog: TableCatalog
    blocks: BlockTree
    params: Mapping[str, str]
    descriptor: RuleDescriptor

    def finding(self, stmt: Statement, explanation: Optional[Sequence[str]] = None) -> Finding:
        """Build a finding anchored at ``stmt`` with the rule's published text."""
        d = self.descriptor
        return Finding(
            rule_id=d.id,
            line=stmt.first_line,
            explanation=tuple(explanation) if explanation is not None else d.explanation,
            wrong_example=d.wrong_example,
            right_example=d.right_example,
            unit_name=self.unit.name,
        )


RuleCheck = Callable[[AnalysisContext], "list[Finding]"]


@dataclass(frozen=True)
class Rule:
    descriptor: RuleDescriptor
    check: RuleCheck

    @property
    def id(self) -> str:
        return self.descriptor.id


class RuleRegistry:
    """Set of known rules, keyed by id.

    Registration order carries no meaning; ordering comes from
    ``default_order`` and configuration only.
    """

    def __init__(self) -> None:
        self._rules: dict[str, Rule] = {}

    def register(self, descriptor: RuleDescriptor, check: RuleCheck) -> "RuleRegistry":
        if descriptor.id in self._rules:
            raise DuplicateRuleId(descriptor.id)
        self._rules[descriptor.id] = Rule(descriptor, check)
        return self

    def rule(self, descriptor: RuleDescriptor) -> Callable[[RuleCheck], RuleCheck]:
        """Decorator form of :meth:`register`."""

        def deco(check: RuleCheck) -> RuleCheck:
            self.register(descriptor, check)
            return check

        return deco

    def get(self, rule_id: str) -> Rule:
        return self._rules[rule_id]

    def ids(self) -> list[str]:
        return sorted(self._rules)

    def __contains__(self, rule_id: object) -> bool:
        return rule_id in self._rules

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._rules[i] for i in self.ids())

    def __len__(self) -> int:
        return len(self._rules)


def _default_registry() -> RuleRegistry:
    from .rules import default_registry

    return default_registry()


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleOverride:
    active: Optional[bool] = None
    order: Optional[int] = None
    params: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class RuleConfig:
    overrides: Mapping[str, RuleOverride] = field(default_factory=dict)

    @classmethod
    def defaults(cls) -> "RuleConfig":
        return cls({})


def _expect_object(value: object, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{where}: expected a JSON object, got {type(value).__name__}")
    return value


def load_config(text: Optional[str], registry: Optional[RuleRegistry] = None) -> RuleConfig:
    """Parse and validate a JSON rule configuration.

    The schema is ``{"rules": {"<ID>": {"active": bool, "order": int,
    "params": {"<name>": "<value>"}}}}`` with every key optional.  ``None``
    or blank text gives the all-defaults configuration.

    Raises
    ------
    ConfigError
        On malformed JSON, unknown keys or rule ids, or wrongly typed values.
    """
    if text is None or not text.strip():
        return RuleConfig.defaults()
    if registry is None:
        registry = _default_registry()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    doc = _expect_object(doc, "config")
    unknown = set(doc) - {"rules"}
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    rules = _expect_object(doc.get("rules", {}), "rules")
    overrides: dict[str, RuleOverride] = {}
    for rule_id, body in rules.items():
        if rule_id not in registry:
            raise ConfigError(f"unknown rule id {rule_id!r}")
        body = _expect_object(body, f"rules.{rule_id}")
        extra = set(body) - {"active", "order", "params"}
        if extra:
            raise ConfigError(f"rules.{rule_id}: unknown key(s): {', '.join(sorted(extra))}")
        active = body.get("active")
        if active is not None and not isinstance(active, bool):
            raise ConfigError(f"rules.{rule_id}.active must be true or false")
        order = body.get("order")
        # bool is an int subclass; reject it explicitly
        if order is not None and (isinstance(order, bool) or not isinstance(order, int)):
            raise ConfigError(f"rules.{rule_id}.order must be an integer")
        params = _expect_object(body.get("params", {}), f"rules.{rule_id}.params")
        known = registry.get(rule_id).descriptor.params
        for name, value in params.items():
            if name not in known:
                raise ConfigError(f"rules.{rule_id}.params: unknown parameter {name!r}")
            if not isinstance(value, str):
                raise ConfigError(f"rules.{rule_id}.params.{name} must be a string")
        overrides[rule_id] = RuleOverride(active, order, dict(params))
    return RuleConfig(overrides)


def load_config_file(path: Optional[str | Path], registry: Optional[RuleRegistry] = None) -> RuleConfig:
    """Load a config file; no path means defaults, an unreadable one is a ConfigError."""
    if path is None:
        return RuleConfig.defaults()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: cannot read config ({exc})") from exc
    return load_config(text, registry)


@dataclass(frozen=True)
class ResolvedRule:
    descriptor: RuleDescriptor
    check: RuleCheck
    active: bool
    order: int
    params: Mapping[str, str]

    @property
    def id(self) -> str:
        return self.descriptor.id


def effective_rules(config: RuleConfig, registry: RuleRegistry) -> list[ResolvedRule]:
    """Every registered rule with overrides applied, sorted by (order, id)."""
    for rule_id in config.overrides:
        if rule_id not in registry:
            raise ConfigError(f"unknown rule id {rule_id!r}")
    out = []
    for rule in registry:
        d = rule.descriptor
        ov = config.overrides.get(d.id, RuleOverride())
        params = dict(d.params)
        params.update(ov.params)
        out.append(
            ResolvedRule(
                descriptor=d,
                check=rule.check,
                active=d.default_active if ov.active is None else ov.active,
                order=d.default_order if ov.order is None else ov.order,
                params=params,
            )
        )
    out.sort(key=lambda r: (r.order, r.id))
    return out


def resolve_rules(config: RuleConfig, registry: RuleRegistry) -> list[ResolvedRule]:
    """Active rules only, in call order."""
    return [r for r in effective_rules(config, registry) if r.active]


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    unit_name: str
    findings: tuple[Finding, ...]
    diagnostics: tuple[str, ...]
    rules_run: tuple[str, ...]


def run_analysis(
    unit: SourceUnit,
    rules: Sequence[ResolvedRule],
    parsed: Optional[ParsedSource] = None,
) -> AnalysisReport:
    """Analyze ``unit`` with ``rules`` (already resolved and ordered).

    The frontend runs once and its context is shared by every rule.  A rule
    that raises, or returns a finding it does not own or that points outside
    the unit, is reported in ``diagnostics`` and contributes no findings; the
    remaining rules still run.
    """
    if parsed is None:
        parsed = analyze_source(unit)
    diagnostics = [str(d) for d in parsed.diagnostics]
    collected: list[tuple[int, Finding]] = []
    n_lines = len(unit.lines)
    for position, rule in enumerate(rules):
        ctx = AnalysisContext(
            unit=unit,
            statements=parsed.statements,
            catalog=parsed.catalog,
            blocks=parsed.blocks,
            params=dict(rule.params),
            descriptor=rule.descriptor,
        )
        try:
            found = list(rule.check(ctx))
            for f in found:
                if f.rule_id != rule.id:
                    raise RuntimeError(f"emitted a finding for rule {f.rule_id}")
                if not 1 <= f.line <= n_lines:
                    raise RuntimeError(f"emitted a finding at line {f.line} outside 1..{n_lines}")
        except Exception as exc:  # noqa: BLE001 - one broken rule must not stop the rest
            log.debug("rule %s failed on %s", rule.id, unit.name, exc_info=True)
            diagnostics.append(f"rule {rule.id} failed: {type(exc).__name__}: {exc}")
            continue
        collected.extend((position, f) for f in found)
    collected.sort(key=lambda pf: (pf[0], pf[1].line, pf[1].rule_id))
    return AnalysisReport(
        unit_name=unit.name,
        findings=tuple(f for _, f in collected),
        diagnostics=tuple(diagnostics),
        rules_run=tuple(r.id for r in rules),
    )


def analyze_file(path: str | Path, rules: Sequence[ResolvedRule]) -> AnalysisReport:
    """Load ``path`` and analyze it; raises ``InputError`` if unreadable."""
    return run_analysis(load_source(path), rules)
