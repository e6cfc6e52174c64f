"""Built-in optimization rules.

Each rule is registered with a descriptor holding its permanent id, its
default call order and activation, and the warning text printed in reports.
The explanation and example text of R001 and R002 is the SAP runtime-analysis
wording, kept upper case as SAP prints it.
"""
from __future__ import annotations

from typing import Optional

from .engine import AnalysisContext, Finding, RuleDescriptor, RuleRegistry
from .frontend import BlockKind, Statement, StatementKind, TableKind, TokenKind

__all__ = [
    "BUILTIN_RULES",
    "R001",
    "R002",
    "R003",
    "R004",
    "R005",
    "default_registry",
    "rule_r001_read_binary_search",
    "rule_r002_modify_transporting",
    "rule_r003_select_plus_check",
    "rule_r004_loop_plus_check",
    "rule_r005_select_star",
]


R001 = RuleDescriptor(
    id="R001",
    title="READ TABLE with key on a standard table without BINARY SEARCH",
    default_order=10,
    default_active=True,
    explanation=(
        "IF INTERNAL TABLES ARE ASSUMED TO HAVE MANY (>20) ENTRIES, A LINEAR",
        "SEARCH THROUGH ALL ENTRIES IS VERY TIME-CONSUMING",
        "TRY TO KEEP THE TABLE ORDERED AND USE BINARY SEARCH",
        "OR USED A TABLE OF TYPE SORTED TABLE.",
        "IF TAB HAS N ENTRIES, LINEAR SEARCH RUNS IN O( N ) TIME, WHEREAS",
        "BINARY SEARCH TAKES ONLY O( LOG2( N ) ).",
        "NOTE: BINARY SEARCH IS ONLY CORRECT IF ITAB IS SORTED BY THE SEARCH KEY",
        "(E.G. SORT ITAB BY K.) BEFORE THE READ.",
    ),
    wrong_example=(
        "READ TABLE ITAB INTO WA",
        "WITH KEY K = 'X'.",
    ),
    right_example=(
        "READ TABLE ITAB INTO WA",
        "WITH KEY K = 'X'",
        "BINARY SEARCH.",
    ),
    params={"min_entries": "20"},
)

R002 = RuleDescriptor(
    id="R002",
    title="MODIFY of an internal table line without TRANSPORTING",
    default_order=20,
    default_active=True,
    explanation=(
        'WITH THE MODIFY VARIANT "MODIFY ITAB ... TRANSPORTING F1 F2 ..."',
        "THE TASK OF UPDATING A LINE OF AN INTERNAL TABLE CAN BE ACCELERATED.",
        "THE LONGER THE TABLE LINE IS, THE LARGER THE SPEED-UP IS. THE EFFECT",
        "INCREASES FOR TABLES WITH COMPLEX STRUCTURED LINE TYPES.",
    ),
    wrong_example=(
        "WA-DATE = SY-DATUM.",
        "MODIFY ITAB FROM WA INDEX 1.",
    ),
    right_example=(
        "WA-DATE = SY-DATUM.",
        "MODIFY ITAB FROM WA INDEX 1 TRANSPORTING DATE.",
    ),
)

R003 = RuleDescriptor(
    id="R003",
    title="CHECK inside a SELECT loop instead of a WHERE condition",
    default_order=30,
    default_active=True,
    explanation=(
        "A CHECK INSIDE SELECT ... ENDSELECT FILTERS ROWS ONLY AFTER THE",
        "DATABASE HAS SENT THEM TO THE APPLICATION SERVER.",
        "MOVE THE CONDITION INTO THE WHERE CLAUSE SO THAT ONLY THE",
        "REQUIRED ROWS ARE READ AND TRANSFERRED.",
    ),
    wrong_example=(
        "SELECT * FROM SBOOK INTO SBOOK_WA.",
        "  CHECK SBOOK_WA-CARRID = 'LH' AND",
        "        SBOOK_WA-CONNID = '0400'.",
        "ENDSELECT.",
    ),
    right_example=(
        "SELECT * FROM SBOOK INTO SBOOK_WA",
        "  WHERE CARRID = 'LH' AND",
        "        CONNID = '0400'.",
        "ENDSELECT.",
    ),
)

R004 = RuleDescriptor(
    id="R004",
    title="CHECK inside LOOP AT instead of LOOP AT ... WHERE",
    default_order=40,
    default_active=True,
    explanation=(
        "A CHECK AT THE START OF A LOOP STILL COPIES EVERY LINE INTO THE",
        "WORK AREA BEFORE IT IS DISCARDED.",
        "USE LOOP AT ... WHERE SO THAT ONLY MATCHING LINES ARE PROCESSED.",
    ),
    wrong_example=(
        "LOOP AT ITAB INTO WA.",
        "  CHECK WA-K = 'X'.",
        "  \" ...",
        "ENDLOOP.",
    ),
    right_example=(
        "LOOP AT ITAB INTO WA WHERE K = 'X'.",
        "  \" ...",
        "ENDLOOP.",
    ),
)

R005 = RuleDescriptor(
    id="R005",
    title="SELECT * reads every column",
    default_order=50,
    default_active=False,
    explanation=(
        "SELECT * TRANSFERS ALL COLUMNS OF THE TABLE EVEN IF ONLY A FEW",
        "ARE USED. LIST THE REQUIRED FIELDS TO REDUCE THE DATA VOLUME.",
    ),
    wrong_example=(
        "SELECT * FROM SFLIGHT INTO TABLE ITAB.",
    ),
    right_example=(
        "SELECT CARRID CONNID FLDATE FROM SFLIGHT",
        "  INTO CORRESPONDING FIELDS OF TABLE ITAB.",
    ),
)


def _word_at(stmt: Statement, index: int) -> Optional[str]:
    if index < len(stmt.tokens) and stmt.tokens[index].kind is TokenKind.WORD:
        return stmt.tokens[index].text
    return None


def rule_r001_read_binary_search(ctx: AnalysisContext) -> list[Finding]:
    raw = ctx.params.get("min_entries", "20")
    if not raw.strip().isdigit():
        raise ValueError(f"min_entries must be a non-negative decimal integer, got {raw!r}")
    min_entries = int(raw)
    findings = []
    for stmt in ctx.statements:
        if stmt.kind is not StatementKind.READ_TABLE:
            continue
        name = _word_at(stmt, 2)
        if name is None:
            continue
        if not stmt.has_sequence("WITH", "KEY") or stmt.has_sequence("BINARY", "SEARCH"):
            continue
        if ctx.catalog.kind_of(name) not in (TableKind.STANDARD, TableKind.UNKNOWN):
            continue
        entry = ctx.catalog.get(name)
        # small declared tables: a linear scan is as fast as a binary one.
        # OCCURS 0 / INITIAL SIZE 0 leave sizing to the runtime and say nothing.
        if entry is not None and entry.initial_size and entry.initial_size <= min_entries:
            continue
        findings.append(ctx.finding(stmt))
    return findings


# MODIFY forms that never address an internal table line
_NON_TABLE_MODIFY_TARGETS = {"SCREEN", "LINE", "CURRENT", "ENTITIES", "ENTITY"}


def rule_r002_modify_transporting(ctx: AnalysisContext) -> list[Finding]:
    findings = []
    for index, stmt in enumerate(ctx.statements):
        if stmt.kind is not StatementKind.MODIFY:
            continue
        target = _word_at(stmt, 1)
        if target == "TABLE":
            target = _word_at(stmt, 2)
        if target is None or target in _NON_TABLE_MODIFY_TARGETS:
            continue
        if stmt.has_word("TRANSPORTING") or stmt.has_sequence("FROM", "TABLE"):
            continue
        in_loop = any(n.block_kind is BlockKind.LOOP for n in ctx.blocks.enclosing(index))
        if target in ctx.catalog or stmt.has_word("INDEX") or in_loop:
            findings.append(ctx.finding(stmt))
    return findings


def _checks_directly_in(ctx: AnalysisContext, kind: BlockKind) -> list[Finding]:
    findings = []
    for index, stmt in enumerate(ctx.statements):
        if stmt.kind is not StatementKind.CHECK:
            continue
        nearest = ctx.blocks.innermost(index)
        if nearest is not None and nearest.block_kind is kind:
            findings.append(ctx.finding(stmt))
    return findings


def rule_r003_select_plus_check(ctx: AnalysisContext) -> list[Finding]:
    return _checks_directly_in(ctx, BlockKind.SELECT_LOOP)


def rule_r004_loop_plus_check(ctx: AnalysisContext) -> list[Finding]:
    return _checks_directly_in(ctx, BlockKind.LOOP)


def select_field_list(stmt: Statement) -> list[str]:
    """Tokens between ``SELECT [SINGLE|DISTINCT]`` and ``FROM``."""
    toks = stmt.tokens[1:]
    if toks and toks[0].is_word("SINGLE", "DISTINCT"):
        toks = toks[1:]
    out = []
    for tok in toks:
        if tok.is_word("FROM"):
            return out
        out.append(tok.text)
    return []


def rule_r005_select_star(ctx: AnalysisContext) -> list[Finding]:
    return [
        ctx.finding(stmt)
        for stmt in ctx.statements
        if stmt.kind is StatementKind.SELECT and select_field_list(stmt) == ["*"]
    ]


BUILTIN_RULES = (
    (R001, rule_r001_read_binary_search),
    (R002, rule_r002_modify_transporting),
    (R003, rule_r003_select_plus_check),
    (R004, rule_r004_loop_plus_check),
    (R005, rule_r005_select_star),
)


def default_registry() -> RuleRegistry:
    """A fresh registry holding the built-in rules R001-R005."""
    registry = RuleRegistry()
    for descriptor, check in BUILTIN_RULES:
        registry.register(descriptor, check)
    return registry
