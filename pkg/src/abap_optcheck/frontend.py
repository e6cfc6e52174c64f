"""ABAP frontend: lexing, statement splitting, classification, table catalog
and block nesting for the subset of ABAP the optimization rules look at.

The accepted subset is deliberately small: period-terminated statements,
colon chains, ``*`` full-line and ``"`` inline comments, and the
DATA/TYPES/SELECT/READ/MODIFY/LOOP/CHECK/SORT/FORM statement families.
Everything else is classified ``GENERIC`` and passes through untouched.

Usage
-----
::

    unit = SourceUnit.from_text("ZDEMO", source)
    parsed = analyze_source(unit)
    parsed.statements, parsed.catalog, parsed.blocks, parsed.diagnostics
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

__all__ = [
    "BlockKind",
    "BlockNode",
    "BlockTree",
    "FrontendError",
    "InputError",
    "MissingTerminator",
    "ParsedSource",
    "Redeclaration",
    "SourceUnit",
    "Statement",
    "StatementKind",
    "TableCatalog",
    "TableEntry",
    "TableKind",
    "Token",
    "TokenKind",
    "UnbalancedBlock",
    "UnterminatedString",
    "analyze_source",
    "build_block_tree",
    "build_table_catalog",
    "classify_statement",
    "lex_source",
    "load_source",
    "split_lines",
    "split_statements",
]


# --------------------------------------------------------------------------
# errors / diagnostics
# --------------------------------------------------------------------------


class FrontendError(Exception):
    """A recoverable problem found while reading a source unit.

    Frontend operations raise these when called without a ``diagnostics``
    list; with one they append the error and keep going.
    """

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message

    def __eq__(self, other: object) -> bool:
        return (
            type(self) is type(other)
            and self.line == other.line  # type: ignore[attr-defined]
            and self.message == other.message  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.line, self.message))


class UnterminatedString(FrontendError):
    def __init__(self, line: int) -> None:
        super().__init__(line, "unterminated string literal")


class MissingTerminator(FrontendError):
    def __init__(self, line: int) -> None:
        super().__init__(line, "statement not terminated by '.'")


class UnbalancedBlock(FrontendError):
    def __init__(self, line: int, expected_kind: str, detail: str) -> None:
        super().__init__(line, f"unbalanced {expected_kind} block: {detail}")
        self.expected_kind = expected_kind


class Redeclaration(FrontendError):
    def __init__(self, line: int, name: str) -> None:
        super().__init__(line, f"internal table {name} re-declared; later declaration wins")
        self.name = name


class InputError(Exception):
    """A source file could not be read or decoded."""


def _report(error: FrontendError, diagnostics: Optional[list]) -> None:
    if diagnostics is None:
        raise error
    diagnostics.append(error)


# --------------------------------------------------------------------------
# source units
# --------------------------------------------------------------------------

_LINE_BREAK = re.compile(r"\r\n|\r|\n")


def split_lines(text: str) -> list[str]:
    """Split on CR, LF or CRLF only; a trailing terminator adds no line."""
    if not text:
        return []
    lines = _LINE_BREAK.split(text)
    if lines[-1] == "":
        lines.pop()
    return lines


@dataclass(frozen=True)
class SourceUnit:
    name: str
    lines: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("source unit name must be non-empty")
        object.__setattr__(self, "lines", tuple(self.lines))

    @classmethod
    def from_text(cls, name: str, text: str) -> "SourceUnit":
        return cls(name, tuple(split_lines(text)))

    def line(self, number: int) -> str:
        """Return the 1-based line ``number``."""
        return self.lines[number - 1]


def load_source(path: str | Path) -> SourceUnit:
    """Read a UTF-8 ABAP file; the path string becomes the unit name."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror or exc})") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8 (byte offset {exc.start})") from exc
    if text.startswith("\ufeff"):
        text = text[1:]
    return SourceUnit.from_text(str(path), text)


# --------------------------------------------------------------------------
# lexer
# --------------------------------------------------------------------------


class TokenKind(enum.Enum):
    WORD = "WORD"
    STRING_LITERAL = "STRING_LITERAL"
    NUMBER = "NUMBER"
    OPERATOR = "OPERATOR"
    PUNCT = "PUNCT"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    line: int
    column: int

    def is_word(self, *texts: str) -> bool:
        return self.kind is TokenKind.WORD and (not texts or self.text in texts)


# Order matters: field symbols before the '<' operator, multi-char operators
# before single-char ones.
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\f\v]+)
  | (?P<word><[A-Za-z_][A-Za-z0-9_]*>
      | (?:/[A-Za-z0-9_]+/)?[A-Za-z_%][A-Za-z0-9_%]*(?:[-~][A-Za-z0-9_%]+)*(?:=>[A-Za-z_][A-Za-z0-9_]*)?)
  | (?P<number>[0-9]+)
  | (?P<operator>\*\*|<>|<=|>=|=<|=>|\?=|&&|->|[=<>+\-*/&])
  | (?P<punct>[.,:()\[\]{}|`@!#$^;\\])
    """,
    re.VERBOSE,
)


def _lex_line(text: str, lineno: int, diagnostics: Optional[list]) -> list[Token]:
    tokens: list[Token] = []
    if text.startswith("*"):
        return tokens
    pos = 0
    end = len(text)
    while pos < end:
        ch = text[pos]
        if ch == '"':
            break
        if ch == "'":
            start = pos
            pos += 1
            buf: list[str] = []
            closed = False
            while pos < end:
                c = text[pos]
                if c == "'":
                    if pos + 1 < end and text[pos + 1] == "'":
                        buf.append("'")
                        pos += 2
                        continue
                    pos += 1
                    closed = True
                    break
                buf.append(c)
                pos += 1
            if not closed:
                _report(UnterminatedString(lineno), diagnostics)
            if buf:
                tokens.append(Token("".join(buf), TokenKind.STRING_LITERAL, lineno, start + 1))
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            # any other character stands alone as punctuation
            tokens.append(Token(ch, TokenKind.PUNCT, lineno, pos + 1))
            pos += 1
            continue
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "word":
                tokens.append(Token(value.upper(), TokenKind.WORD, lineno, pos + 1))
            elif kind == "number":
                tokens.append(Token(value, TokenKind.NUMBER, lineno, pos + 1))
            elif kind == "operator":
                tokens.append(Token(value, TokenKind.OPERATOR, lineno, pos + 1))
            else:
                tokens.append(Token(value, TokenKind.PUNCT, lineno, pos + 1))
        pos = m.end()
    return tokens


def lex_source(unit: SourceUnit, diagnostics: Optional[list] = None) -> list[Token]:
    """Tokenize ``unit``.

    Parameters
    ----------
    unit:
        The source to lex.
    diagnostics:
        If given, an unterminated string literal is appended here as an
        ``UnterminatedString`` and the literal runs to end of line.  If
        ``None`` the error is raised.

    Returns
    -------
    list[Token]
        Tokens in source order.  Comments produce nothing; empty string
        literals (``''``) produce nothing either, since tokens are non-empty.
    """
    tokens: list[Token] = []
    for lineno, text in enumerate(unit.lines, start=1):
        tokens.extend(_lex_line(text, lineno, diagnostics))
    return tokens


# --------------------------------------------------------------------------
# statements
# --------------------------------------------------------------------------


class StatementKind(enum.Enum):
    DATA_DECL = "DATA_DECL"
    TYPES_DECL = "TYPES_DECL"
    SELECT = "SELECT"
    ENDSELECT = "ENDSELECT"
    CHECK = "CHECK"
    READ_TABLE = "READ_TABLE"
    MODIFY = "MODIFY"
    LOOP_AT = "LOOP_AT"
    ENDLOOP = "ENDLOOP"
    SORT = "SORT"
    FORM = "FORM"
    ENDFORM = "ENDFORM"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class Statement:
    kind: StatementKind
    tokens: tuple[Token, ...]
    first_line: int
    last_line: int
    # tokens of ``tokens`` that came from a chain head, 0 if not chained
    head_length: int = 0

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("statement must have at least one token")
        if self.first_line > self.last_line:
            raise ValueError("first_line must not exceed last_line")

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]

    def has_sequence(self, *texts: str) -> bool:
        """True if the WORD tokens ``texts`` appear adjacently in order."""
        toks = self.tokens
        k = len(texts)
        for i in range(len(toks) - k + 1):
            if all(toks[i + j].is_word(texts[j]) for j in range(k)):
                return True
        return False

    def has_word(self, text: str) -> bool:
        return any(t.is_word(text) for t in self.tokens)


def _is_punct(tok: Token, text: str) -> bool:
    return tok.kind is TokenKind.PUNCT and tok.text == text


def _make_statement(tokens: list[Token], head_length: int = 0) -> Statement:
    body = tokens[head_length:] or tokens
    first = body[0].line
    last = max(t.line for t in body)
    return classify_statement(
        Statement(StatementKind.GENERIC, tuple(tokens), first, last, head_length)
    )


def _expand(run: list[Token]) -> list[Statement]:
    colon = next((i for i, t in enumerate(run) if _is_punct(t, ":")), None)
    if colon is None:
        return [_make_statement(run)] if run else []
    head = run[:colon]
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in run[colon + 1:]:
        if tok.kind is TokenKind.PUNCT and tok.text in "([":
            depth += 1
        elif tok.kind is TokenKind.PUNCT and tok.text in ")]":
            depth = max(depth - 1, 0)
        if depth == 0 and _is_punct(tok, ","):
            parts.append([])
            continue
        # a second colon inside a chain is ignored, as ABAP does
        if _is_punct(tok, ":"):
            continue
        parts[-1].append(tok)
    out = []
    for part in parts:
        tokens = head + part
        if tokens:
            out.append(_make_statement(tokens, len(head) if part else 0))
    return out


def split_statements(tokens: list[Token], diagnostics: Optional[list] = None) -> list[Statement]:
    """Group tokens into statements terminated by ``.``, expanding chains.

    ``HEAD: a, b.`` becomes ``HEAD a`` and ``HEAD b``.  Statement tokens exclude
    the terminating period, the chain colon and the chain commas.  A trailing
    run without a period is still emitted, with a ``MissingTerminator``.
    """
    statements: list[Statement] = []
    run: list[Token] = []
    for tok in tokens:
        if _is_punct(tok, "."):
            statements.extend(_expand(run))
            run = []
        else:
            run.append(tok)
    if run:
        _report(MissingTerminator(run[-1].line), diagnostics)
        statements.extend(_expand(run))
    return statements


_SIMPLE_HEADS = {
    "DATA": StatementKind.DATA_DECL,
    "TYPES": StatementKind.TYPES_DECL,
    "SELECT": StatementKind.SELECT,
    "ENDSELECT": StatementKind.ENDSELECT,
    "CHECK": StatementKind.CHECK,
    "MODIFY": StatementKind.MODIFY,
    "LOOP": StatementKind.LOOP_AT,
    "ENDLOOP": StatementKind.ENDLOOP,
    "SORT": StatementKind.SORT,
    "FORM": StatementKind.FORM,
    "ENDFORM": StatementKind.ENDFORM,
}


def classify_statement(stmt: Statement) -> Statement:
    """Return ``stmt`` with its kind set from the leading word(s)."""
    first = stmt.tokens[0]
    kind = StatementKind.GENERIC
    if first.kind is TokenKind.WORD:
        if first.text == "READ":
            if len(stmt.tokens) > 1 and stmt.tokens[1].is_word("TABLE"):
                kind = StatementKind.READ_TABLE
        else:
            kind = _SIMPLE_HEADS.get(first.text, StatementKind.GENERIC)
    if kind is stmt.kind:
        return stmt
    return Statement(kind, stmt.tokens, stmt.first_line, stmt.last_line, stmt.head_length)


# --------------------------------------------------------------------------
# table catalog
# --------------------------------------------------------------------------


class TableKind(enum.Enum):
    STANDARD = "STANDARD"
    SORTED = "SORTED"
    HASHED = "HASHED"
    UNKNOWN = "UNKNOWN"  # query-time only, never stored


@dataclass(frozen=True)
class TableEntry:
    kind: TableKind
    initial_size: Optional[int] = None


@dataclass(frozen=True)
class TableCatalog:
    entries: dict[str, TableEntry] = field(default_factory=dict)

    def kind_of(self, name: str) -> TableKind:
        entry = self.entries.get(name.upper())
        return entry.kind if entry else TableKind.UNKNOWN

    def get(self, name: str) -> Optional[TableEntry]:
        return self.entries.get(name.upper())

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and name.upper() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


_KIND_WORDS = {"STANDARD": TableKind.STANDARD, "SORTED": TableKind.SORTED, "HASHED": TableKind.HASHED}


def _int_after(words: list[str], i: int) -> Optional[int]:
    if i < len(words) and words[i].isdigit():
        return int(words[i])
    return None


def _parse_table_decl(stmt: Statement, table_types: dict[str, TableEntry]) -> Optional[tuple[str, TableEntry]]:
    """Match one DATA/TYPES declaration; ``None`` if it declares no table."""
    toks = stmt.tokens
    words = stmt.words
    if len(toks) < 3:
        return None
    if words[1] == "BEGIN" and len(words) > 3 and words[2] == "OF":
        # DATA BEGIN OF itab OCCURS n (header-line table)
        name = words[3]
        if "OCCURS" in words:
            return name, TableEntry(TableKind.STANDARD, _int_after(words, words.index("OCCURS") + 1))
        return None
    if toks[1].kind is not TokenKind.WORD:
        return None
    name = words[1]
    i = 2
    # skip an optional length spec: DATA name(10) ...
    if i < len(toks) and _is_punct(toks[i], "("):
        while i < len(toks) and not _is_punct(toks[i], ")"):
            i += 1
        i += 1
    if i >= len(words) or words[i] not in ("TYPE", "LIKE"):
        return None
    rest = words[i + 1:]
    initial = None
    if "INITIAL" in rest:
        j = rest.index("INITIAL")
        if j + 1 < len(rest) and rest[j + 1] == "SIZE":
            initial = _int_after(rest, j + 2)
    if rest[:1] and rest[0] in _KIND_WORDS and rest[1:3] == ["TABLE", "OF"]:
        return name, TableEntry(_KIND_WORDS[rest[0]], initial)
    if rest[:2] == ["TABLE", "OF"]:
        return name, TableEntry(TableKind.STANDARD, initial)
    if "OCCURS" in rest:
        return name, TableEntry(TableKind.STANDARD, _int_after(rest, rest.index("OCCURS") + 1))
    if len(rest) >= 1 and rest[0] in table_types and stmt.kind is StatementKind.DATA_DECL:
        declared = table_types[rest[0]]
        return name, TableEntry(declared.kind, initial if initial is not None else declared.initial_size)
    return None


def build_table_catalog(stmts: Iterable[Statement], diagnostics: Optional[list] = None) -> TableCatalog:
    """Collect internal-table declarations from DATA statements.

    Table types declared with TYPES are remembered so that ``DATA x TYPE tt``
    picks up the kind of ``tt``; the types themselves are not cataloged.
    Re-declaring a name overwrites the earlier entry and reports a
    ``Redeclaration``.
    """
    entries: dict[str, TableEntry] = {}
    table_types: dict[str, TableEntry] = {}
    for stmt in stmts:
        if stmt.kind not in (StatementKind.DATA_DECL, StatementKind.TYPES_DECL):
            continue
        parsed = _parse_table_decl(stmt, table_types)
        if parsed is None:
            continue
        name, entry = parsed
        if stmt.kind is StatementKind.TYPES_DECL:
            table_types[name] = entry
            continue
        if name in entries:
            _report(Redeclaration(stmt.first_line, name), diagnostics)
        entries[name] = entry
    return TableCatalog(entries)


# --------------------------------------------------------------------------
# block tree
# --------------------------------------------------------------------------


class BlockKind(enum.Enum):
    SELECT_LOOP = "SELECT_LOOP"
    LOOP = "LOOP"
    FORM = "FORM"


@dataclass(frozen=True)
class BlockNode:
    block_kind: BlockKind
    open_statement_index: int
    close_statement_index: int
    parent: Optional[int] = None  # index into BlockTree.nodes

    def contains(self, index: int) -> bool:
        return self.open_statement_index < index < self.close_statement_index


@dataclass(frozen=True)
class BlockTree:
    nodes: tuple[BlockNode, ...] = ()

    def enclosing(self, index: int) -> list[BlockNode]:
        """Blocks strictly enclosing statement ``index``, innermost first."""
        found = [n for n in self.nodes if n.contains(index)]
        found.sort(key=lambda n: n.open_statement_index, reverse=True)
        return found

    def innermost(self, index: int) -> Optional[BlockNode]:
        found = self.enclosing(index)
        return found[0] if found else None


_OPENERS = {
    StatementKind.LOOP_AT: BlockKind.LOOP,
    StatementKind.FORM: BlockKind.FORM,
}
_CLOSERS = {
    StatementKind.ENDSELECT: BlockKind.SELECT_LOOP,
    StatementKind.ENDLOOP: BlockKind.LOOP,
    StatementKind.ENDFORM: BlockKind.FORM,
}


def is_select_loop(stmt: Statement) -> bool:
    """A SELECT loops over rows unless it is SINGLE or fetches into a table."""
    if stmt.kind is not StatementKind.SELECT:
        return False
    if len(stmt.tokens) > 1 and stmt.tokens[1].is_word("SINGLE"):
        return False
    for lead in ("INTO", "APPENDING"):
        if stmt.has_sequence(lead, "TABLE") or stmt.has_sequence(lead, "CORRESPONDING", "FIELDS", "OF", "TABLE"):
            return False
    return True


def build_block_tree(stmts: list[Statement], diagnostics: Optional[list] = None) -> BlockTree:
    """Pair SELECT/ENDSELECT, LOOP/ENDLOOP and FORM/ENDFORM with a stack.

    A close that does not match the top of the stack but matches a block
    further down closes that block; the skipped opens are reported unclosed
    and dropped.  A close with no matching open is reported and ignored, as
    is any block still open at the end.  Only matched pairs become nodes, so
    the result is always properly nested.
    """
    stack: list[tuple[BlockKind, int]] = []
    pairs: list[tuple[BlockKind, int, int]] = []
    for index, stmt in enumerate(stmts):
        if stmt.kind is StatementKind.SELECT:
            if is_select_loop(stmt):
                stack.append((BlockKind.SELECT_LOOP, index))
            continue
        if stmt.kind in _OPENERS:
            stack.append((_OPENERS[stmt.kind], index))
            continue
        wanted = _CLOSERS.get(stmt.kind)
        if wanted is None:
            continue
        depth = next((d for d in range(len(stack) - 1, -1, -1) if stack[d][0] is wanted), None)
        if depth is None:
            _report(
                UnbalancedBlock(stmt.first_line, wanted.value, f"{stmt.tokens[0].text} without opening statement"),
                diagnostics,
            )
            continue
        while len(stack) - 1 > depth:
            kind, open_index = stack.pop()
            _report(
                UnbalancedBlock(stmts[open_index].first_line, kind.value, f"not closed before line {stmt.first_line}"),
                diagnostics,
            )
        kind, open_index = stack.pop()
        pairs.append((kind, open_index, index))
    for kind, open_index in reversed(stack):
        _report(UnbalancedBlock(stmts[open_index].first_line, kind.value, "not closed at end of source"), diagnostics)

    pairs.sort(key=lambda p: p[1])
    nodes: list[BlockNode] = []
    open_chain: list[int] = []  # indices into nodes of currently enclosing blocks
    for kind, start, end in pairs:
        while open_chain and nodes[open_chain[-1]].close_statement_index < start:
            open_chain.pop()
        parent = open_chain[-1] if open_chain else None
        nodes.append(BlockNode(kind, start, end, parent))
        open_chain.append(len(nodes) - 1)
    return BlockTree(tuple(nodes))


# --------------------------------------------------------------------------
# pipeline
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParsedSource:
    unit: SourceUnit
    tokens: tuple[Token, ...]
    statements: tuple[Statement, ...]
    catalog: TableCatalog
    blocks: BlockTree
    diagnostics: tuple[FrontendError, ...]


def analyze_source(unit: SourceUnit) -> ParsedSource:
    """Run the whole frontend, collecting every error as a diagnostic."""
    diagnostics: list[FrontendError] = []
    tokens = lex_source(unit, diagnostics)
    statements = split_statements(tokens, diagnostics)
    catalog = build_table_catalog(statements, diagnostics)
    blocks = build_block_tree(statements, diagnostics)
    return ParsedSource(unit, tuple(tokens), tuple(statements), catalog, blocks, tuple(diagnostics))
