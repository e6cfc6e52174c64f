"""Command-line entry point.

::

    abap-optcheck analyze PROG.abap [--config rules.json] [--format text|json]
                          [--output PATH] [--fail-on never|finding]
    abap-optcheck rules list [--config rules.json]
    abap-optcheck bench [--case read|modify|all] [--sizes 16,256] [--probes N]
                        [--repeats N] [--seed N]

Exit status: 0 clean, 1 findings (with ``--fail-on finding``), 2 usage,
configuration, input or capacity errors.
"""
from __future__ import annotations

import argparse
import enum
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import __version__
from .bench import (
    CapacityError,
    bench_modify_case,
    bench_read_case,
    bench_to_json,
    render_bench,
)
from .engine import ConfigError, effective_rules, load_config_file, resolve_rules, run_analysis
from .frontend import InputError, load_source
from .report import (
    FailPolicy,
    OutputFormat,
    RenderOptions,
    exit_code,
    render_json_many,
    render_text,
)
from .rules import default_registry

EXIT_CLEAN = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2

DEFAULT_SIZES = (16, 256, 4096, 65536)


class Command(enum.Enum):
    ANALYZE = "analyze"
    RULES_LIST = "rules list"
    BENCH = "bench"


class UsageError(Exception):
    def __init__(self, message: str, usage: str = "") -> None:
        super().__init__(message)
        self.usage = usage


@dataclass(frozen=True)
class BenchOptions:
    case: str = "all"
    sizes: tuple[int, ...] = DEFAULT_SIZES
    probes: int = 1000
    repeats: int = 5
    seed: int = 1
    fields: int = 10
    field_width: int = 100
    json_path: Optional[str] = None


@dataclass(frozen=True)
class Invocation:
    command: Command
    inputs: tuple[str, ...] = ()
    config_path: Optional[str] = None
    options: RenderOptions = field(default_factory=RenderOptions)
    output_path: Optional[str] = None
    bench: BenchOptions = field(default_factory=BenchOptions)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message, self.format_usage())


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _sizes(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty size list")
    return tuple(_positive_int(p) for p in parts)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abap-optcheck", description="Performance lint for ABAP source.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("analyze", help="check ABAP files for optimization warnings")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--fail-on", choices=["never", "finding"], default="finding")

    p = sub.add_parser("rules", help="inspect the rule set")
    rules_sub = p.add_subparsers(dest="rules_command", parser_class=_Parser)
    lp = rules_sub.add_parser("list", help="list rules with effective order and state")
    lp.add_argument("--config", metavar="PATH")

    p = sub.add_parser("bench", help="run the paired-solution micro-benchmarks")
    p.add_argument("--case", choices=["read", "modify", "all"], default="all")
    p.add_argument("--sizes", type=_sizes, default=DEFAULT_SIZES, metavar="CSV")
    p.add_argument("--probes", type=_positive_int, default=1000)
    p.add_argument("--repeats", type=_positive_int, default=5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--fields", type=_positive_int, default=10, help="modify case: fields per row")
    p.add_argument("--field-width", type=_positive_int, default=100, help="modify case: bytes per field")
    p.add_argument("--json", dest="json_path", metavar="PATH", help="also dump results as JSON")
    return parser


def parse_args(argv: Sequence[str]) -> Invocation:
    """Turn ``argv`` into an :class:`Invocation`; raises :class:`UsageError`."""
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    if ns.command is None:
        raise UsageError("a command is required", parser.format_usage())
    if ns.command == "analyze":
        return Invocation(
            command=Command.ANALYZE,
            inputs=tuple(ns.files),
            config_path=ns.config,
            options=RenderOptions(
                OutputFormat(ns.format),
                FailPolicy.NEVER if ns.fail_on == "never" else FailPolicy.ON_FINDING,
            ),
            output_path=ns.output,
        )
    if ns.command == "rules":
        if ns.rules_command != "list":
            raise UsageError("expected 'rules list'", parser.format_usage())
        return Invocation(command=Command.RULES_LIST, config_path=ns.config)
    if ns.fields < 2:
        raise UsageError("--fields must be >= 2", parser.format_usage())
    return Invocation(
        command=Command.BENCH,
        bench=BenchOptions(
            case=ns.case,
            sizes=ns.sizes,
            probes=ns.probes,
            repeats=ns.repeats,
            seed=ns.seed,
            fields=ns.fields,
            field_width=ns.field_width,
            json_path=ns.json_path,
        ),
    )


def _emit(text: str, output_path: Optional[str], stdout: TextIO) -> None:
    if output_path is None:
        stdout.write(text)
    else:
        Path(output_path).write_text(text, encoding="utf-8")


def cmd_analyze(inv: Invocation, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    registry = default_registry()
    try:
        rules = resolve_rules(load_config_file(inv.config_path, registry), registry)
    except ConfigError as exc:
        print(f"abap-optcheck: config error: {exc}", file=stderr)
        return EXIT_ERROR
    code = EXIT_CLEAN
    reports = []
    for path in sorted(inv.inputs):
        try:
            unit = load_source(path)
        except InputError as exc:
            print(f"abap-optcheck: {exc}", file=stderr)
            code = max(code, EXIT_ERROR)
            continue
        report = run_analysis(unit, rules)
        for diag in report.diagnostics:
            print(f"{unit.name}: {diag}", file=stderr)
        reports.append(report)
        code = max(code, exit_code(report, inv.options.fail_policy))
    if inv.options.format is OutputFormat.JSON:
        text = render_json_many(reports) + "\n"
    else:
        text = "".join(render_text(r) for r in reports)
    try:
        _emit(text, inv.output_path, stdout)
    except OSError as exc:
        print(f"abap-optcheck: cannot write {inv.output_path}: {exc}", file=stderr)
        return EXIT_ERROR
    return code


def cmd_rules_list(inv: Invocation, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    registry = default_registry()
    try:
        rules = effective_rules(load_config_file(inv.config_path, registry), registry)
    except ConfigError as exc:
        print(f"abap-optcheck: config error: {exc}", file=stderr)
        return EXIT_ERROR
    for r in rules:
        state = "active" if r.active else "inactive"
        stdout.write(f"{r.id}  {state:<8}  {r.order:>4}  {r.descriptor.title}\n")
    return EXIT_CLEAN


def cmd_bench(inv: Invocation, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    b = inv.bench
    results = []
    try:
        if b.case in ("read", "all"):
            results.append(bench_read_case(b.sizes, b.probes, b.repeats, b.seed))
        if b.case in ("modify", "all"):
            results.append(bench_modify_case(b.sizes, b.fields, b.field_width, b.repeats, b.seed))
    except CapacityError as exc:
        print(f"abap-optcheck: {exc}", file=stderr)
        return EXIT_ERROR
    stdout.write(render_bench(results))
    if b.json_path:
        try:
            Path(b.json_path).write_text(bench_to_json(results) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"abap-optcheck: cannot write {b.json_path}: {exc}", file=stderr)
            return EXIT_ERROR
    return EXIT_CLEAN


_COMMANDS = {
    Command.ANALYZE: cmd_analyze,
    Command.RULES_LIST: cmd_rules_list,
    Command.BENCH: cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        inv = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        stderr.write(exc.usage)
        stderr.write(f"abap-optcheck: error: {exc}\n")
        return EXIT_ERROR
    return _COMMANDS[inv.command](inv, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
