"""Write a new rule and run it next to the built-in ones.

A rule is a descriptor (id, texts, default order) plus a function that
receives the parsed program and returns findings. This one flags
SELECT ... ENDSELECT loops nested inside a LOOP AT, which issue one
database round trip per outer row.

Run:  python3 demos/04_custom_rule.py
"""
from abap_optcheck.engine import RuleConfig, RuleDescriptor, resolve_rules, run_analysis
from abap_optcheck.frontend import BlockKind, SourceUnit
from abap_optcheck.report import render_text
from abap_optcheck.rules import default_registry

NESTED_SELECT = RuleDescriptor(
    id="X100",
    title="SELECT loop inside LOOP AT",
    default_order=15,
    default_active=True,
    explanation=(
        "DATABASE ACCESS INSIDE A TABLE LOOP RUNS ONCE PER ROW.",
        "READ ALL NEEDED ROWS BEFORE THE LOOP (FOR ALL ENTRIES) INSTEAD.",
    ),
    wrong_example=(
        "LOOP AT ITAB INTO WA.",
        "  SELECT * FROM SBOOK INTO WB WHERE CARRID = WA-CARRID.",
        "  ENDSELECT.",
        "ENDLOOP.",
    ),
    right_example=(
        "SELECT * FROM SBOOK INTO TABLE BOOKINGS",
        "  FOR ALL ENTRIES IN ITAB WHERE CARRID = ITAB-CARRID.",
    ),
)

registry = default_registry()


@registry.rule(NESTED_SELECT)
def nested_select(ctx):
    found = []
    for node in ctx.blocks.nodes:
        if node.block_kind is not BlockKind.SELECT_LOOP:
            continue
        outer = ctx.blocks.enclosing(node.open_statement_index)
        if any(b.block_kind is BlockKind.LOOP for b in outer):
            found.append(ctx.finding(ctx.statements[node.open_statement_index]))
    return found


PROGRAM = """\
LOOP AT ITAB INTO WA.
  SELECT * FROM SBOOK INTO WB WHERE CARRID = WA-CARRID.
    CHECK WB-CLASS = 'F'.
  ENDSELECT.
ENDLOOP.
"""

rules = resolve_rules(RuleConfig.defaults(), registry)
print("rules run:", ", ".join(r.id for r in rules))
report = run_analysis(SourceUnit.from_text("ZNEST", PROGRAM), rules)
print(render_text(report), end="")
