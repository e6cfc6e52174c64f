"""Analyze a small report program and print the optimization warnings.

The program reads a standard table by key without BINARY SEARCH and then
rewrites a whole row with MODIFY. Both statements get a warning block that
shows the wrong and the right way to write them. The second half applies
the suggested fixes and checks that the warnings are gone.

Run:  python3 demos/01_read_modify_report.py
"""
from abap_optcheck import check_source
from abap_optcheck.report import render_text

PROGRAM = """\
REPORT ZDEMO.
TYPES: BEGIN OF REC,
         K(1) TYPE C,
         F1 TYPE I,
         F2 TYPE I,
       END OF REC.
DATA ITAB TYPE STANDARD TABLE OF REC.
DATA WA TYPE REC.

SELECT * FROM ZREC INTO TABLE ITAB.
SORT ITAB BY K.
READ TABLE ITAB INTO WA WITH KEY K = 'X'.
MODIFY ITAB FROM WA INDEX 1.
"""

report = check_source(PROGRAM, name="ZDEMO")
print(render_text(report), end="")

# The report lists each warning's rule and line, so the fixes can be checked.
for f in report.findings:
    print(f"{f.rule_id} at line {f.line}")

fixed = PROGRAM.replace("K = 'X'.", "K = 'X' BINARY SEARCH.").replace(
    "INDEX 1.", "INDEX 1 TRANSPORTING F1 F2."
)
after = check_source(fixed, name="ZDEMO")
print(f"\nafter applying the right code: {len(after.findings)} findings")
