"""Hand-labeled ABAP snippets.

``expected`` lists every (rule, line) a full run with all five rules active
must produce.  Labels were worked out by reading each snippet, not by
running the tool.
"""

SNIPPETS = [
    (
        "read_standard",
        """\
DATA ITAB TYPE STANDARD TABLE OF REC.
DATA WA TYPE REC.
READ TABLE ITAB INTO WA WITH KEY K = 'X'.
READ TABLE ITAB INTO WA WITH KEY K = 'Y' BINARY SEARCH.
READ TABLE ITAB INTO WA INDEX 1.
""",
        {("R001", 3)},
    ),
    (
        "read_table_kinds",
        """\
DATA S_TAB TYPE SORTED TABLE OF REC WITH UNIQUE KEY K.
DATA H_TAB TYPE HASHED TABLE OF REC WITH UNIQUE KEY K.
DATA U_TAB TYPE TABLE OF REC INITIAL SIZE 10.
DATA B_TAB TYPE TABLE OF REC INITIAL SIZE 500.
READ TABLE S_TAB INTO WA WITH KEY K = 'X'.
READ TABLE H_TAB INTO WA WITH KEY K = 'X'.
READ TABLE U_TAB INTO WA WITH KEY K = 'X'.
READ TABLE B_TAB INTO WA WITH KEY K = 'X'.
READ TABLE UNDECLARED INTO WA WITH KEY K = 'X'.
""",
        {("R001", 8), ("R001", 9)},
    ),
    (
        "read_obsolete_occurs",
        """\
DATA: BEGIN OF OLD_TAB OCCURS 0,
        K(1) TYPE C,
      END OF OLD_TAB.
DATA SMALL LIKE REC OCCURS 5.
READ TABLE OLD_TAB
     WITH KEY K = 'X'.
READ TABLE SMALL WITH KEY K = 'X'.
""",
        {("R001", 5)},
    ),
    (
        "modify_variants",
        """\
DATA ITAB TYPE TABLE OF REC.
MODIFY ITAB FROM WA INDEX 3.
MODIFY ITAB FROM WA INDEX 3 TRANSPORTING F1 F2.
MODIFY DBTAB FROM WA.
MODIFY OTHER FROM WA INDEX 2.
MODIFY TABLE ITAB FROM WA.
MODIFY DBTAB FROM TABLE ITAB.
""",
        {("R002", 2), ("R002", 5), ("R002", 6)},
    ),
    (
        "modify_in_loop",
        """\
LOOP AT GT_DATA INTO WA.
  WA-F1 = 1.
  MODIFY GT_DATA FROM WA.
  MODIFY GT_DATA FROM WA TRANSPORTING F1.
ENDLOOP.
LOOP AT SCREEN.
  SCREEN-INPUT = 0.
  MODIFY SCREEN.
ENDLOOP.
""",
        {("R002", 3)},
    ),
    (
        "select_plus_check",
        """\
SELECT * FROM SBOOK INTO SBOOK_WA.
  CHECK SBOOK_WA-CARRID = 'LH'.
  WRITE SBOOK_WA-CONNID.
ENDSELECT.
CHECK SY-SUBRC = 0.
""",
        {("R003", 2), ("R005", 1)},
    ),
    (
        "select_array_fetch",
        """\
SELECT * FROM SFLIGHT INTO TABLE GT_FLIGHTS WHERE CARRID = 'LH'.
SELECT SINGLE * FROM SPFLI INTO WA WHERE CARRID = 'LH'.
SELECT CARRID CONNID FROM SFLIGHT
  INTO CORRESPONDING FIELDS OF TABLE GT_FLIGHTS.
CHECK GT_FLIGHTS IS NOT INITIAL.
""",
        {("R005", 1), ("R005", 2)},
    ),
    (
        "select_with_inner_loop",
        """\
SELECT CARRID FROM SCARR INTO LV_CARRID.
  LOOP AT GT_CONN INTO WA.
    CHECK WA-CARRID = LV_CARRID.
  ENDLOOP.
  CHECK LV_CARRID <> 'AA'.
ENDSELECT.
""",
        {("R004", 3), ("R003", 5)},
    ),
    (
        "loop_checks",
        """\
DATA GT_ITEMS TYPE STANDARD TABLE OF REC.
LOOP AT GT_ITEMS INTO WA.
  CHECK WA-K = 'X'.
  CHECK WA-F1 > 10.
  MODIFY GT_ITEMS FROM WA.
ENDLOOP.
""",
        {("R004", 3), ("R004", 4), ("R002", 5)},
    ),
    (
        "form_check",
        """\
FORM CHECK_IT USING P_VAL.
  CHECK P_VAL IS NOT INITIAL.
  READ TABLE GT_ITEMS INTO WA WITH KEY K = P_VAL.
ENDFORM.
""",
        {("R001", 3)},
    ),
    (
        "chains_and_comments",
        """\
* header comment with READ TABLE ITAB WITH KEY K = 'X'.
DATA: ITAB TYPE TABLE OF REC, " inline comment READ TABLE
      JTAB TYPE SORTED TABLE OF REC WITH NON-UNIQUE KEY K.
READ TABLE: ITAB INTO WA WITH KEY K = 'it''s',
            JTAB INTO WA WITH KEY K = 'X'.
WRITE: / 'READ TABLE ITAB WITH KEY K', 'done'.
""",
        {("R001", 4)},
    ),
    (
        "nested_loops",
        """\
SELECT CARRID CONNID FROM SPFLI
  INTO CORRESPONDING FIELDS OF WA
  WHERE CARRID = 'LH'.
  CHECK WA-CONNID > '0100'.
ENDSELECT.
LOOP AT OUTER INTO WO.
  LOOP AT INNER INTO WI WHERE K = WO-K.
    CHECK WI-F1 > 0.
  ENDLOOP.
  CHECK WO-F2 > 0.
ENDLOOP.
""",
        {("R003", 4), ("R004", 8), ("R004", 10)},
    ),
    (
        "lower_case",
        """\
data lt_tab type standard table of rec.
read table lt_tab into ls_wa with key k = 'x'.
modify lt_tab from ls_wa index sy-tabix.
""",
        {("R001", 2), ("R002", 3)},
    ),
]

ALL_ACTIVE = '{"rules": {"R005": {"active": true}}}'
