"""Turn rules on and off and change the order warnings are grouped in.

Rule settings are a small JSON document. Every key is checked, so a typo
in a rule id or option fails loudly instead of being ignored.

Run:  python3 demos/02_configure_rules.py
"""
from abap_optcheck import ConfigError, check_source
from abap_optcheck.engine import effective_rules, load_config
from abap_optcheck.rules import default_registry

PROGRAM = """\
DATA ITAB TYPE STANDARD TABLE OF REC INITIAL SIZE 50.
READ TABLE ITAB INTO WA WITH KEY K = 'X'.
SELECT * FROM SBOOK INTO WB.
  CHECK WB-CARRID = 'LH'.
ENDSELECT.
"""


def show(title, config=None):
    report = check_source(PROGRAM, name="ZCFG", config=config)
    found = ", ".join(f"{f.rule_id}@{f.line}" for f in report.findings) or "nothing"
    print(f"{title:<34} {found}")


show("defaults")
show("R001 switched off", '{"rules": {"R001": {"active": false}}}')
show("R003 moved to the front", '{"rules": {"R003": {"order": 5}}}')
show("SELECT * rule switched on", '{"rules": {"R005": {"active": true}}}')
show("min_entries raised", '{"rules": {"R001": {"params": {"min_entries": "1000"}}}}')

print("\neffective rule table with R005 on:")
registry = default_registry()
config = load_config('{"rules": {"R005": {"active": true}, "R002": {"order": 99}}}', registry)
for rule in effective_rules(config, registry):
    print(f"  {rule.id}  order={rule.order:<3} active={rule.active}  {rule.descriptor.title}")

print()
try:
    load_config('{"rules": {"R01": {"active": false}}}', registry)
except ConfigError as exc:
    print(f"config error: {exc}")
