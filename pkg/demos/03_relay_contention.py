"""
Both relays at once
===================

The door one-shots are not retriggerable. A second beam break at 8 s
finds the 5 s opener idle (it expired at 6 s) but the 10 s closer still
running, so the opener restarts alone. When the closer expires at 11 s,
the XOR sees unequal inputs and energizes the close relay while the open
relay is still energized, until the opener expires at 13 s.
"""

from doorsim import DoorSystem, check_invariants
from doorsim.trace import HazardRecord, StateRecord

system = DoorSystem()
system.inject_person("IN", at=1000)
system.inject_person("IN", at=8000)
system.advance_until(20_000)

for record in system.records:
    if isinstance(record, (StateRecord, HazardRecord)):
        print(record)

# %%
# The checker treats the contention as a finding: it is paired with the
# FAULT interval, so the trace has no violations.

report = check_invariants(system.records)
print()
print(report.summary())
