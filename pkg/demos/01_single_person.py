"""
One person walks in
===================

A single break of the entry beam at t = 1 s. The counter goes 00 -> 01,
the lamp relay pulls in, the open relay runs the motor for 5 s and the
close relay runs it back for the following 5 s.
"""

from doorsim import DoorSystem, write_trace
from doorsim.trace import StateRecord

system = DoorSystem()
system.enable_sampling(1000, 12_000)
system.inject_person("IN", at=1000, dwell_ms=400)
system.advance_until(12_000)

# %%
# The STATE records show the door sweeping open then closed. Sampling
# adds one every second so the motion is visible between events.

for record in system.records:
    if isinstance(record, StateRecord):
        bar = "#" * (record.door // 50)
        print(f"{record.time:>6} ms  count={record.count:02d} "
              f"light={'ON ' if record.light else 'OFF'} {record.motion:<8} {bar}")

# %%
# The full trace, including every net transition, is the same text the
# ``doorsim run`` command writes.

print()
print(write_trace(system.records), end="")
