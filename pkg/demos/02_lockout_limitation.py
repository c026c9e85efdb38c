"""
Lockout and its side effect
===========================

While one sensor's 10 s one-shot is timing, the OR gate in front of the
other sensor is held HIGH so the same walker is not counted twice. The
price: a second person through the same beam inside those 10 s is not
counted either, and the lamp logic loses track of them.
"""

from doorsim import DoorSystem

for label, people in [
    ("two entries 3 s apart", [("IN", 1000), ("IN", 4000)]),
    ("two entries 12 s apart", [("IN", 1000), ("IN", 13_000)]),
    ("entry, exit 4 s later", [("IN", 1000), ("OUT", 5000)]),
    ("entry, exit 11 s later", [("IN", 1000), ("OUT", 12_000)]),
]:
    system = DoorSystem()
    for direction, at in people:
        system.inject_person(direction, at)
    system.advance_until(40_000)
    snap = system.snapshot()
    print(f"{label:<24} true occupancy={sum(1 if d == 'IN' else -1 for d, _ in people)}  "
          f"counted={snap.count:02d}  light={'ON' if snap.light_on else 'OFF'}")

# %%
# A departure from an empty room is counted down through zero: the
# cascaded decade counters wrap to 99 and the lamp comes back on.

system = DoorSystem()
system.inject_person("OUT", 1000)
system.advance_until(20_000)
print(f"exit from empty room -> count={system.count:02d}, light={'ON' if system.light_on else 'OFF'}")
