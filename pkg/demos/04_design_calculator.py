"""
Sizing the stages
=================

Every sizing equation for the supply, sensor, timer and relay-driver
stages, evaluated at the design's operating points, next to the nearest
E12 value.
"""

from doorsim import design
from doorsim.cli import si, sig4
from doorsim.components import transistor_saturated

v_peak = design.rectified_peak(v_reg=12, headroom=4, n_diodes=4, v_diode=0.6)
dv = design.ripple_amplitude(v_peak, 0.15)

rows = [
    ("transformer peak", v_peak, "V"),
    ("transformer rms", design.transformer_rms(v_peak), "V"),
    ("ripple", dv, "V"),
    ("reservoir capacitor (1 A)", design.smoothing_capacitor(1, 50, dv), "F"),
    ("IR LED resistor", design.led_series_resistor(9, 1.7, 0.150), "Ω"),
    ("photodiode divider", design.divider_output(1e6, 1e6, 12), "V"),
    ("comparator reference leg", design.reference_divider_resistor(4, 12, 1000), "Ω"),
    ("10 s one-shot resistor", design.monostable_resistor(10, 100e-6), "Ω"),
    ("5 s one-shot resistor", design.monostable_resistor(5, 100e-6), "Ω"),
    ("door relay base resistor", design.switch_base_resistor(12, 400, 200, 10, 0.6), "Ω"),
    ("lamp relay base resistor", design.switch_base_resistor(12, 400, 350, 12, 0.6), "Ω"),
]

for name, value, unit in rows:
    preferred = ""
    if unit in ("Ω", "F"):
        preferred = si(design.nearest_preferred(value), unit)
    print(f"{name:<28} {sig4(value):>10} {unit:<2} {preferred}")

# %%
# Does a fitted base resistor still saturate the switch? The door relay
# driver works with the computed 64 kΩ, but a 100 kΩ part at h_FE = 200
# only delivers about 94 µA of the 150 µA needed.

for r_b in (62_667, 64_000, 82_000, 100_000):
    ok = transistor_saturated(10, 0.6, r_b, 200, 12, 400)
    print(f"door driver with R_B = {si(r_b, 'Ω'):>8}: {'saturated' if ok else 'UNDER-DRIVEN'}")
