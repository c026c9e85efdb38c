"""Component sizing equations for the supply, sensor, timer and driver stages.

All functions take and return SI units (V, A, ohm, F, s, Hz) as plain floats.
Exact constants are used throughout; no preferred value is ever
substituted silently, :func:`nearest_preferred` reports one alongside.
"""

from __future__ import annotations

import math

E_SERIES: dict[str, tuple[float, ...]] = {
    "E12": (1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2),
    "E24": (1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
            3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1),
}

MONOSTABLE_K = 1.1  # 555 one-shot: T = 1.1 R C


class DesignError(ValueError):
    pass


def _positive(**values: float) -> None:
    for name, v in values.items():
        if not v > 0:
            raise DesignError(f"{name} must be positive, got {v}")


# -- power supply ---------------------------------------------------------------


def rectified_peak(v_reg: float, headroom: float, n_diodes: int, v_diode: float) -> float:
    """Peak secondary voltage: regulator output + headroom + bridge diode drops."""
    for name, v in dict(v_reg=v_reg, headroom=headroom, n_diodes=n_diodes, v_diode=v_diode).items():
        if v < 0:
            raise DesignError(f"{name} must be non-negative, got {v}")
    return v_reg + headroom + n_diodes * v_diode


def transformer_rms(v_peak: float) -> float:
    if v_peak < 0:
        raise DesignError(f"v_peak must be non-negative, got {v_peak}")
    return v_peak / math.sqrt(2)


def ripple_amplitude(v_peak: float, ripple_fraction: float) -> float:
    if not 0 <= ripple_fraction <= 1:
        raise DesignError(f"ripple_fraction must be in [0, 1], got {ripple_fraction}")
    return v_peak * ripple_fraction


def smoothing_capacitor(i_load: float, line_freq: float, dv: float) -> float:
    """Reservoir capacitor for a full-wave rectifier: C = I * (1 / 2f) / dV."""
    _positive(i_load=i_load, line_freq=line_freq, dv=dv)
    dt = 1 / (2 * line_freq)
    return i_load * dt / dv


# -- sensors --------------------------------------------------------------------


def led_series_resistor(v_supply: float, v_forward: float, i_forward: float) -> float:
    if v_supply <= v_forward:
        raise DesignError(
            f"supply {v_supply} V cannot forward-bias an LED with V_F = {v_forward} V")
    _positive(i_forward=i_forward)
    return (v_supply - v_forward) / i_forward


def divider_output(r_top: float, r_bottom: float, v_supply: float) -> float:
    if r_top < 0 or r_bottom < 0 or r_top + r_bottom <= 0:
        raise DesignError("divider resistances must be non-negative with a positive sum")
    return v_supply * r_bottom / (r_top + r_bottom)


def reference_divider_resistor(v_ref: float, v_supply: float, r_fixed: float) -> float:
    """Lower divider leg that sets ``v_ref`` under a fixed upper leg ``r_fixed``."""
    if not 0 < v_ref < v_supply:
        raise DesignError(f"need 0 < v_ref < v_supply, got v_ref={v_ref}, v_supply={v_supply}")
    _positive(r_fixed=r_fixed)
    return v_ref * r_fixed / (v_supply - v_ref)


# -- timers ------------------------------------------------------------------------


def monostable_period(r: float, c: float) -> float:
    _positive(r=r, c=c)
    return MONOSTABLE_K * r * c


def monostable_resistor(t: float, c: float) -> float:
    _positive(t=t, c=c)
    return t / (MONOSTABLE_K * c)


# -- transistor switch ----------------------------------------------------------------


def switch_base_resistor(v_supply: float, r_coil: float, h_fe: float,
                         v_in: float, v_be: float) -> float:
    """Base resistor that just saturates a relay-driving switch.

    With V_CE = 0 the collector current is V+/R_C, the base current
    I_C/h_fe, and R_B = (V_in - V_BE) / I_B.
    """
    _positive(v_supply=v_supply, r_coil=r_coil, h_fe=h_fe)
    if v_in <= v_be:
        raise DesignError(f"v_in ({v_in} V) must exceed v_be ({v_be} V)")
    i_c = v_supply / r_coil
    i_b = i_c / h_fe
    return (v_in - v_be) / i_b


# -- preferred values ----------------------------------------------------------------------


def _clean(x: float) -> float:
    return float(f"{x:.12g}")


def series_members(series: str, decade: int) -> list[float]:
    try:
        mantissas = E_SERIES[series]
    except KeyError:
        raise DesignError(f"unknown series {series!r}; use one of {sorted(E_SERIES)}") from None
    return [_clean(m * 10.0 ** decade) for m in mantissas]


def nearest_preferred(value: float, series: str = "E12") -> float:
    """Closest series member by relative error |p - v| / v; ties go to the larger."""
    _positive(value=value)
    decade = math.floor(math.log10(value))
    candidates = [p for d in (decade - 1, decade, decade + 1) for p in series_members(series, d)]
    # error rounded so decimal ties (9.1 between 8.2 and 10) are seen as ties
    return min(candidates, key=lambda p: (round(abs(p - value) / value, 12), -p))
