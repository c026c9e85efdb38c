import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from doorsim import design
from doorsim.design import DesignError

approx = pytest.approx


class TestSupply:
    def test_peak(self):
        assert design.rectified_peak(12, 4, 4, 0.6) == approx(18.4)
        assert design.rectified_peak(12, 4, 0, 0.6) == approx(16)
        assert design.rectified_peak(5, 2, 2, 0.7) == approx(8.4)

    def test_rms_uses_exact_root_two(self):
        assert design.transformer_rms(18.4) == approx(13.0108, abs=5e-4)
        assert design.transformer_rms(0) == 0
        assert design.transformer_rms(math.sqrt(2)) == approx(1.0)

    def test_ripple(self):
        assert design.ripple_amplitude(18.4, 0.15) == approx(2.76)
        assert design.ripple_amplitude(18.4, 0) == 0
        assert design.ripple_amplitude(10, 0.5) == approx(5)
        with pytest.raises(DesignError):
            design.ripple_amplitude(10, 1.5)

    def test_smoothing_capacitor(self):
        assert design.smoothing_capacitor(1, 50, 2.76) == approx(3.623e-3, rel=1e-3)
        assert design.smoothing_capacitor(0.5, 50, 2.76) == approx(1.812e-3, rel=1e-3)
        with pytest.raises(DesignError):
            design.smoothing_capacitor(1, 50, 0)
        with pytest.raises(DesignError):
            design.smoothing_capacitor(1, 0, 2.76)


class TestSensors:
    def test_led_resistor(self):
        assert design.led_series_resistor(9, 1.7, 0.150) == approx(48.67, abs=0.005)
        assert design.led_series_resistor(12, 1.7, 0.150) == approx(68.67, abs=0.005)
        with pytest.raises(DesignError):
            design.led_series_resistor(1.7, 1.7, 0.1)

    def test_divider(self):
        assert design.divider_output(1e6, 1e6, 12) == approx(6)
        assert design.divider_output(4700, 0, 12) == 0
        assert design.divider_output(0, 1000, 12) == approx(12)

    def test_reference_resistor(self):
        assert design.reference_divider_resistor(4, 12, 1000) == approx(500)
        assert design.reference_divider_resistor(6, 12, 1000) == approx(1000)
        assert design.reference_divider_resistor(3, 12, 1000) == approx(333.33, abs=0.01)
        with pytest.raises(DesignError):
            design.reference_divider_resistor(12, 12, 1000)


class TestTimers:
    def test_period(self):
        assert design.monostable_period(91e3, 100e-6) == approx(10.01)
        assert design.monostable_period(45.45e3, 100e-6) == approx(5.0, rel=1e-3)
        assert design.monostable_period(1, 1) == approx(1.1)

    def test_resistor(self):
        assert design.monostable_resistor(10, 100e-6) == approx(90909.1, abs=0.1)
        assert design.monostable_resistor(5, 100e-6) == approx(45454.5, abs=0.1)
        assert design.monostable_resistor(1.1, 1) == approx(1)


class TestBaseResistor:
    def test_light_driver(self):
        # exact formula gives 133 000; printed 133 022.17 comes from rounding I_B
        r = design.switch_base_resistor(12, 400, 350, 12, 0.6)
        assert r == approx(133_000)
        assert r == approx(133_022.17, rel=0.005)

    def test_door_driver_exact_value(self):
        assert design.switch_base_resistor(12, 400, 200, 10, 0.6) == approx(62_666.7, abs=0.1)

    def test_no_overdrive(self):
        with pytest.raises(DesignError):
            design.switch_base_resistor(12, 400, 200, 0.6, 0.6)


def _e12_brute_force(value):
    # exact rational arithmetic on the decimal value, every decade enumerated
    v = Fraction(repr(value))
    members = [Fraction(m) * Fraction(10) ** d for d in range(-13, 10)
               for m in (10, 12, 15, 18, 22, 27, 33, 39, 47, 56, 68, 82)]
    ranked = sorted(members, key=lambda p: (abs(p - v), -p))
    return float(ranked[0]), float(abs(abs(ranked[0] - v) - abs(ranked[1] - v)) / v)


class TestPreferred:
    @pytest.mark.parametrize("value,expected", [(90_909, 82_000), (45_454, 47_000), (1000, 1000)])
    def test_examples(self, value, expected):
        assert design.nearest_preferred(value, "E12") == approx(expected)

    @given(st.floats(1e-11, 1e8))
    def test_matches_enumeration(self, value):
        expected, margin = _e12_brute_force(value)
        # within float noise of a midpoint either neighbour is acceptable
        assume(margin == 0 or margin > 1e-9)
        assert design.nearest_preferred(value, "E12") == approx(expected, rel=1e-9)

    @given(st.floats(1e-11, 1e8), st.sampled_from(["E12", "E24"]))
    def test_idempotent(self, value, series):
        p = design.nearest_preferred(value, series)
        assert design.nearest_preferred(p, series) == p

    def test_series_sorted(self):
        for mantissas in design.E_SERIES.values():
            assert list(mantissas) == sorted(mantissas)

    def test_unknown_series(self):
        with pytest.raises(DesignError):
            design.nearest_preferred(100, "E7")


positive = st.floats(1e-6, 1e6)


@given(positive, positive)
def test_period_resistor_round_trip(t, c):
    assert design.monostable_period(design.monostable_resistor(t, c), c) == approx(t, rel=1e-9)


@given(st.floats(1, 1000), st.floats(1.0, 24))
def test_base_resistor_linear(h_fe, v_in):
    r = design.switch_base_resistor(12, 400, h_fe, v_in + 0.6, 0.6)
    assert design.switch_base_resistor(12, 400, 2 * h_fe, v_in + 0.6, 0.6) == approx(2 * r)
    assert design.switch_base_resistor(12, 400, h_fe, 2 * v_in + 0.6, 0.6) == approx(2 * r)


@given(st.floats(0, 1e6), st.floats(0, 1e6), st.floats(0.1, 1e3), st.floats(1.01, 10))
def test_divider_bounded_and_monotone(r_top, r_bottom, v, k):
    if r_top + r_bottom == 0:
        return
    out = design.divider_output(r_top, r_bottom, v)
    assert -1e-9 <= out <= v * (1 + 1e-12)
    assert design.divider_output(r_top, r_bottom * k, v) >= out - 1e-9


@given(st.floats(0.01, 0.99), st.floats(1, 48), st.floats(1, 1e6))
def test_reference_inverts_divider(frac, v_supply, r_fixed):
    v_ref = frac * v_supply
    r = design.reference_divider_resistor(v_ref, v_supply, r_fixed)
    assert design.divider_output(r_fixed, r, v_supply) == approx(v_ref, rel=1e-9)
