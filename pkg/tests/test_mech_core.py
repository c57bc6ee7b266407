"""Transmission statics: frozen-value checks and model invariants."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unfurlkit import (CrossSection, LoadSpec, SubvineSpec, TransmissionParams,
                       cross_section_properties, parallel_axis,
                       required_pressure, subvine_drive_force,
                       torque_balance_residual, total_unfurl_force,
                       unfurl_force_single)
from unfurlkit.errors import (FeasibilityError, InvalidGeometryError,
                              InvalidInputError)

# prototype channel diameter and wall-tangent placement radius
D32 = 0.032
R44 = 0.044

AREA_32 = 0.000804247719318987
INERTIA_32 = 5.147185403641518e-08


def rel(a, b):
    return abs(a - b) / abs(b)


class TestCrossSection:
    def test_prototype_diameter(self):
        cs = cross_section_properties(D32)
        assert rel(cs.area_m2, AREA_32) < 1e-12
        assert rel(cs.inertia_m4, INERTIA_32) < 1e-12

    def test_two_meter_circle_area_is_pi(self):
        assert cross_section_properties(2.0).area_m2 == pytest.approx(
            math.pi, rel=1e-15)

    def test_scaling_law(self):
        small = cross_section_properties(D32)
        big = cross_section_properties(2 * D32)
        assert rel(big.area_m2, 4 * small.area_m2) < 1e-12
        assert rel(big.inertia_m4, 16 * small.inertia_m4) < 1e-12

    @pytest.mark.parametrize("bad", [0.0, -0.01])
    def test_rejects_nonpositive_diameter(self, bad):
        with pytest.raises(InvalidGeometryError):
            cross_section_properties(bad)

    @given(st.floats(min_value=1e-4, max_value=10.0))
    def test_circle_consistency(self, diameter):
        cs = cross_section_properties(diameter)
        assert rel(cs.inertia_m4, cs.area_m2 * diameter**2 / 16) < 1e-12


class TestDriveForce:
    def test_prototype_pressure(self):
        cs = cross_section_properties(D32)
        assert rel(subvine_drive_force(50e3, cs), 40.21238596594935) < 1e-12

    def test_zero_pressure(self):
        assert subvine_drive_force(0.0, cross_section_properties(D32)) == 0.0

    def test_unit_identity(self):
        cs = CrossSection(area_m2=1.0, inertia_m4=1.0)
        assert subvine_drive_force(1.0, cs) == 1.0

    def test_negative_pressure_rejected(self):
        with pytest.raises(InvalidInputError):
            subvine_drive_force(-1.0, cross_section_properties(D32))


class TestUnfurlForce:
    def test_single_prototype(self):
        cs = cross_section_properties(D32)
        t = TransmissionParams(ratio_c=0.2678)
        assert rel(unfurl_force_single(50e3, cs, t),
                   10.768876961681237) < 1e-12

    def test_stall_threshold(self):
        cs = CrossSection(area_m2=1.0, inertia_m4=1.0)
        t = TransmissionParams(ratio_c=0.4, friction_residual_n=5.0)
        assert unfurl_force_single(5.0, cs, t) == 0.0

    def test_halving(self):
        cs = CrossSection(area_m2=1.0, inertia_m4=1.0)
        t = TransmissionParams(ratio_c=0.5)
        assert unfurl_force_single(2.0, cs, t) == 1.0

    def test_ratio_of_one_rejected(self):
        with pytest.raises(InvalidInputError):
            TransmissionParams(ratio_c=1.0)

    def test_total_two_subvines(self):
        sv = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=R44,
                         burst_pressure_pa=80e3)
        t = TransmissionParams(ratio_c=0.2678)
        force = total_unfurl_force(sv, 50e3, t)
        assert rel(force.raw_n, 21.537753923362473) < 1e-12
        assert force.clamped_n == force.raw_n
        assert not force.stalled

    def test_total_single_matches_single(self):
        sv = SubvineSpec(diameter_m=D32, count=1, placement_radius_m=R44,
                         burst_pressure_pa=80e3)
        t = TransmissionParams(ratio_c=0.2678, friction_residual_n=3.0)
        assert total_unfurl_force(sv, 20e3, t).raw_n == \
            unfurl_force_single(20e3, sv.cross_section(), t)

    @pytest.mark.parametrize("n,c,expected", [
        (1, 0.2313, 0.00018602249747848168),
        (2, 0.2678, 0.0004307550784672494),
        (3, 0.2841, 0.0006854603311755727),
    ])
    def test_slope_is_nca(self, n, c, expected):
        sv = SubvineSpec(diameter_m=D32, count=n, placement_radius_m=R44,
                         burst_pressure_pa=1e9)
        t = TransmissionParams(ratio_c=c)
        p1, p2 = 10e3, 30e3
        slope = (total_unfurl_force(sv, p2, t).raw_n
                 - total_unfurl_force(sv, p1, t).raw_n) / (p2 - p1)
        assert rel(slope, expected) < 1e-9

    def test_stalled_total_is_clamped(self):
        sv = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=R44,
                         burst_pressure_pa=80e3)
        t = TransmissionParams(ratio_c=0.2678, friction_residual_n=100.0)
        force = total_unfurl_force(sv, 1e3, t)
        assert force.raw_n < 0
        assert force.clamped_n == 0.0
        assert force.stalled


class TestRequiredPressure:
    def test_prototype_load(self):
        sv = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=R44,
                         burst_pressure_pa=80e3)
        t = TransmissionParams(ratio_c=0.2678)
        p = required_pressure(LoadSpec(garment_mass_kg=0.2), sv, t)
        assert rel(p, 4554.792498283157) < 1e-12

    def test_zero_mass(self):
        sv = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=R44,
                         burst_pressure_pa=80e3)
        t = TransmissionParams(ratio_c=0.2678)
        assert required_pressure(LoadSpec(garment_mass_kg=0.0), sv, t) == 0.0

    def test_doubling_count_halves_pressure(self):
        t = TransmissionParams(ratio_c=0.2678)
        load = LoadSpec(garment_mass_kg=0.3)
        p_by_n = {}
        for n in (1, 2):
            sv = SubvineSpec(diameter_m=D32, count=n, placement_radius_m=R44,
                             burst_pressure_pa=1e9)
            p_by_n[n] = required_pressure(load, sv, t)
        assert rel(p_by_n[2], p_by_n[1] / 2) < 1e-12

    def test_burst_violation_carries_pressure(self):
        sv = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=R44,
                         burst_pressure_pa=1e3)
        t = TransmissionParams(ratio_c=0.2678)
        with pytest.raises(FeasibilityError) as err:
            required_pressure(LoadSpec(garment_mass_kg=0.2), sv, t)
        assert rel(err.value.pressure_pa, 4554.792498283157) < 1e-12


class TestParallelAxis:
    def test_centroidal_case(self):
        cs = cross_section_properties(D32)
        assert parallel_axis(cs, 0.0) == cs.inertia_m4

    def test_prototype_offset(self):
        cs = cross_section_properties(D32)
        assert rel(parallel_axis(cs, R44), 1.6084954386379739e-06) < 1e-12

    def test_offset_term_quadruples(self):
        cs = cross_section_properties(D32)
        t1 = parallel_axis(cs, 0.01) - cs.inertia_m4
        t2 = parallel_axis(cs, 0.02) - cs.inertia_m4
        assert rel(t2, 4 * t1) < 1e-12

    def test_negative_distance_rejected(self):
        with pytest.raises(InvalidInputError):
            parallel_axis(cross_section_properties(D32), -0.01)


class TestTorqueBalance:
    def test_all_zero(self):
        assert torque_balance_residual(0.0, 0.0, 1.0, 1.0, 0.0) == 0.0

    def test_degenerate_pulley(self):
        assert torque_balance_residual(10.0, 10.0, 1.0, 0.0, 0.0) == 0.0

    @given(pressure=st.floats(min_value=0.0, max_value=2e5),
           arm_a=st.floats(min_value=0.01, max_value=1.0),
           arm_b=st.floats(min_value=0.01, max_value=1.0),
           friction=st.floats(min_value=0.0, max_value=50.0))
    def test_consistent_triples_balance(self, pressure, arm_a, arm_b, friction):
        # any state expanded through the force chain satisfies the torque
        # balance with the torque-form residual a * f
        cs = cross_section_properties(D32)
        t = TransmissionParams.from_arms(arm_a, arm_b,
                                         friction_residual_n=friction)
        drive = subvine_drive_force(pressure, cs)
        unfurl = unfurl_force_single(pressure, cs, t)
        residual = torque_balance_residual(drive, unfurl, arm_a, arm_b,
                                           arm_a * friction)
        scale = max(abs(drive * arm_a), 1.0)
        assert abs(residual) < 1e-12 * scale


class TestInvariantProperties:
    @given(mass=st.floats(min_value=0.0, max_value=50.0),
           ratio=st.floats(min_value=0.05, max_value=0.95),
           friction=st.floats(min_value=0.0, max_value=100.0),
           n=st.integers(min_value=1, max_value=8),
           diameter=st.floats(min_value=0.005, max_value=0.2))
    def test_pressure_force_round_trip(self, mass, ratio, friction, n, diameter):
        sv = SubvineSpec(diameter_m=diameter, count=n, placement_radius_m=0.0,
                         burst_pressure_pa=float("inf"))
        t = TransmissionParams(ratio_c=ratio, friction_residual_n=friction)
        load = LoadSpec(garment_mass_kg=mass)
        p = required_pressure(load, sv, t)
        back = total_unfurl_force(sv, p, t).raw_n
        assert abs(back - load.weight_n()) <= 1e-9 * max(load.weight_n(), 1.0)

    @given(pressure=st.floats(min_value=1e3, max_value=2e5),
           ratio=st.floats(min_value=0.05, max_value=0.95),
           friction=st.floats(min_value=0.0, max_value=10.0))
    def test_monotonicity(self, pressure, ratio, friction):
        cs = cross_section_properties(D32)
        t = TransmissionParams(ratio_c=ratio, friction_residual_n=friction)
        if pressure * cs.area_m2 <= friction:
            return
        base = unfurl_force_single(pressure, cs, t)
        assert unfurl_force_single(pressure * 1.1, cs, t) > base
        t_up = TransmissionParams(ratio_c=min(ratio * 1.05, 0.99),
                                  friction_residual_n=friction)
        assert unfurl_force_single(pressure, cs, t_up) > base
        t_more_friction = TransmissionParams(ratio_c=ratio,
                                             friction_residual_n=friction + 1.0)
        assert unfurl_force_single(pressure, cs, t_more_friction) < base
        sv2 = SubvineSpec(diameter_m=D32, count=2, placement_radius_m=0.0,
                          burst_pressure_pa=float("inf"))
        sv3 = SubvineSpec(diameter_m=D32, count=3, placement_radius_m=0.0,
                          burst_pressure_pa=float("inf"))
        assert total_unfurl_force(sv3, pressure, t).raw_n > \
            total_unfurl_force(sv2, pressure, t).raw_n

    @given(pressure=st.floats(min_value=0.0, max_value=1e5),
           friction=st.floats(min_value=0.0, max_value=100.0))
    def test_stall_consistency(self, pressure, friction):
        cs = cross_section_properties(D32)
        t = TransmissionParams(ratio_c=0.3, friction_residual_n=friction)
        force = unfurl_force_single(pressure, cs, t)
        assert (force <= 0) == (pressure * cs.area_m2 <= friction)


class TestTransmissionParams:
    def test_arms_must_match_ratio(self):
        with pytest.raises(InvalidInputError):
            TransmissionParams(ratio_c=0.5, arm_a_m=0.1, arm_b_m=0.3)

    def test_from_arms(self):
        t = TransmissionParams.from_arms(0.1, 0.3)
        assert t.ratio_c == pytest.approx(0.25, rel=1e-15)

    def test_consistent_arms_accepted(self):
        t = TransmissionParams(ratio_c=0.25, arm_a_m=0.1, arm_b_m=0.3)
        assert t.arm_a_m == 0.1

    def test_single_arm_rejected(self):
        with pytest.raises(InvalidInputError):
            TransmissionParams(ratio_c=0.25, arm_a_m=0.1)
