"""Closed-form statics of the subvine-driven unfurling transmission.

The tip of an everting subvine and the tip of its channel slide against
each other like a frictional pulley with lever arms ``a`` (drive side) and
``b`` (unfurl side).  With internal pressure P acting on the subvine
cross-section A, the chain of balances is

    drive force          F_v = P * A
    unfurl force (one)   F_u = c * (P*A - f),    c = a / (a + b)
    lift balance (N)     M*g = N * c * (P*A - f)

where ``f`` lumps friction and material-deformation losses in force units.

Everything here is SI, pure, and immutable after construction; unit
conversion happens only at I/O boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FeasibilityError, InvalidGeometryError, InvalidInputError

_REL_TOL = 1e-12


@dataclass(frozen=True)
class CrossSection:
    """Area and centroidal second moment of area of one subvine."""

    area_m2: float
    inertia_m4: float

    def __post_init__(self):
        if self.area_m2 <= 0:
            raise InvalidGeometryError(
                f"cross-section area must be positive, got {self.area_m2}",
                field="area_m2")
        if self.inertia_m4 <= 0:
            raise InvalidGeometryError(
                f"cross-section inertia must be positive, got {self.inertia_m4}",
                field="inertia_m4")


def cross_section_properties(diameter_m: float) -> CrossSection:
    """Circular cross-section: A = pi D^2 / 4, I = pi D^4 / 64."""
    if diameter_m <= 0:
        raise InvalidGeometryError(
            f"diameter must be positive, got {diameter_m}", field="diameter_m")
    area = math.pi * diameter_m * diameter_m / 4.0
    inertia = math.pi * diameter_m ** 4 / 64.0
    return CrossSection(area_m2=area, inertia_m4=inertia)


@dataclass(frozen=True)
class SubvineSpec:
    """Geometry and material limit of the everting channels."""

    diameter_m: float
    count: int
    placement_radius_m: float
    angular_offset_rad: float = 0.0
    burst_pressure_pa: float = float("inf")

    def __post_init__(self):
        if self.diameter_m <= 0:
            raise InvalidGeometryError(
                f"subvine diameter must be positive, got {self.diameter_m}",
                field="diameter_m")
        if self.count < 1:
            raise InvalidInputError(
                f"subvine count must be >= 1, got {self.count}", field="count")
        if self.placement_radius_m < 0:
            raise InvalidGeometryError(
                f"placement radius must be >= 0, got {self.placement_radius_m}",
                field="placement_radius_m")
        if self.burst_pressure_pa <= 0:
            raise InvalidInputError(
                f"burst pressure must be positive, got {self.burst_pressure_pa}",
                field="burst_pressure_pa")

    def cross_section(self) -> CrossSection:
        return cross_section_properties(self.diameter_m)


@dataclass(frozen=True)
class SheathSpec:
    """Outer sheath cylinder carrying the subvine channels.

    The cross-type invariant channel_diameter >= subvine diameter is
    enforced where both objects are in hand (config validation).
    """

    diameter_m: float
    length_m: float
    channel_diameter_m: float

    def __post_init__(self):
        if self.length_m <= 0:
            raise InvalidGeometryError(
                f"sheath length must be positive, got {self.length_m}",
                field="length_m")
        if self.channel_diameter_m <= 0:
            raise InvalidGeometryError(
                f"channel diameter must be positive, got {self.channel_diameter_m}",
                field="channel_diameter_m")
        if self.diameter_m <= self.channel_diameter_m:
            raise InvalidGeometryError(
                "sheath diameter must exceed the channel diameter "
                f"({self.diameter_m} <= {self.channel_diameter_m})",
                field="diameter_m")


@dataclass(frozen=True)
class TransmissionParams:
    """Pulley-model parameters: lever ratio c and friction residual f.

    Only the ratio is identifiable from force-pressure data, so the
    individual arms are optional; when both are given they must agree with
    the stored ratio.
    """

    ratio_c: float
    friction_residual_n: float = 0.0
    arm_a_m: float | None = None
    arm_b_m: float | None = None

    def __post_init__(self):
        if not 0.0 < self.ratio_c < 1.0:
            raise InvalidInputError(
                f"transmission ratio must lie in (0, 1), got {self.ratio_c}",
                field="ratio_c")
        if self.friction_residual_n < 0:
            raise InvalidInputError(
                f"friction residual must be >= 0, got {self.friction_residual_n}",
                field="friction_residual_n")
        if (self.arm_a_m is None) != (self.arm_b_m is None):
            raise InvalidInputError(
                "lever arms must be given together or not at all",
                field="arm_a_m")
        if self.arm_a_m is not None and self.arm_b_m is not None:
            if self.arm_a_m <= 0 or self.arm_b_m <= 0:
                raise InvalidInputError(
                    "lever arms must be positive", field="arm_a_m")
            implied = self.arm_a_m / (self.arm_a_m + self.arm_b_m)
            if abs(implied - self.ratio_c) > _REL_TOL * abs(implied):
                raise InvalidInputError(
                    f"ratio_c={self.ratio_c} does not match a/(a+b)={implied}",
                    field="ratio_c")

    @classmethod
    def from_arms(cls, arm_a_m: float, arm_b_m: float,
                  friction_residual_n: float = 0.0) -> "TransmissionParams":
        if arm_a_m <= 0 or arm_b_m <= 0:
            raise InvalidInputError("lever arms must be positive", field="arm_a_m")
        return cls(ratio_c=arm_a_m / (arm_a_m + arm_b_m),
                   friction_residual_n=friction_residual_n,
                   arm_a_m=arm_a_m, arm_b_m=arm_b_m)


@dataclass(frozen=True)
class LoadSpec:
    """Garment weight hanging off the unfurling tip."""

    garment_mass_kg: float
    gravity_ms2: float = 9.81

    def __post_init__(self):
        if self.garment_mass_kg < 0:
            raise InvalidInputError(
                f"garment mass must be >= 0, got {self.garment_mass_kg}",
                field="garment_mass_kg")
        if self.gravity_ms2 <= 0:
            raise InvalidInputError(
                f"gravity must be positive, got {self.gravity_ms2}",
                field="gravity_ms2")

    def weight_n(self) -> float:
        return self.garment_mass_kg * self.gravity_ms2


@dataclass(frozen=True)
class UnfurlForce:
    """Total unfurl force with the stall condition made explicit.

    ``raw_n`` keeps the sign of the model output; ``clamped_n`` is the
    value to use for lift-capacity queries.  A non-positive raw force means
    the pressure cannot overcome the friction residual (stall), which is a
    valid state rather than an error.
    """

    raw_n: float
    clamped_n: float
    stalled: bool


def subvine_drive_force(pressure_pa: float, cs: CrossSection) -> float:
    """Force generated by one pressurized subvine: P * A."""
    if pressure_pa < 0:
        raise InvalidInputError(
            f"pressure must be >= 0, got {pressure_pa}", field="pressure_pa")
    return pressure_pa * cs.area_m2


def unfurl_force_single(pressure_pa: float, cs: CrossSection,
                        t: TransmissionParams) -> float:
    """Unfurl force from one subvine: c * (P*A - f).

    The return value is signed; <= 0 signals stall, not an error.
    """
    drive = subvine_drive_force(pressure_pa, cs)
    return t.ratio_c * (drive - t.friction_residual_n)


def total_unfurl_force(subvines: SubvineSpec, pressure_pa: float,
                       t: TransmissionParams) -> UnfurlForce:
    """Load-sharing total over N subvines: N * c * (P*A - f)."""
    single = unfurl_force_single(pressure_pa, subvines.cross_section(), t)
    raw = subvines.count * single
    return UnfurlForce(raw_n=raw, clamped_n=max(raw, 0.0), stalled=raw <= 0.0)


def pressure_for_force(force_n: float, n: int, cs: CrossSection,
                       t: TransmissionParams) -> float:
    """Invert the load-sharing balance: P = (F/(N*c) + f) / A."""
    if n < 1:
        raise InvalidInputError(f"subvine count must be >= 1, got {n}", field="n")
    if force_n < 0:
        raise InvalidInputError(
            f"target force must be >= 0, got {force_n}", field="force_n")
    return (force_n / (n * t.ratio_c) + t.friction_residual_n) / cs.area_m2


def required_pressure(load: LoadSpec, subvines: SubvineSpec,
                      t: TransmissionParams) -> float:
    """Pressure needed to lift the garment weight: P = (Mg/(N*c) + f) / A.

    Raises FeasibilityError (carrying the computed pressure) when the
    answer exceeds the subvine burst pressure.
    """
    p = pressure_for_force(load.weight_n(), subvines.count,
                           subvines.cross_section(), t)
    if p > subvines.burst_pressure_pa:
        raise FeasibilityError(
            f"required pressure {p:.6g} Pa exceeds burst pressure "
            f"{subvines.burst_pressure_pa:.6g} Pa",
            pressure_pa=p)
    return p


def parallel_axis(cs: CrossSection, distance_m: float) -> float:
    """Second moment about an axis offset by d: I' = I + A * d^2."""
    if distance_m < 0:
        raise InvalidInputError(
            f"axis distance must be >= 0, got {distance_m}", field="distance_m")
    return cs.inertia_m4 + cs.area_m2 * distance_m * distance_m


def torque_balance_residual(drive_force_n: float, unfurl_force_n: float,
                            arm_a_m: float, arm_b_m: float,
                            friction_torque_nm: float) -> float:
    """Torque imbalance at the pulley: F_v*a - F_u*(a+b) - f.

    Diagnostic check; zero iff the configuration satisfies equilibrium.
    ``friction_torque_nm`` is the torque-form residual (arm_a times the
    force-form residual used elsewhere).
    """
    if arm_a_m <= 0 or arm_b_m < 0:
        raise InvalidInputError("lever arms must satisfy a > 0, b >= 0",
                                field="arm_a_m")
    return (drive_force_n * arm_a_m
            - unfurl_force_n * (arm_a_m + arm_b_m)
            - friction_torque_nm)
